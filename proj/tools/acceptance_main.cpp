// Acceptance runner: one PASS/FAIL line per criterion at the pinned tolerances.
#include <CLI11.hpp>

#include <cstdio>
#include <map>
#include <set>

#include "checks.hpp"

using namespace openqb;

int main(int argc, char** argv)
{
    CLI::App cli{"acceptance criteria 1-10"};
    std::vector<int> known_fail;
    cli.add_option("--known-fail", known_fail, "criteria whose failure does not fail the run")->delimiter(',');
    bool verbose = false;
    cli.add_flag("-v,--verbose", verbose, "print every sub-check");
    CLI11_PARSE(cli, argc, argv);
    const std::set<int> known(known_fail.begin(), known_fail.end());

    verify::CheckOptions opt;
    if (verbose)
        opt.on_result = [](const verify::CheckResult& r) {
            std::printf("  [%s] %s: %.3e (tol %.3e) %s\n", r.pass ? "ok" : "FAIL", r.id.c_str(), r.measured, r.tolerance, r.detail.c_str());
            std::fflush(stdout);
        };
    for (int c = 1; c <= 10; ++c) opt.criteria.insert(c);
    const auto results = verify::run_checks(opt);

    std::map<int, std::vector<const verify::CheckResult*>> by;
    for (const auto& r : results) by[r.criterion].push_back(&r);

    int unexpected = 0;
    for (int c = 1; c <= 10; ++c) {
        bool pass = !by[c].empty();
        double secs = 0.0;
        const verify::CheckResult* worst = nullptr;
        double worst_ratio = -1.0;
        for (const auto* r : by[c]) {
            pass = pass && r->pass;
            secs = std::max(secs, r->seconds);
            const double ratio = r->tolerance > 0.0 ? r->measured / r->tolerance : (r->pass ? 0.0 : 1e300);
            if (!r->pass || ratio > worst_ratio) {
                if (!r->pass && worst && !worst->pass) continue;
                worst = r;
                worst_ratio = ratio;
            }
        }
        const bool expected = known.count(c) != 0;
        if (!pass && !expected) ++unexpected;
        std::printf("criterion %2d: %s", c, pass ? "PASS" : "FAIL");
        if (worst) std::printf("  [%s measured %.3e, tol %.3e]", worst->id.c_str(), worst->measured, worst->tolerance);
        if (!pass && expected) std::printf("  (known failure)");
        if (pass && expected) std::printf("  (listed as known failure but passed)");
        std::printf("\n");
        if (!pass && worst && !worst->detail.empty()) std::printf("              %s\n", worst->detail.c_str());
        std::fflush(stdout);
    }
    return unexpected == 0 ? 0 : 1;
}
