#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "config.hpp"
#include "scenario.hpp"
#include "checks.hpp"

using namespace openqb;
using namespace openqb::app;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p)
{
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

std::string error_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const std::exception& e) {
        return e.what();
    }
    return "";
}

fs::path scratch(const std::string& name)
{
    auto d = fs::temp_directory_path() / ("openqb_test_app_" + name);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

Scenario short_fig2(const std::string& name = "fig2-left")
{
    auto s = preset(name).front();
    s.t_max = 4.0;
    s.n_points = 9;
    s.N = 8;
    return s;
}

}  // namespace

TEST_CASE("config grammar")
{
    const auto c = Config::parse("# header\n"
                                 "name = demo   # trailing\n"
                                 "\n"
                                 "[params]\n"
                                 "g = 0.25\n"
                                 "[method]\n"
                                 "auto_truncation = true\n"
                                 "[output]\n"
                                 "observables = sigma_z, photon_number\n",
                                 "demo.cfg");
    CHECK(c.str("name") == "demo");
    CHECK(c.num("params.g") == 0.25);
    CHECK(c.boolean("method.auto_truncation"));
    CHECK(c.list("output.observables") == std::vector<std::string>{"sigma_z", "photon_number"});
    CHECK(c.where("params.g") == "demo.cfg:5: params.g");
}

TEST_CASE("config errors carry the line number")
{
    CHECK(error_of([] { Config::parse("a = 1\nb\n", "x.cfg"); }).rfind("x.cfg:2:", 0) == 0);
    CHECK(error_of([] { Config::parse("[s\n", "x.cfg"); }).rfind("x.cfg:1:", 0) == 0);
    CHECK(error_of([] { Config::parse("a = \n", "x.cfg"); }).find("missing value") != std::string::npos);
    const auto dup = error_of([] { Config::parse("[p]\ng = 1\n\n[p]\ng = 2\n", "x.cfg"); });
    CHECK(dup.rfind("x.cfg:5:", 0) == 0);
    CHECK(dup.find("line 2") != std::string::npos);

    const auto c = Config::parse("\n\nv = 1e-3x\nn = 2.5\nb = maybe\n", "y.cfg");
    CHECK(error_of([&] { c.num("v"); }).rfind("y.cfg:3:", 0) == 0);
    CHECK(error_of([&] { c.integer("n"); }).rfind("y.cfg:4:", 0) == 0);
    CHECK(error_of([&] { c.boolean("b"); }).rfind("y.cfg:5:", 0) == 0);
    CHECK_THROWS_AS(c.str("absent"), ConfigError);
}

TEST_CASE("decimal literals only")
{
    CHECK(parse_decimal("1e-3") == 1e-3);
    CHECK(parse_decimal(" -2.5 ") == -2.5);
    CHECK_THROWS_AS(parse_decimal("0x10"), ConfigError);
    CHECK_THROWS_AS(parse_decimal("nan"), ConfigError);
    CHECK_THROWS_AS(parse_decimal("inf"), ConfigError);
    CHECK_THROWS_AS(parse_decimal(""), ConfigError);
    for (double x : {0.1, 1.0 / 3.0, 6.02214076e23, -1e-300}) CHECK(parse_decimal(fmt_double(x)) == x);
}

TEST_CASE("command line assignments")
{
    Config c;
    c.set_assignment("params.g=0.1");
    c.set_assignment(" time.t_max = 5 ");
    CHECK(c.num("params.g") == 0.1);
    CHECK(c.num("time.t_max") == 5.0);
    CHECK_THROWS_AS(c.set_assignment("params.g"), ConfigError);
    CHECK_THROWS_AS(c.set_assignment("a..b=1"), ConfigError);
    CHECK_THROWS_AS(c.set_assignment("k="), ConfigError);
}

TEST_CASE("dump and parse round trip for every preset")
{
    for (const auto& name : preset_names()) {
        for (const auto& s : preset(name)) {
            CAPTURE(s.name);
            const auto text = scenario_to_config(s).dump();
            const auto c = Config::parse(text, s.name);
            CHECK(c.dump() == text);
            const auto back = scenario_from_config(c);
            CHECK(scenario_to_config(back).dump() == text);
        }
    }
}

TEST_CASE("presets")
{
    const auto f2 = preset("fig2-left");
    REQUIRE(f2.size() == 1);
    CHECK(f2[0].model == Model::DispersiveJC);
    CHECK(f2[0].params.Omega == 4.0);
    CHECK(f2[0].params.g == 0.5);
    CHECK(f2[0].params.gamma == 0.15);
    CHECK(f2[0].qubit_init == "plus");

    const auto f3 = preset("fig3");
    REQUIRE(f3.size() == 4);
    CHECK(f3[0].name == "fig3-g0.01");
    CHECK(f3[3].params.g == 0.1);

    CHECK(preset("fig6").size() == 12);
    CHECK_THROWS_AS(preset("fig9"), std::invalid_argument);

    for (const auto& name : preset_names())
        for (const auto& s : preset(name)) CHECK_NOTHROW(s.validate());
}

TEST_CASE("preset keys in configs")
{
    const auto s = scenario_from_config(Config::parse("preset = fig2-left\nname = mine\n[params]\ng = 0.4\n"));
    CHECK(s.name == "mine");
    CHECK(s.params.g == 0.4);
    CHECK(s.params.Omega == 4.0);

    const auto multi = error_of([] { scenario_from_config(Config::parse("\npreset = fig3\n", "m.cfg")); });
    CHECK(multi.rfind("m.cfg:2:", 0) == 0);
    CHECK(multi.find("expands to 4") != std::string::npos);

    const auto unknown = error_of([] { scenario_from_config(Config::parse("[params]\nomga = 1\n", "u.cfg")); });
    CHECK(unknown == "u.cfg:2: params.omga: unknown key");
}

TEST_CASE("scenario validation")
{
    auto base = short_fig2();
    auto expect = [&](auto&& mutate, const std::string& fragment) {
        auto s = base;
        mutate(s);
        const auto msg = error_of([&] { s.validate(); });
        CAPTURE(fragment);
        CHECK(msg.find(fragment) != std::string::npos);
    };
    expect([](Scenario& s) { s.n_points = 1; }, "n_points");
    expect([](Scenario& s) { s.grid_override = {0.0, 2.0, 1.0}; }, "strictly increasing");
    expect([](Scenario& s) { s.params.Omega = s.params.omega; }, "detuning");
    expect([](Scenario& s) {
        s.qubit_init = "bloch";
        s.bloch[0] = 1.0;
        s.bloch[2] = 1.0;
    }, "unit ball");
    expect([](Scenario& s) { s.observables = {"sigma_q"}; }, "unknown observable");
    expect([](Scenario& s) { s.params.gamma = -1.0; }, "gamma");
}

TEST_CASE("analytic and numeric routes agree on a dispersive run")
{
    auto s = short_fig2();
    s.observables = {"sigma_x", "sigma_z", "photon_number"};
    const auto r = run_scenario(s);
    REQUIRE(r.numeric);
    CHECK(r.numeric->max_trace_drift < 1e-9);
    for (const auto& obs : s.observables) {
        const auto* a = r.find(obs, "analytic");
        const auto* n = r.find(obs, "numeric");
        REQUIRE(a);
        REQUIRE(n);
        REQUIRE(a->t.size() == n->t.size());
        double err = 0.0;
        for (size_t k = 0; k < a->t.size(); ++k) err = std::max(err, std::abs(a->value[k] - n->value[k]));
        CAPTURE(obs);
        CHECK(err < 1e-5);
    }
}

TEST_CASE("outputs are byte-stable and a manifest reproduces its run")
{
    const auto s = short_fig2("fig2-right");
    REQUIRE(!s.notes.empty());
    const auto d1 = scratch("a"), d2 = scratch("b"), d3 = scratch("c");
    const auto files = write_outputs(run_scenario(s), d1);
    write_outputs(run_scenario(s), d2);
    write_outputs(run_scenario(scenario_from_manifest(d1 / "manifest.json")), d3);

    REQUIRE(!files.empty());
    for (const auto& f : files) {
        CAPTURE(f);
        const auto one = slurp(d1 / f);
        CHECK(!one.empty());
        CHECK(one == slurp(d2 / f));
        CHECK(one == slurp(d3 / f));
    }
    CHECK(slurp(d1 / "manifest.json") == slurp(d3 / "manifest.json"));

    const auto csv = slurp(d1 / "photon_number.csv");
    CHECK(csv.rfind("t,photon_number_re,photon_number_im,source\n", 0) == 0);
    CHECK(csv.find(",analytic\n") != std::string::npos);
    CHECK(csv.find(",numeric\n") != std::string::npos);

    const auto m = nlohmann::json::parse(slurp(d1 / "manifest.json"));
    CHECK(m["config"]["params.Omega"] == "4");
    CHECK(m["derived"].contains("lambda"));
    CHECK(m["truncation"]["N"] == 8);
    CHECK(m["notes"].size() == 2);
    for (const auto& d : {d1, d2, d3}) fs::remove_all(d);
}

TEST_CASE("fault injection is caught by the second-order residual")
{
    CHECK_THROWS_AS([] {
        auto t = second_order_table(preset("fig4").front().params, QubitMatrix::excited());
        verify::inject_fault(t, "no such term");
    }(), std::invalid_argument);
    REQUIRE(!verify::fault_labels().empty());

    verify::CheckOptions opt;
    opt.only = "rabi-perturbative";
    opt.criteria = {9};
    bool clean = true;
    for (const auto& r : verify::run_checks(opt)) clean = clean && r.pass;
    CHECK(clean);

    opt.inject_fault = "x11_00 psi+ decay";
    bool caught = false;
    for (const auto& r : verify::run_checks(opt)) caught = caught || !r.pass;
    CHECK(caught);
}
