#include "checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "openqb/bargmann.hpp"
#include "openqb/jc_dispersive.hpp"
#include "openqb/lindblad.hpp"
#include "residuals.hpp"
#include "scenario.hpp"

namespace openqb::verify {

namespace {

using Clock = std::chrono::steady_clock;

std::string fmt(const char* f, double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

struct Rng {
    std::mt19937_64 gen{20240611};
    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(gen); }
    cplx disk(double r)
    {
        const double rad = r * std::sqrt(uniform(0.0, 1.0)), ph = uniform(0.0, 2.0 * M_PI);
        return std::polar(rad, ph);
    }
    QubitMatrix state()
    {
        // uniform in the Bloch ball
        double x, y, z;
        do {
            x = uniform(-1.0, 1.0);
            y = uniform(-1.0, 1.0);
            z = uniform(-1.0, 1.0);
        } while (x * x + y * y + z * z > 1.0);
        return QubitMatrix::from_bloch(x, y, z);
    }
};

PhysicalParams make(double w, double W, double g, double gam, double T)
{
    PhysicalParams p;
    p.omega = w;
    p.Omega = W;
    p.g = g;
    p.gamma = gam;
    p.temperature = T;
    return p;
}

PhysicalParams fig2_params() { return make(1.0, 4.0, 0.5, 0.15, 1.563); }
PhysicalParams rabi_params(double W, double g) { return make(1.0, W, g, 0.1, 0.1); }

// Everything a run of the battery shares: tolerance scaling, numeric diagnostics
// for the hygiene criterion, and cached long-time evolutions.
class Context {
public:
    explicit Context(const CheckOptions& o) : opt(o) {}

    const CheckOptions& opt;
    std::vector<CheckResult> results;

    double tol(double t) const { return t * opt.tol_scale; }

    Clock::time_point check_start = Clock::now();

    void add(CheckResult r)
    {
        if (r.seconds == 0.0) r.seconds = std::chrono::duration<double>(Clock::now() - check_start).count();
        if (opt.on_result) opt.on_result(r);
        results.push_back(std::move(r));
    }

    struct Hygiene {
        std::string name;
        Model model;
        PhysicalParams p;
        int N;
        double drift, min_eig;
    };
    std::vector<Hygiene> hygiene;

    void record(const std::string& name, Model m, const PhysicalParams& p, int N, double drift, double min_eig)
    {
        hygiene.push_back({name, m, p, N, drift, min_eig});
    }

    // <sigma_z> at t_end from the named qubit state, thermal boson, N = 15
    double late_sigma_z(Model m, const PhysicalParams& p, const std::string& init, double t_end)
    {
        const auto key = std::make_tuple(static_cast<int>(m), p.Omega, p.g, init, t_end);
        const auto it = late_.find(key);
        if (it != late_.end()) return it->second;
        const int N = 15;
        const Eigen::MatrixXcd rho0 = product_state(QubitMatrix::from_name(init), thermal_boson(derive(p).nbar, N));
        EvolveOptions o;
        o.tol = 1e-10;
        const Trajectory tr = evolve(rho0, {0.0, t_end}, m, p, o);
        record("late " + to_string(m) + " W=" + fmt("%g", p.Omega) + " from " + init, m, p, N, tr.max_trace_drift,
               tr.min_eigenvalue);
        const double v = observable(tr.states.back(), Observable::SigmaZ).real();
        late_[key] = v;
        return v;
    }

private:
    std::map<std::tuple<int, double, double, std::string, double>, double> late_;
};

struct Check {
    std::string module;
    int criterion;
    std::function<void(Context&)> run;
};

CheckResult result(const std::string& id, int criterion, const std::string& module, const std::string& what, double measured,
                   double tolerance, bool pass, std::string detail = {})
{
    CheckResult r;
    r.id = id;
    r.criterion = criterion;
    r.module = module;
    r.what = what;
    r.measured = measured;
    r.tolerance = tolerance;
    r.pass = pass;
    r.detail = std::move(detail);
    return r;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// ---- module self-checks ----

void check_params(Context& ctx)
{
    double worst = 0.0;
    for (double W : {0.1, 1.0, 4.0, 20.0})
        for (double T : {0.05, 0.3, 1.563, 10.0, 100.0}) {
            const double a = bose_einstein(W, T), b = bose_einstein_coth(W, T);
            worst = std::max(worst, std::abs(a - b) / std::max(a, 1e-300));
        }
    const double t = ctx.tol(1e-12);
    ctx.add(result("P.nbar-forms", 0, "params", "exponential and coth forms of nbar agree (relative)", worst, t, worst < t));

    const DerivedParams d = derive(fig2_params());
    const double ref = 1.0 / std::expm1(4.0 / 1.563);
    const double dev = std::max({std::abs(d.nbar - ref), std::abs(d.delta + 3.0), std::abs(*d.lambda + 1.0 / 6.0),
                                 std::abs(d.omega_prime - (1.0 - 0.5 / 6.0)),
                                 std::abs(d.phi_plus.real() - 0.15 * (d.nbar + 0.5)), std::abs(d.psi_minus.real() - 0.15)});
    ctx.add(result("P.derived", 0, "params", "derived quantities at Fig. 2 parameters", dev, t, dev < t,
                   "nbar = " + fmt("%.10f", d.nbar)));
}

void check_bargmann(Context& ctx)
{
    double worst = 0.0;
    for (double nb : {0.0, 0.08, 0.7, 3.0}) {
        const BargmannFunction th = BargmannFunction::thermal(nb);
        worst = std::max(worst, std::abs(trace_bargmann(th) - 1.0));
        worst = std::max(worst, std::abs(trace_bargmann(apply_number(th)) - nb));
        const FockMatrix f = to_fock(th, 40);
        for (int n = 0; n < 10; ++n)
            worst = std::max(worst, std::abs(f(n, n) - std::pow(nb, n) / std::pow(1.0 + nb, n + 1)));
    }
    for (cplx a : {cplx(0.3, 0.0), cplx(1.0, -0.5), cplx(-1.2, 0.7)}) {
        const BargmannFunction co = BargmannFunction::coherent(a);
        worst = std::max(worst, std::abs(trace_bargmann(co) - 1.0));
        worst = std::max(worst, std::abs(trace_bargmann(apply_number(co)) - std::norm(a)));
    }
    const double t = ctx.tol(1e-12);
    ctx.add(result("B.moments", 0, "bargmann", "thermal/coherent traces, photon numbers, Fock populations", worst, t, worst < t));
}

// ---- criteria ----

void cross_validation(Context& ctx, const std::string& preset_name, const std::string& id, int criterion)
{
    const auto t0 = Clock::now();
    app::Scenario s = app::preset(preset_name).front();
    s.observables = {"coherence_measure"};
    s.method = app::Method::Both;
    s.N = 15;
    s.tol = 1e-10;
    const app::RunResult r = app::run_scenario(s);
    const app::Series* a = r.find("coherence_measure", "analytic");
    const app::Series* n = r.find("coherence_measure", "numeric");
    if (!a || !n) throw std::runtime_error(preset_name + ": missing series");
    double dev = 0.0, at = 0.0;
    for (size_t k = 0; k < a->t.size(); ++k) {
        const double e = std::abs(a->value[k] - n->value[k]);
        if (e > dev) {
            dev = e;
            at = a->t[k];
        }
    }
    ctx.record(preset_name, s.model, s.params, r.numeric->N, r.numeric->max_trace_drift, r.numeric->min_eigenvalue);
    const double secs = seconds_since(t0);
    const double t = ctx.tol(1e-6);
    CheckResult res = result(id, criterion, "jc-dispersive",
                             preset_name + ": max |analytic - numeric| coherence measure, t in [0, 60], runtime < 30 s", dev, t,
                             dev < t && secs < 30.0, "worst at t = " + fmt("%g", at) + ", runtime " + fmt("%.1f s", secs));
    res.seconds = secs;
    ctx.add(res);
}

void criterion1(Context& ctx) { cross_validation(ctx, "fig2-left", "C1.fig2-left", 1); }

void criterion2(Context& ctx)
{
    cross_validation(ctx, "fig2-right", "C2.fig2-right", 2);

    PhysicalParams p0 = fig2_params();
    p0.temperature = 0.0;
    Rng rng;
    double worst = 0.0;
    bool finite = true;
    for (int k = 0; k < 20; ++k) {
        const QubitMatrix q = k == 0 ? QubitMatrix::plus() : rng.state();
        const cplx alpha = k == 0 ? cplx(1.0) : rng.disk(2.0);
        for (double t : {0.0, 0.5, 3.0, 20.0, 60.0}) {
            const QubitMatrix m = jc_qubit_coherent(t, p0, q, alpha);
            for (cplx v : {m.q11, m.q12, m.q21, m.q22}) finite = finite && std::isfinite(v.real()) && std::isfinite(v.imag());
            worst = std::max({worst, std::abs(m.q11 - q.q11), std::abs(m.q22 - q.q22)});
        }
    }
    const double t = ctx.tol(1e-12);
    ctx.add(result("C2.zero-temperature", 2, "jc-dispersive", "coherent-state qubit elements at nbar = 0: finite, populations preserved",
                   worst, t, finite && worst < t, finite ? "" : "non-finite entries"));
}

}  // namespace

cplx slowest_coherence_eigenvalue(const PhysicalParams& p, int N)
{
    const int M = N + 1;
    const Eigen::MatrixXcd Lb = coherence_block_liouvillian(p, N);
    cplx best(-std::numeric_limits<double>::infinity(), 0.0);
    for (int k = -N; k <= N; ++k) {
        std::vector<int> idx;
        for (int n = 0; n < M; ++n)
            if (n - k >= 0 && n - k < M) idx.push_back(n * M + (n - k));
        Eigen::MatrixXcd S(idx.size(), idx.size());
        for (size_t i = 0; i < idx.size(); ++i)
            for (size_t j = 0; j < idx.size(); ++j) S(i, j) = Lb(idx[i], idx[j]);
        const cplx top = spectrum(S)(0);
        if (top.real() > best.real()) best = top;
    }
    return best;
}

namespace {

void criterion3(Context& ctx)
{
    Rng rng;
    std::vector<PhysicalParams> sets{fig2_params()};
    for (int k = 0; k < 10; ++k)
        sets.push_back(make(rng.uniform(0.5, 2.0), rng.uniform(2.5, 5.0), rng.uniform(0.05, 0.4), rng.uniform(0.05, 0.3),
                            rng.uniform(0.3, 2.0)));
    double worst = 0.0;
    int worst_N = 0;
    for (const auto& p : sets) {
        // raise N until the slowest eigenvalue stops moving
        cplx prev = slowest_coherence_eigenvalue(p, 10);
        int N = 10;
        for (int n = 20; n <= 40; n += 10) {
            const cplx cur = slowest_coherence_eigenvalue(p, n);
            const bool converged = std::abs(cur - prev) <= 1e-13 * std::max(1.0, std::abs(cur));
            prev = cur;
            N = n;
            if (converged) break;
        }
        const double g2 = gamma2(p);
        const double rel = std::abs(std::abs(g2) - std::abs(prev.real())) / std::abs(g2);
        if (rel >= worst) {
            worst = rel;
            worst_N = N;
        }
    }
    const double t = ctx.tol(1e-6);
    ctx.add(result("C3.gamma2-spectrum", 3, "jc-dispersive",
                   "|Gamma2| vs slowest coherence-block eigenvalue, Fig. 2 + 10 random sets (relative)", worst, t, worst < t,
                   "converged at N <= " + std::to_string(worst_N)));
}

void criterion4(Context& ctx)
{
    Rng rng;
    int violations = 0;
    double margin = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 10000; ++k) {
        const double gam = 1.0 - rng.uniform(0.0, 1.0);  // (0, 1]
        const double gl = rng.uniform(-1.0, 1.0), nb = rng.uniform(0.0, 10.0);
        const double re = theta2_from(gam, gl, nb).real();
        violations += re < gam;
        margin = std::min(margin, re - gam);
    }
    ctx.add(result("C4.theta2-bound", 4, "jc-dispersive", "violations of Re(theta2) >= gamma on 10^4 random points", violations, 0.0,
                   violations == 0, "min Re(theta2) - gamma = " + fmt("%.3e", margin)));
}

void criterion5(Context& ctx)
{
    const auto t0 = Clock::now();
    std::vector<double> max_rel, avg_rel;
    std::string detail;
    for (double g : {0.01, 0.02, 0.05}) {
        app::Scenario s = app::preset("fig3").front();
        s.params.g = g;
        s.name = "fig3-g" + fmt("%g", g);
        s.observables = {"sigma_minus_adag_abs2_over_g2"};
        s.method = app::Method::Both;
        const app::RunResult r = app::run_scenario(s);
        const app::Series* a = r.find(s.observables[0], "analytic");
        const app::Series* n = r.find(s.observables[0], "numeric");
        double peak = 0.0, worst = 0.0, sum = 0.0;
        for (size_t k = 0; k < n->t.size(); ++k) peak = std::max(peak, std::abs(n->value[k]));
        for (size_t k = 0; k < n->t.size(); ++k) {
            const double e = std::abs(a->value[k] - n->value[k]) / peak;
            worst = std::max(worst, e);
            sum += e;
        }
        max_rel.push_back(worst);
        avg_rel.push_back(sum / static_cast<double>(n->t.size()));
        ctx.record(s.name, s.model, s.params, r.numeric->N, r.numeric->max_trace_drift, r.numeric->min_eigenvalue);
        detail += "g=" + fmt("%g", g) + ": max " + fmt("%.4f", worst) + " mean " + fmt("%.4f", avg_rel.back()) + "; ";
    }
    const double secs = seconds_since(t0);
    const double worst = *std::max_element(max_rel.begin(), max_rel.end());
    const bool monotone = avg_rel[0] < avg_rel[1] && avg_rel[1] < avg_rel[2];
    const double t = ctx.tol(0.05);
    CheckResult r = result("C5.first-order", 5, "rabi-perturbative",
                           "|<s- a+>|^2/g^2 analytic vs numeric, relative to the curve peak, t in [0, 20]", worst, t,
                           worst < t && monotone && secs < 120.0,
                           detail + (monotone ? "mean error decreases with g" : "mean error NOT monotone in g") + ", runtime "
                               + fmt("%.1f s", secs));
    r.seconds = secs;
    ctx.add(r);
}

constexpr double kLateTime = 200.0;  // in units of 1/gamma

void criterion6(Context& ctx)
{
    const PhysicalParams p = rabi_params(1.5, 0.02);
    const double t_end = kLateTime / p.gamma;
    const double target = steady_sigma_z(p, Model::Rabi, SteadyOrder::Zeroth);
    const double e = ctx.late_sigma_z(Model::Rabi, p, "excited", t_end);
    const double g = ctx.late_sigma_z(Model::Rabi, p, "ground", t_end);
    const double pl = ctx.late_sigma_z(Model::Rabi, p, "plus", t_end);
    const double dev = std::abs(e - target);
    ctx.add(result("C6.rabi-limit", 6, "rabi-perturbative", "Rabi <sz>(t = 200/gamma) from |e> vs zeroth-order steady value", dev,
                   ctx.tol(5e-3), dev < ctx.tol(5e-3),
                   "numeric " + fmt("%.6f", e) + ", formula " + fmt("%.6f", target)));
    const double spread = std::max({std::abs(e - g), std::abs(e - pl), std::abs(g - pl)});
    ctx.add(result("C6.uniqueness", 6, "rabi-perturbative", "pairwise spread of <sz>(t = 200/gamma) from |e>, |g>, |+>", spread,
                   ctx.tol(1e-3), spread < ctx.tol(1e-3),
                   "e " + fmt("%.6f", e) + ", g " + fmt("%.6f", g) + ", + " + fmt("%.6f", pl)));
}

void criterion7(Context& ctx)
{
    const PhysicalParams p = rabi_params(1.5, 0.02);
    const double t_end = kLateTime / p.gamma;
    const double jc = ctx.late_sigma_z(Model::JC, p, "excited", t_end);
    const double target = steady_sigma_z(p, Model::JC, SteadyOrder::Zeroth);
    const double dev = std::abs(jc - target);
    ctx.add(result("C7.jc-limit", 7, "rabi-perturbative", "JC <sz>(t = 200/gamma) from |e> vs -1/(1 + 2 nbar)", dev,
                   ctx.tol(5e-3), dev < ctx.tol(5e-3),
                   "numeric " + fmt("%.6f", jc) + ", formula " + fmt("%.6f", target)));

    double lo = 1e300, hi = -1e300, rabi_dev = 0.0;
    std::string detail;
    for (double W : {1.25, 1.5, 2.0}) {
        const PhysicalParams q = rabi_params(W, 0.02);
        const double j = ctx.late_sigma_z(Model::JC, q, "excited", t_end);
        const double r = ctx.late_sigma_z(Model::Rabi, q, "excited", t_end);
        const double f = steady_sigma_z(q, Model::Rabi, SteadyOrder::Zeroth);
        lo = std::min(lo, j);
        hi = std::max(hi, j);
        rabi_dev = std::max(rabi_dev, std::abs(r - f));
        detail += "W=" + fmt("%g", W) + ": JC " + fmt("%.5f", j) + ", Rabi " + fmt("%.5f", r) + " (formula " + fmt("%.5f", f) + "); ";
    }
    ctx.add(result("C7.jc-omega-independence", 7, "rabi-perturbative", "spread of the JC late-time <sz> across Omega", hi - lo,
                   ctx.tol(5e-3), hi - lo < ctx.tol(5e-3), detail));
    ctx.add(result("C7.rabi-tracks-formula", 7, "rabi-perturbative",
                   "max |Rabi late-time <sz> - zeroth-order steady value| across Omega", rabi_dev, ctx.tol(5e-3),
                   rabi_dev < ctx.tol(5e-3), detail));
}

// stationary state of the generator itself, independent of any time horizon
void check_stationary(Context& ctx)
{
    double rabi = 0.0, jc = 0.0, gap = 0.0;
    std::string detail;
    for (double W : {1.25, 1.5, 2.0}) {
        const PhysicalParams p = rabi_params(W, 0.02);
        const int N = 8, d = 2 * (N + 1);
        for (Model m : {Model::Rabi, Model::JC}) {
            const Eigen::MatrixXcd L = liouvillian(m, p, N);
            const double sz = observable(steady_state(L, d), Observable::SigmaZ).real();
            const double dev = std::abs(sz - steady_sigma_z(p, m, SteadyOrder::Zeroth));
            (m == Model::Rabi ? rabi : jc) = std::max(m == Model::Rabi ? rabi : jc, dev);
            gap = std::max(gap, -spectrum_hermitian(L, d)(1).real());
        }
    }
    const double t = ctx.tol(5e-3);
    ctx.add(result("R.stationary-rabi", 0, "rabi-perturbative", "Rabi stationary <sz> of the generator vs zeroth-order formula across Omega",
                   rabi, t, rabi < t));
    ctx.add(result("R.stationary-jc", 0, "rabi-perturbative", "JC stationary <sz> of the generator vs -1/(1 + 2 nbar) across Omega", jc,
                   t, jc < t, "largest spectral gap " + fmt("%.3e", gap)));
}

void criterion8(Context& ctx)
{
    Rng rng;
    double lim = 0.0, sym = 0.0;
    for (int k = 0; k < 50; ++k) {
        const PhysicalParams p =
            make(rng.uniform(0.5, 2.0), rng.uniform(0.5, 3.0), rng.uniform(0.0, 0.2), rng.uniform(0.02, 0.5), rng.uniform(0.05, 2.0));
        const QubitMatrix q = rng.state();
        const double tau_inf = 1e3 / multiscale_rate(p);
        const MultiscaleState m = multiscale_Q(tau_inf, p, q);
        lim = std::max(lim, std::abs((2.0 * m.Q11 - 1.0).real() - steady_sigma_z(p, Model::Rabi, SteadyOrder::Zeroth)));
        const MultiscaleState mt = multiscale_Q(rng.uniform(0.0, 20.0), p, q);
        sym = std::max({sym, std::abs(mt.Q22 - (1.0 - mt.Q11)), std::abs(mt.Q21 - std::conj(mt.Q12)), std::abs(mt.Q11.imag())});

        const SecondOrderTable tab = second_order_table(p, q, true);
        const auto x = tab.evaluate(rng.uniform(0.0, 30.0));
        const int swap[4] = {P00, P11, P02, P20};
        for (int b : {0, 3}) {
            sym = std::max({sym, std::abs(x[b][P02] - std::conj(x[b][P20])), std::abs(x[b][P00].imag()),
                            std::abs(x[b][P11].imag())});
        }
        for (int a = 0; a < 4; ++a) sym = std::max(sym, std::abs(x[2][a] - std::conj(x[1][swap[a]])));
    }
    const double t = ctx.tol(1e-12);
    ctx.add(result("C8.steady-limit", 8, "rabi-perturbative", "2 Q11(tau -> inf) - 1 vs zeroth-order steady value, 50 random sets", lim,
                   t, lim < t));
    ctx.add(result("C8.symmetries", 8, "rabi-perturbative", "Q22 = 1 - Q11, Q21 = conj(Q12), conjugation symmetries of x_ij", sym, t,
                   sym < t));
}

void criterion9_jc(Context& ctx)
{
    Rng rng;
    double jc = 0.0;
    for (int k = 0; k < 100; ++k) {
        const QubitMatrix q = rng.state();
        const PhysicalParams p =
            make(rng.uniform(0.5, 2.0), rng.uniform(2.0, 4.0), rng.uniform(0.05, 0.5), rng.uniform(0.05, 0.3), rng.uniform(0.2, 2.0));
        jc = std::max(jc, jc_kernel_residual(p, q, rng.uniform(0.1, 10.0), rng.disk(1.0), rng.disk(1.0), rng.disk(1.0), rng.disk(1.0)));
    }
    const double t = ctx.tol(1e-7);
    ctx.add(result("C9.residual-jc", 9, "jc-dispersive", "dispersive JC kernel equations of motion, 100 random points", jc, t, jc < t));
}

void criterion9_rabi(Context& ctx)
{
    Rng rng;
    double first = 0.0, second = 0.0, init = 0.0;
    for (int k = 0; k < 100; ++k) {
        const QubitMatrix q = rng.state();
        const PhysicalParams p =
            make(rng.uniform(0.5, 1.5), rng.uniform(1.7, 2.5), rng.uniform(0.01, 0.2), rng.uniform(0.05, 0.3), rng.uniform(0.1, 1.0));
        first = std::max(first,
                         rabi_first_order_residual(p, q, rng.uniform(0.1, 10.0), rng.disk(1.0), rng.disk(1.0), rng.disk(1.0), rng.disk(1.0)));

        SecondOrderTable tab = second_order_table(p, q, true);
        if (!ctx.opt.inject_fault.empty()) inject_fault(tab, ctx.opt.inject_fault);
        second = std::max(second, rabi_second_order_residual(p, q, tab, rng.uniform(0.1, 10.0), rng.disk(1.0), rng.disk(1.0)));
        for (const auto& blk : tab.evaluate(0.0))
            for (cplx v : blk) init = std::max(init, std::abs(v));
    }
    const double t = ctx.tol(1e-7);
    ctx.add(result("C9.residual-first-order", 9, "rabi-perturbative", "Rabi first-order kernel equations, 100 random points", first, t,
                   first < t));
    const std::string fault = ctx.opt.inject_fault.empty() ? "" : "fault injected: " + ctx.opt.inject_fault;
    ctx.add(result("C9.residual-second-order", 9, "rabi-perturbative", "Rabi second-order coefficient equations, 100 random points",
                   second, t, second < t, fault));
    const double ti = ctx.tol(1e-10);
    ctx.add(result("C9.initial-condition", 9, "rabi-perturbative", "second-order coefficients vanish at t = 0", init, ti, init < ti,
                   fault));
}

void criterion10(Context& ctx)
{
    const PhysicalParams p = fig2_params();
    if (ctx.hygiene.empty()) {
        const int N = 15;
        const Eigen::MatrixXcd rho0 = product_state(QubitMatrix::plus(), thermal_boson(derive(p).nbar, N));
        const Trajectory tr = evolve(rho0, linspace(0.0, 60.0, 601), Model::DispersiveJC, p);
        ctx.record("fig2-left", Model::DispersiveJC, p, N, tr.max_trace_drift, tr.min_eigenvalue);
    }
    double drift = 0.0, mineig = std::numeric_limits<double>::infinity();
    std::string worst_drift, worst_eig;
    for (const auto& h : ctx.hygiene) {
        if (h.drift >= drift) {
            drift = h.drift;
            worst_drift = h.name;
        }
        if (h.min_eig <= mineig) {
            mineig = h.min_eig;
            worst_eig = h.name;
        }
    }
    ctx.add(result("C10.trace-drift", 10, "lindblad-numeric", "max trace drift over every numeric run in this battery", drift,
                   ctx.tol(1e-8), drift < ctx.tol(1e-8),
                   std::to_string(ctx.hygiene.size()) + " runs, worst: " + worst_drift));
    ctx.add(result("C10.positivity", 10, "lindblad-numeric", "-(min state eigenvalue) over every numeric run", -mineig, ctx.tol(1e-8),
                   mineig > -ctx.tol(1e-8), "worst: " + worst_eig));

    // one spectrum per distinct generator
    std::vector<std::tuple<int, double, double, double, double, double, int>> seen;
    double maxre = -std::numeric_limits<double>::infinity();
    std::string worst_gen;
    for (const auto& h : ctx.hygiene) {
        const auto key = std::make_tuple(static_cast<int>(h.model), h.p.omega, h.p.Omega, h.p.g, h.p.gamma,
                                         h.p.temperature.value_or(-1.0), h.N);
        if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
        seen.push_back(key);
        const double top = spectrum_hermitian(liouvillian(h.model, h.p, h.N), 2 * (h.N + 1))(0).real();
        if (top >= maxre) {
            maxre = top;
            worst_gen = h.name;
        }
    }
    ctx.add(result("C10.dissipativity", 10, "lindblad-numeric", "max Re eigenvalue over the generators of every numeric run", maxre,
                   ctx.tol(1e-10), maxre < ctx.tol(1e-10),
                   std::to_string(seen.size()) + " generators, largest from " + worst_gen));

    auto top = [&](int N) {
        const Eigen::MatrixXcd rho0 = product_state(QubitMatrix::plus(), thermal_boson(derive(p).nbar, N));
        EvolveOptions o;
        o.leak_threshold = 1.0;
        return evolve(rho0, linspace(0.0, 60.0, 601), Model::DispersiveJC, p, o).max_top_population;
    };
    const TruncationResult tr = truncation_search(top, 1e-7);
    const double off = std::abs(tr.N - 7);
    std::string hist;
    for (const auto& [N, v] : tr.history) hist += std::to_string(N) + ":" + fmt("%.1e", v) + " ";
    ctx.add(result("C10.truncation", 10, "lindblad-numeric", "|N - 7| from the truncation search on fig2-left at 1e-7", off, 1.0,
                   tr.ok && off <= 1.0, "N = " + std::to_string(tr.N) + "; probes " + hist));
}

std::vector<Check> registry()
{
    return {
        {"params", 0, check_params},
        {"bargmann", 0, check_bargmann},
        {"jc-dispersive", 4, criterion4},
        {"jc-dispersive", 3, criterion3},
        {"jc-dispersive", 1, criterion1},
        {"jc-dispersive", 2, criterion2},
        {"jc-dispersive", 9, criterion9_jc},
        {"rabi-perturbative", 0, check_stationary},
        {"rabi-perturbative", 8, criterion8},
        {"rabi-perturbative", 9, criterion9_rabi},
        {"rabi-perturbative", 5, criterion5},
        {"rabi-perturbative", 6, criterion6},
        {"rabi-perturbative", 7, criterion7},
        {"lindblad-numeric", 10, criterion10},
    };
}

}  // namespace

std::vector<std::string> module_names() { return {"params", "bargmann", "jc-dispersive", "rabi-perturbative", "lindblad-numeric"}; }

void inject_fault(SecondOrderTable& table, const std::string& label)
{
    for (auto& blk : table.x)
        for (auto& pair : blk)
            for (auto& term : pair)
                if (term.label == label) {
                    term.amp = -term.amp;
                    return;
                }
    throw std::invalid_argument("no second-order term labelled '" + label + "'");
}

std::vector<std::string> fault_labels()
{
    const SecondOrderTable tab = second_order_table(rabi_params(1.5, 0.1), QubitMatrix::plus(), true);
    std::vector<std::string> out;
    for (const auto& blk : tab.x)
        for (const auto& pair : blk)
            for (const auto& term : pair)
                if (std::find(out.begin(), out.end(), term.label) == out.end()) out.push_back(term.label);
    return out;
}

std::vector<CheckResult> run_checks(const CheckOptions& opt)
{
    if (!opt.only.empty()) {
        const auto names = module_names();
        if (std::find(names.begin(), names.end(), opt.only) == names.end())
            throw std::invalid_argument("unknown module '" + opt.only + "'");
    }
    if (!opt.inject_fault.empty()) {
        SecondOrderTable probe = second_order_table(rabi_params(1.5, 0.1), QubitMatrix::plus(), true);
        inject_fault(probe, opt.inject_fault);  // validates the label up front
    }
    Context ctx(opt);
    for (const auto& c : registry()) {
        if (!opt.only.empty() && c.module != opt.only) continue;
        if (!opt.criteria.empty() && !opt.criteria.count(c.criterion)) continue;
        ctx.check_start = Clock::now();
        try {
            c.run(ctx);
        } catch (const std::exception& ex) {
            ctx.add(result("C" + std::to_string(c.criterion) + ".error", c.criterion, c.module, "check raised an exception", 0.0, 0.0,
                           false, ex.what()));
        }
    }
    return ctx.results;
}

}  // namespace openqb::verify
