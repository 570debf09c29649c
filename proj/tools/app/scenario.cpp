#include "scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "openqb/jc_dispersive.hpp"
#include "openqb/rabi_perturbative.hpp"

#ifndef OPENQB_VERSION
#define OPENQB_VERSION "0.0.0"
#endif

namespace openqb::app {

namespace fs = std::filesystem;
using nlohmann::json;

std::string version_string() { return OPENQB_VERSION; }

std::string to_string(Method m)
{
    switch (m) {
    case Method::Analytic: return "analytic";
    case Method::Numeric: return "numeric";
    case Method::Both: return "both";
    }
    return "both";
}

std::string to_string(Integrator i) { return i == Integrator::Expm ? "expm" : "dopri5"; }
std::string to_string(BosonInit b) { return b == BosonInit::Coherent ? "coherent" : "thermal"; }

namespace {

const std::string kAbs2 = "sigma_minus_adag_abs2_over_g2";

Method method_from(const std::string& s)
{
    if (s == "analytic") return Method::Analytic;
    if (s == "numeric") return Method::Numeric;
    if (s == "both") return Method::Both;
    throw std::invalid_argument("unknown method '" + s + "' (expected analytic, numeric or both)");
}

Integrator integrator_from(const std::string& s)
{
    if (s == "dopri5") return Integrator::Dopri5;
    if (s == "expm") return Integrator::Expm;
    throw std::invalid_argument("unknown integrator '" + s + "' (expected dopri5 or expm)");
}

BosonInit boson_from(const std::string& s)
{
    if (s == "thermal") return BosonInit::Thermal;
    if (s == "coherent") return BosonInit::Coherent;
    throw std::invalid_argument("unknown boson state '" + s + "' (expected thermal or coherent)");
}

}  // namespace

bool known_observable(const std::string& name)
{
    if (name == kAbs2) return true;
    try {
        observable_from_string(name);
        return true;
    } catch (const std::invalid_argument&) {
        return false;
    }
}

QubitMatrix Scenario::qubit() const
{
    if (qubit_init == "bloch") return QubitMatrix::from_bloch(bloch[0], bloch[1], bloch[2]);
    return QubitMatrix::from_name(qubit_init);
}

std::vector<double> Scenario::grid() const
{
    if (!grid_override.empty()) return grid_override;
    return linspace(0.0, t_max, n_points);
}

void Scenario::validate() const
{
    auto bad = [&](const std::string& m) { throw std::invalid_argument("scenario '" + name + "': " + m); };
    if (!(params.omega > 0.0)) bad("omega must be positive");
    if (!(params.Omega > 0.0)) bad("Omega must be positive");
    if (params.g < 0.0) bad("g must be non-negative");
    if (params.gamma < 0.0) bad("gamma must be non-negative");
    if (params.temperature && *params.temperature < 0.0) bad("temperature must be non-negative");
    if (params.nbar_override && *params.nbar_override < 0.0) bad("nbar must be non-negative");
    if (!qubit().is_state(1e-12)) bad("qubit_init is not a valid state");
    if (grid_override.empty()) {
        if (n_points < 2) bad("n_points must be at least 2");
        if (!(t_max > 0.0)) bad("t_max must be positive");
    } else {
        if (grid_override.size() < 2) bad("time grid needs at least two points");
        if (grid_override.front() < 0.0) bad("time grid must start at or after 0");
        for (size_t i = 1; i < grid_override.size(); ++i)
            if (!(grid_override[i] > grid_override[i - 1])) bad("time grid must be strictly increasing");
    }
    if (N < 1) bad("truncation N must be at least 1");
    if (!(tol > 0.0)) bad("tol must be positive");
    if (!(top_pop_target > 0.0)) bad("top_pop_target must be positive");
    if (observables.empty()) bad("no observables requested");
    for (const auto& o : observables)
        if (!known_observable(o)) bad("unknown observable '" + o + "'");
    if (model == Model::DispersiveJC && params.omega == params.Omega) bad("dispersive model needs nonzero detuning");
}

// ---- config mapping ----

Config scenario_to_config(const Scenario& s)
{
    Config c;
    c.set("name", s.name);
    c.set("model", to_string(s.model));
    c.set("params.omega", fmt_double(s.params.omega));
    c.set("params.Omega", fmt_double(s.params.Omega));
    c.set("params.g", fmt_double(s.params.g));
    c.set("params.gamma", fmt_double(s.params.gamma));
    if (s.params.nbar_override)
        c.set("params.nbar", fmt_double(*s.params.nbar_override));
    else
        c.set("params.temperature", fmt_double(s.params.temperature.value_or(0.0)));
    c.set("init.qubit", s.qubit_init);
    if (s.qubit_init == "bloch") {
        c.set("init.bloch_x", fmt_double(s.bloch[0]));
        c.set("init.bloch_y", fmt_double(s.bloch[1]));
        c.set("init.bloch_z", fmt_double(s.bloch[2]));
    }
    c.set("init.boson", to_string(s.boson));
    if (s.boson == BosonInit::Coherent) {
        c.set("init.alpha_re", fmt_double(s.alpha.real()));
        c.set("init.alpha_im", fmt_double(s.alpha.imag()));
    }
    if (s.grid_override.empty()) {
        c.set("time.t_max", fmt_double(s.t_max));
        c.set("time.n_points", std::to_string(s.n_points));
    } else {
        std::string g;
        for (size_t i = 0; i < s.grid_override.size(); ++i) g += (i ? "," : "") + fmt_double(s.grid_override[i]);
        c.set("time.grid", g);
    }
    c.set("method.kind", to_string(s.method));
    c.set("method.integrator", to_string(s.integrator));
    c.set("method.N", std::to_string(s.N));
    c.set("method.auto_truncation", s.auto_truncation ? "true" : "false");
    c.set("method.top_pop_target", fmt_double(s.top_pop_target));
    c.set("method.tol", fmt_double(s.tol));
    std::string obs;
    for (size_t i = 0; i < s.observables.size(); ++i) obs += (i ? "," : "") + s.observables[i];
    c.set("output.observables", obs);
    if (!s.notes.empty()) {
        std::string joined;
        for (size_t i = 0; i < s.notes.size(); ++i) joined += (i ? "; " : "") + s.notes[i];
        c.set("note", joined);
    }
    return c;
}

Scenario apply_config(Scenario s, const Config& c)
{
    static const std::set<std::string> known{
        "preset", "name", "model", "params.omega", "params.Omega", "params.g", "params.gamma", "params.temperature",
        "params.nbar", "init.qubit", "init.bloch_x", "init.bloch_y", "init.bloch_z", "init.boson", "init.alpha_re",
        "init.alpha_im", "time.t_max", "time.n_points", "time.grid", "method.kind", "method.integrator", "method.N",
        "method.auto_truncation", "method.top_pop_target", "method.tol", "output.observables", "note"};
    for (const auto& [key, e] : c.entries())
        if (!known.count(key)) throw ConfigError(c.where(key) + ": unknown key");

    auto with = [&](const std::string& key, auto&& fn) {
        if (!c.has(key)) return;
        try {
            fn();
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& ex) {
            throw ConfigError(c.where(key) + ": " + ex.what());
        }
    };
    with("name", [&] { s.name = c.str("name"); });
    with("model", [&] { s.model = model_from_string(c.str("model")); });
    with("params.omega", [&] { s.params.omega = c.num("params.omega"); });
    with("params.Omega", [&] { s.params.Omega = c.num("params.Omega"); });
    with("params.g", [&] { s.params.g = c.num("params.g"); });
    with("params.gamma", [&] { s.params.gamma = c.num("params.gamma"); });
    with("params.temperature", [&] {
        s.params.temperature = c.num("params.temperature");
        s.params.nbar_override.reset();
    });
    with("params.nbar", [&] { s.params.nbar_override = c.num("params.nbar"); });
    with("init.qubit", [&] { s.qubit_init = c.str("init.qubit"); });
    with("init.bloch_x", [&] { s.bloch[0] = c.num("init.bloch_x"); });
    with("init.bloch_y", [&] { s.bloch[1] = c.num("init.bloch_y"); });
    with("init.bloch_z", [&] { s.bloch[2] = c.num("init.bloch_z"); });
    with("init.boson", [&] { s.boson = boson_from(c.str("init.boson")); });
    with("init.alpha_re", [&] { s.alpha.real(c.num("init.alpha_re")); });
    with("init.alpha_im", [&] { s.alpha.imag(c.num("init.alpha_im")); });
    with("time.t_max", [&] {
        s.t_max = c.num("time.t_max");
        s.grid_override.clear();
    });
    with("time.n_points", [&] {
        s.n_points = c.integer("time.n_points");
        s.grid_override.clear();
    });
    with("time.grid", [&] {
        s.grid_override.clear();
        for (const auto& v : c.list("time.grid")) s.grid_override.push_back(parse_decimal(v));
    });
    with("method.kind", [&] { s.method = method_from(c.str("method.kind")); });
    with("method.integrator", [&] { s.integrator = integrator_from(c.str("method.integrator")); });
    with("method.N", [&] { s.N = c.integer("method.N"); });
    with("method.auto_truncation", [&] { s.auto_truncation = c.boolean("method.auto_truncation"); });
    with("method.top_pop_target", [&] { s.top_pop_target = c.num("method.top_pop_target"); });
    with("method.tol", [&] { s.tol = c.num("method.tol"); });
    with("output.observables", [&] { s.observables = c.list("output.observables"); });
    with("note", [&] { s.notes = {c.str("note")}; });
    try {
        s.validate();
    } catch (const std::invalid_argument& ex) {
        throw ConfigError(c.source() + ": " + ex.what());
    }
    return s;
}

Scenario scenario_from_config(const Config& c)
{
    Scenario base;
    if (c.has("preset")) {
        std::vector<Scenario> ps;
        try {
            ps = preset(c.str("preset"));
        } catch (const std::exception& ex) {
            throw ConfigError(c.where("preset") + ": " + ex.what());
        }
        if (ps.size() != 1)
            throw ConfigError(c.where("preset") + ": preset expands to " + std::to_string(ps.size())
                              + " scenarios; use it from the command line instead");
        base = ps.front();
    }
    return apply_config(base, c);
}

// ---- presets ----

std::vector<std::string> preset_names() { return {"fig2-left", "fig2-right", "fig3", "fig4", "fig5", "fig6"}; }

namespace {

std::string tag(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

Scenario fig2_base()
{
    Scenario s;
    s.model = Model::DispersiveJC;
    s.params.omega = 1.0;
    s.params.Omega = 4.0;
    s.params.g = 0.5;
    s.params.gamma = 0.15;
    s.params.temperature = 1.563;
    s.qubit_init = "plus";
    s.t_max = 60.0;
    s.n_points = 601;
    s.observables = {"coherence_measure", "photon_number"};
    s.notes.push_back("time range 0..60 chosen to cover the figure's domain");
    return s;
}

Scenario rabi_base(double Omega, double g)
{
    Scenario s;
    s.model = Model::Rabi;
    s.params.omega = 1.0;
    s.params.Omega = Omega;
    s.params.g = g;
    s.params.gamma = 0.1;
    s.params.temperature = 0.1;
    s.qubit_init = "excited";
    return s;
}

}  // namespace

std::vector<Scenario> preset(const std::string& name)
{
    std::vector<Scenario> out;
    if (name == "fig2-left") {
        Scenario s = fig2_base();
        s.name = name;
        out.push_back(s);
    } else if (name == "fig2-right") {
        Scenario s = fig2_base();
        s.name = name;
        s.boson = BosonInit::Coherent;
        s.alpha = 1.0;
        s.notes.push_back("coherent amplitude is not given for this figure; alpha defaults to 1");
        out.push_back(s);
    } else if (name == "fig3") {
        for (double g : {0.01, 0.02, 0.05, 0.1}) {
            Scenario s = rabi_base(1.1, g);
            s.name = "fig3-g" + tag(g);
            s.t_max = 20.0;
            s.n_points = 401;
            s.observables = {kAbs2, "sigma_minus_adag"};
            s.notes.push_back("time range 0..20 chosen to cover the figure's domain");
            out.push_back(s);
        }
    } else if (name == "fig4") {
        Scenario s = rabi_base(1.5, 0.1);
        s.name = name;
        s.t_max = 100.0;
        s.n_points = 1001;
        s.observables = {"sigma_z"};
        s.notes.push_back("time range 0..100 chosen to cover the figure's domain");
        out.push_back(s);
    } else if (name == "fig5") {
        for (double g : {0.02, 0.05, 0.1, 0.2}) {
            Scenario s = rabi_base(1.5, g);
            s.name = "fig5-g" + tag(g);
            s.t_max = 500.0;
            s.n_points = 501;
            s.observables = {"sigma_z"};
            s.notes.push_back("coupling values and time range 0..500 are not stated numerically for this figure");
            out.push_back(s);
        }
    } else if (name == "fig6") {
        for (Model m : {Model::Rabi, Model::JC})
            for (double g : {0.1, 0.001})
                for (double W : {1.25, 1.5, 2.0}) {
                    Scenario s = rabi_base(W, g);
                    s.model = m;
                    s.name = "fig6-" + to_string(m) + "-W" + tag(W) + "-g" + tag(g);
                    s.t_max = 1000.0;
                    s.n_points = 501;
                    s.observables = {"sigma_z"};
                    s.notes.push_back("time range 0..1000 chosen to cover the figure's domain");
                    s.notes.push_back("late-time asymptotes are listed under derived.steady_sigma_z");
                    out.push_back(s);
                }
    } else {
        std::string known;
        for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
        throw std::invalid_argument("unknown preset '" + name + "' (known: " + known + ")");
    }
    return out;
}

// ---- running ----

void RunResult::note(const std::string& text)
{
    if (std::find(notes.begin(), notes.end(), text) == notes.end()) notes.push_back(text);
}

const Series* RunResult::find(const std::string& obs, const std::string& source) const
{
    for (const auto& s : series)
        if (s.observable == obs && s.source == source) return &s;
    return nullptr;
}

namespace {

Series make_series(const std::string& obs, const std::string& source, const std::vector<double>& tn)
{
    Series s;
    s.observable = obs;
    s.source = source;
    s.t = tn;
    s.value.reserve(tn.size());
    return s;
}

void analytic_dispersive(const Scenario& sc, const std::vector<double>& ts, const std::vector<double>& tn, RunResult& r)
{
    const QubitMatrix q = sc.qubit();
    const auto states = sc.boson == BosonInit::Thermal ? evolve_thermal(ts, sc.params, q)
                                                       : evolve_coherent(ts, sc.params, q, sc.alpha);
    for (const auto& obs : sc.observables) {
        Series s = make_series(obs, "analytic", tn);
        for (const auto& st : states) {
            if (obs == "sigma_x")
                s.value.emplace_back(st.qubit.sigma_x());
            else if (obs == "sigma_y")
                s.value.emplace_back(st.qubit.sigma_y());
            else if (obs == "sigma_z")
                s.value.emplace_back(st.qubit.sigma_z());
            else if (obs == "coherence_measure")
                s.value.emplace_back(coherence_measure(st.qubit));
            else if (obs == "photon_number")
                s.value.emplace_back(photon_number(st.blocks));
            else
                break;
        }
        if (s.value.size() == tn.size())
            r.series.push_back(std::move(s));
        else
            r.note("no closed form for " + obs + " in the dispersive model");
    }
}

void analytic_rabi(const Scenario& sc, const std::vector<double>& ts, const std::vector<double>& tn, RunResult& r)
{
    const QubitMatrix q = sc.qubit();
    const PhysicalParams& p = sc.params;
    if (sc.boson != BosonInit::Thermal) {
        r.note("perturbative Rabi closed forms assume a thermal boson; analytic series skipped");
        return;
    }
    for (const auto& obs : sc.observables) {
        try {
            if (obs == "sigma_z") {
                const SigmaZCurves c = exp_sigma_z_multiscale(ts, p, q);
                Series a = make_series(obs, "analytic", tn), ms = make_series(obs, "analytic_ms", tn),
                       sec = make_series(obs, "analytic_secular", tn);
                for (size_t k = 0; k < ts.size(); ++k) {
                    a.value.emplace_back(c.zeroth_ms[k]);
                    ms.value.emplace_back(c.composite[k]);
                    sec.value.emplace_back(c.secular[k]);
                }
                r.series.push_back(std::move(a));
                r.series.push_back(std::move(ms));
                r.series.push_back(std::move(sec));
            } else if (obs == "sigma_minus_adag" || obs == kAbs2) {
                Series s = make_series(obs, "analytic", tn);
                if (obs == kAbs2) {
                    // the first-order ratio does not depend on g; unit coupling also covers g = 0
                    PhysicalParams p1 = p;
                    p1.g = 1.0;
                    for (const cplx v : exp_sigma_minus_adag(ts, p1, q).value) s.value.emplace_back(std::norm(v));
                } else {
                    s.value = exp_sigma_minus_adag(ts, p, q).value;
                }
                r.series.push_back(std::move(s));
            } else {
                r.note("no closed form for " + obs + " in the Rabi model");
            }
        } catch (const std::exception& ex) {
            r.note("analytic " + obs + " unavailable: " + ex.what());
        }
    }
}

void analytic_jc(const Scenario& sc, const std::vector<double>& tn, RunResult& r)
{
    for (const auto& obs : sc.observables) {
        if (obs != "sigma_z") {
            r.note("no closed form for " + obs + " in the JC model");
            continue;
        }
        const double v = steady_sigma_z(sc.params, Model::JC, SteadyOrder::Zeroth);
        Series s = make_series(obs, "analytic", tn);
        s.value.assign(tn.size(), v);
        r.series.push_back(std::move(s));
        r.note("JC analytic sigma_z is the late-time asymptote");
    }
}

Eigen::MatrixXcd initial_state(const Scenario& sc, int N)
{
    const Eigen::MatrixXcd b = sc.boson == BosonInit::Thermal ? thermal_boson(derive(sc.params).nbar, N)
                                                              : coherent_boson(sc.alpha, N);
    return product_state(sc.qubit(), b);
}

Trajectory integrate(const Scenario& sc, const std::vector<double>& ts, int N, double leak)
{
    const Eigen::MatrixXcd rho0 = initial_state(sc, N);
    if (sc.integrator == Integrator::Expm) return evolve_expm(rho0, ts, sc.model, sc.params, leak);
    EvolveOptions o;
    o.tol = sc.tol;
    o.leak_threshold = leak;
    return evolve(rho0, ts, sc.model, sc.params, o);
}

void numeric(const Scenario& sc, const std::vector<double>& ts, const std::vector<double>& tn, RunResult& r)
{
    NumericDiagnostics diag;
    int N = sc.N;
    if (sc.auto_truncation) {
        auto top = [&](int n) {
            try {
                return integrate(sc, ts, n, 1.0).max_top_population;
            } catch (const TruncationLeak&) {
                return 1.0;
            }
        };
        const TruncationResult tr = truncation_search(top, sc.top_pop_target);
        diag.search = tr;
        if (!tr.ok)
            throw std::runtime_error("truncation search failed: top population " + fmt_double(tr.top_population)
                                     + " at N = " + std::to_string(tr.N));
        N = tr.N;
    }
    const Trajectory tr = integrate(sc, ts, N, EvolveOptions{}.leak_threshold);
    diag.N = N;
    diag.max_trace_drift = tr.max_trace_drift;
    diag.min_eigenvalue = tr.min_eigenvalue;
    diag.max_top_population = tr.max_top_population;
    diag.steps = tr.stats.accepted;
    const FockOps ops(N);
    for (const auto& obs : sc.observables) {
        Series s = make_series(obs, "numeric", tn);
        for (const auto& rho : tr.states) {
            if (obs == kAbs2) {
                const cplx v = observable(rho, Observable::SigmaMinusAdag, ops);
                s.value.emplace_back(sc.params.g > 0.0 ? std::norm(v) / (sc.params.g * sc.params.g) : 0.0);
            } else {
                s.value.push_back(observable(rho, observable_from_string(obs), ops));
            }
        }
        if (obs == kAbs2 && sc.params.g == 0.0) r.note("numeric " + obs + " is undefined at g = 0; written as 0");
        r.series.push_back(std::move(s));
    }
    r.numeric = diag;
}

}  // namespace

RunResult run_scenario(const Scenario& sc)
{
    sc.validate();
    RunResult r;
    r.scenario = sc;
    r.derived = derive(sc.params);
    r.warnings = validate_regime(sc.params, sc.model);
    r.notes = sc.notes;
    const std::vector<double> tn = sc.grid();
    std::vector<double> ts(tn.size());
    std::transform(tn.begin(), tn.end(), ts.begin(), [&](double x) { return x / sc.params.omega; });

    if (sc.method != Method::Numeric) {
        switch (sc.model) {
        case Model::DispersiveJC: analytic_dispersive(sc, ts, tn, r); break;
        case Model::Rabi: analytic_rabi(sc, ts, tn, r); break;
        case Model::JC: analytic_jc(sc, tn, r); break;
        }
    }
    if (sc.method != Method::Analytic) numeric(sc, ts, tn, r);
    return r;
}

// ---- output ----

std::vector<std::string> write_outputs(const RunResult& r, const fs::path& dir)
{
    fs::create_directories(dir);
    std::vector<std::string> files;
    for (const auto& obs : r.scenario.observables) {
        const std::string file = obs + ".csv";
        std::FILE* f = std::fopen((dir / file).string().c_str(), "w");
        if (!f) throw std::runtime_error("cannot write " + (dir / file).string());
        std::fprintf(f, "t,%s_re,%s_im,source\n", obs.c_str(), obs.c_str());
        for (const auto& s : r.series) {
            if (s.observable != obs) continue;
            for (size_t k = 0; k < s.t.size(); ++k)
                std::fprintf(f, "%.17g,%.17g,%.17g,%s\n", s.t[k], s.value[k].real(), s.value[k].imag(), s.source.c_str());
        }
        std::fclose(f);
        files.push_back(file);
    }
    files.push_back("manifest.json");
    std::ofstream m(dir / "manifest.json");
    if (!m) throw std::runtime_error("cannot write " + (dir / "manifest.json").string());
    m << manifest(r, files).dump(2) << "\n";
    return files;
}

json manifest(const RunResult& r, const std::vector<std::string>& files)
{
    auto cj = [](cplx z) { return json::array({z.real(), z.imag()}); };
    const PhysicalParams& p = r.scenario.params;
    const DerivedParams& d = r.derived;
    json m;
    m["tool"] = "openqb";
    m["version"] = version_string();
    m["scenario"] = r.scenario.name;

    json cfg = json::object();
    const Config c = scenario_to_config(r.scenario);
    for (const auto& [k, e] : c.entries()) cfg[k] = e.value;
    m["config"] = cfg;

    json dj;
    dj["nbar"] = d.nbar;
    dj["delta"] = d.delta;
    dj["lambda"] = d.lambda ? json(*d.lambda) : json(nullptr);
    dj["omega_prime"] = d.omega_prime;
    dj["phi_plus"] = cj(d.phi_plus);
    dj["phi_minus"] = cj(d.phi_minus);
    dj["phi"] = cj(d.phi);
    dj["psi_plus"] = cj(d.psi_plus);
    dj["psi_minus"] = cj(d.psi_minus);
    if (r.scenario.model == Model::DispersiveJC && d.lambda) {
        dj["theta2"] = cj(theta2_of(p).theta2);
        dj["gamma2"] = gamma2(p);
    }
    json ss;
    ss["jc"] = steady_sigma_z(p, Model::JC, SteadyOrder::Zeroth);
    ss["rabi"] = steady_sigma_z(p, Model::Rabi, SteadyOrder::Zeroth);
    ss["rabi_g2_corrected"] = steady_sigma_z(p, Model::Rabi, SteadyOrder::SecondCorrected);
    dj["steady_sigma_z"] = ss;
    m["derived"] = dj;

    if (r.numeric) {
        const auto& n = *r.numeric;
        json t;
        t["N"] = n.N;
        t["max_trace_drift"] = n.max_trace_drift;
        t["min_eigenvalue"] = n.min_eigenvalue;
        t["max_top_population"] = n.max_top_population;
        t["accepted_steps"] = n.steps;
        if (n.search) {
            json h = json::array();
            for (const auto& [N, v] : n.search->history) h.push_back(json::array({N, v}));
            t["search"] = {{"N", n.search->N}, {"ok", n.search->ok}, {"history", h}};
        }
        m["truncation"] = t;
    }
    m["warnings"] = r.warnings;
    m["notes"] = r.notes;
    m["outputs"] = files;
    return m;
}

Scenario scenario_from_manifest(const fs::path& path)
{
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open manifest " + path.string());
    json m;
    try {
        f >> m;
    } catch (const json::exception& ex) {
        throw ConfigError(path.string() + ": " + ex.what());
    }
    if (!m.contains("config") || !m["config"].is_object()) throw ConfigError(path.string() + ": no config object");
    Config c;
    for (const auto& [k, v] : m["config"].items()) c.set(k, v.get<std::string>());
    Scenario s = apply_config(Scenario{}, c);
    // the manifest list also holds notes added during the run
    s.notes.clear();
    if (m.contains("notes"))
        for (const auto& n : m["notes"]) {
            const std::string t = n.get<std::string>();
            if (std::find(s.notes.begin(), s.notes.end(), t) == s.notes.end()) s.notes.push_back(t);
        }
    return s;
}

}  // namespace openqb::app
