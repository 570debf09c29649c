#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "config.hpp"
#include "openqb/lindblad.hpp"
#include "openqb/params.hpp"
#include "openqb/qubit.hpp"

namespace openqb::app {

enum class Method { Analytic, Numeric, Both };
enum class Integrator { Dopri5, Expm };
enum class BosonInit { Thermal, Coherent };

std::string to_string(Method m);
std::string to_string(Integrator i);
std::string to_string(BosonInit b);

// Observable names accepted in scenarios: the numeric ones from lindblad.hpp
// plus sigma_minus_adag_abs2_over_g2.
bool known_observable(const std::string& name);

struct Scenario {
    std::string name = "scenario";
    Model model = Model::DispersiveJC;
    PhysicalParams params;

    std::string qubit_init = "excited";  // excited, ground, plus or bloch
    double bloch[3] = {0.0, 0.0, 1.0};
    BosonInit boson = BosonInit::Thermal;
    cplx alpha = 0.0;

    // time axis in units of 1/omega
    double t_max = 10.0;
    int n_points = 101;
    std::vector<double> grid_override;

    Method method = Method::Both;
    Integrator integrator = Integrator::Dopri5;
    int N = 15;
    bool auto_truncation = false;
    double top_pop_target = 1e-7;
    double tol = 1e-10;

    std::vector<std::string> observables{"sigma_z"};
    std::vector<std::string> notes;

    QubitMatrix qubit() const;
    std::vector<double> grid() const;  // normalised times
    void validate() const;             // throws std::invalid_argument
};

// Config <-> Scenario. A "preset" key seeds the scenario from a named preset
// (which must expand to a single scenario) before the remaining keys apply.
Scenario scenario_from_config(const Config& c);
Config scenario_to_config(const Scenario& s);
// applies the keys of `c` (other than preset) on top of `base`
Scenario apply_config(Scenario base, const Config& c);

std::vector<std::string> preset_names();
std::vector<Scenario> preset(const std::string& name);

struct Series {
    std::string observable;
    std::string source;  // analytic, analytic_ms, analytic_secular, numeric
    std::vector<double> t;
    std::vector<cplx> value;
};

struct NumericDiagnostics {
    int N = 0;
    double max_trace_drift = 0.0;
    double min_eigenvalue = 0.0;
    double max_top_population = 0.0;
    long steps = 0;
    std::optional<TruncationResult> search;
};

struct RunResult {
    Scenario scenario;
    DerivedParams derived;
    std::vector<Series> series;
    std::optional<NumericDiagnostics> numeric;
    std::vector<std::string> warnings;
    std::vector<std::string> notes;

    void note(const std::string& text);  // skips duplicates
    const Series* find(const std::string& obs, const std::string& source) const;
};

RunResult run_scenario(const Scenario& s);

// CSV per observable plus manifest.json; returns the written file names
std::vector<std::string> write_outputs(const RunResult& r, const std::filesystem::path& dir);
nlohmann::json manifest(const RunResult& r, const std::vector<std::string>& files);
// scenario stored in a manifest written by write_outputs
Scenario scenario_from_manifest(const std::filesystem::path& manifest_path);

std::string version_string();

}  // namespace openqb::app
