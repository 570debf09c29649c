#pragma once

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "openqb/rabi_perturbative.hpp"

namespace openqb::verify {

struct CheckResult {
    std::string id;         // e.g. "C9.residual-second-order"
    int criterion = 0;      // 1..10; 0 for module self-checks
    std::string module;     // params, bargmann, jc-dispersive, rabi-perturbative, lindblad-numeric
    std::string what;
    double measured = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct CheckOptions {
    double tol_scale = 1.0;         // multiplies every numeric tolerance
    std::string only;               // module filter, empty for all
    std::set<int> criteria;         // criterion filter, empty for all
    std::string inject_fault;       // label of a second-order table term to negate
    std::function<void(const CheckResult&)> on_result;
};

std::vector<std::string> module_names();
std::vector<CheckResult> run_checks(const CheckOptions& opt);

// negates the first term carrying `label`; throws std::invalid_argument if none does
void inject_fault(SecondOrderTable& table, const std::string& label);
// labels available for fault injection
std::vector<std::string> fault_labels();

// slowest decay rate (largest real part) of the dispersive coherence-block generator,
// computed sector by sector in n - m
cplx slowest_coherence_eigenvalue(const PhysicalParams& p, int N);

}  // namespace openqb::verify
