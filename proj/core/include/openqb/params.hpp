#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace openqb {

using cplx = std::complex<double>;
inline constexpr cplx I{0.0, 1.0};

enum class Model { DispersiveJC, Rabi, JC };

std::string to_string(Model m);
Model model_from_string(const std::string& s);

// Model constants in hbar = 1 units. Temperature is the canonical bath input;
// nbar_override lets a caller pin the occupation directly (temperature is then ignored).
struct PhysicalParams {
    double omega = 1.0;
    double Omega = 1.0;
    double g = 0.0;
    double gamma = 0.0;
    std::optional<double> temperature = 0.0;
    std::optional<double> nbar_override;

    std::optional<double> beta() const;
};

struct DerivedParams {
    double nbar = 0.0;
    double delta = 0.0;
    std::optional<double> lambda;  // absent at resonance
    double g_lambda = 0.0;         // g*lambda, zero when lambda is absent
    double omega_prime = 0.0;
    cplx phi_plus, phi_minus, phi;
    cplx psi_plus, psi_minus;
};

// 1/(e^{Omega/T} - 1), with T = 0 mapped to 0.
double bose_einstein(double Omega, double temperature);
// Same quantity through the hyperbolic cotangent form.
double bose_einstein_coth(double Omega, double temperature);

DerivedParams derive(const PhysicalParams& p);

struct RegimeThresholds {
    double lambda_max = 0.2;      // dispersive expansion
    double g_over_delta_max = 1.0;
    double g_rel_max = 0.2;       // fraction of min(omega, Omega)
};

std::vector<std::string> validate_regime(const PhysicalParams& p, Model model,
                                         const RegimeThresholds& th = {});

}  // namespace openqb
