#include "openqb/params.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace openqb {

std::string to_string(Model m)
{
    switch (m) {
    case Model::DispersiveJC: return "dispersive_jc";
    case Model::Rabi: return "rabi";
    case Model::JC: return "jc";
    }
    return "unknown";
}

Model model_from_string(const std::string& s)
{
    if (s == "dispersive_jc" || s == "dispersive-jc" || s == "dispersive") return Model::DispersiveJC;
    if (s == "rabi") return Model::Rabi;
    if (s == "jc") return Model::JC;
    throw std::invalid_argument("unknown model '" + s + "' (expected dispersive_jc, rabi or jc)");
}

std::optional<double> PhysicalParams::beta() const
{
    if (!temperature || *temperature <= 0.0) return std::nullopt;
    return 1.0 / *temperature;
}

double bose_einstein(double Omega, double temperature)
{
    if (temperature == 0.0) return 0.0;
    return 1.0 / std::expm1(Omega / temperature);
}

double bose_einstein_coth(double Omega, double temperature)
{
    if (temperature == 0.0) return 0.0;
    // (coth(x) - 1) / 2 rewritten as e^{-x} / (2 sinh x) to avoid cancellation at large x
    const double x = 0.5 * Omega / temperature;
    return 0.5 * std::exp(-x) / std::sinh(x);
}

DerivedParams derive(const PhysicalParams& p)
{
    if (!(p.Omega > 0.0)) throw std::invalid_argument("boson frequency Omega must be positive");
    if (!(p.omega > 0.0)) throw std::invalid_argument("qubit frequency omega must be positive");
    if (p.g < 0.0) throw std::invalid_argument("coupling g must be non-negative");
    if (p.gamma < 0.0) throw std::invalid_argument("decay rate gamma must be non-negative");

    DerivedParams d;
    if (p.nbar_override) {
        if (*p.nbar_override < 0.0) throw std::invalid_argument("nbar must be non-negative");
        d.nbar = *p.nbar_override;
    } else {
        const double T = p.temperature.value_or(0.0);
        if (T < 0.0) throw std::invalid_argument("temperature must be non-negative");
        d.nbar = bose_einstein(p.Omega, T);
    }

    d.delta = p.omega - p.Omega;
    if (d.delta != 0.0) {
        d.lambda = p.g / d.delta;
        d.g_lambda = p.g * *d.lambda;
    }
    d.omega_prime = p.omega + d.g_lambda;

    const double re = p.gamma * (d.nbar + 0.5);
    d.phi_plus = cplx(re, p.Omega + d.g_lambda);
    d.phi_minus = cplx(re, p.Omega - d.g_lambda);
    d.phi = cplx(re, p.Omega);
    d.psi_plus = cplx(p.gamma, 2.0 * (p.omega + p.Omega));
    d.psi_minus = cplx(p.gamma, 2.0 * (p.omega - p.Omega));
    return d;
}

std::vector<std::string> validate_regime(const PhysicalParams& p, Model model, const RegimeThresholds& th)
{
    std::vector<std::string> out;
    if (p.g == 0.0) return out;
    const DerivedParams d = derive(p);

    auto fmt = [](double x) {
        std::ostringstream s;
        s << x;
        return s.str();
    };

    if (model == Model::DispersiveJC) {
        if (!d.lambda)
            out.push_back("detuning is zero: dispersive model undefined");
        else if (std::abs(*d.lambda) >= th.lambda_max)
            out.push_back("|lambda| = " + fmt(std::abs(*d.lambda)) + " >= " + fmt(th.lambda_max)
                          + ": dispersive expansion questionable");
    }
    if (model == Model::Rabi) {
        if (d.delta == 0.0)
            out.push_back("detuning is zero: second-order formulas are only valid away from resonance");
        else if (p.g / std::abs(d.delta) > th.g_over_delta_max)
            out.push_back("g/|Delta| = " + fmt(p.g / std::abs(d.delta)) + " > " + fmt(th.g_over_delta_max)
                          + ": second-order formulas out of validity");
    }
    if (model != Model::DispersiveJC) {
        const double lim = th.g_rel_max * std::min(p.omega, p.Omega);
        if (p.g >= lim)
            out.push_back("g = " + fmt(p.g) + " >= " + fmt(lim) + ": weak-coupling assumption strained");
    }
    return out;
}

}  // namespace openqb
