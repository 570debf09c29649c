#include "openqb/rabi_perturbative.hpp"

#include <cmath>
#include <stdexcept>

namespace openqb {

namespace {

void require_damping(const PhysicalParams& p)
{
    if (!(p.gamma > 0.0)) throw std::invalid_argument("perturbative Rabi solution requires gamma > 0");
}

void require_hermitian(const QubitMatrix& q)
{
    if (std::abs(q.q21 - std::conj(q.q12)) > 1e-12 || std::abs(q.q11.imag()) > 1e-12 || std::abs(q.q22.imag()) > 1e-12)
        throw std::invalid_argument("qubit matrix must be hermitian");
}

// Gaussian propagator of the free damped oscillator, unit prefactor
PolyGaussianKernel gaussian_G(double t, double Omega, double gamma, double nb)
{
    const double E = std::exp(-gamma * t);
    const double den = 2.0 + 2.0 * nb * (1.0 - E);
    PolyGaussianKernel k;
    k.Z = 1.0 / (1.0 + nb * (1.0 - E));
    k.H(0, 1) = k.H(1, 0) = nb * (1.0 - E) / den;
    k.H(0, 2) = k.H(2, 0) = std::exp(-gamma * t / 2.0) * std::exp(-I * Omega * t) / den;
    k.H(1, 3) = k.H(3, 1) = std::exp(-gamma * t / 2.0) * std::exp(I * Omega * t) / den;
    k.H(2, 3) = k.H(3, 2) = (nb + 1.0) * (1.0 - E) / den;
    return k;
}

// i G (c0 z* + c1 z + c2 w + c3 v)
PolyGaussianKernel linear_kernel(const PolyGaussianKernel& G, const std::array<cplx, 4>& c)
{
    PolyGaussianKernel k = G;
    k.Z = I * G.Z;
    k.poly[{0, 1, 0, 0}] = c[0];
    k.poly[{1, 0, 0, 0}] = c[1];
    k.poly[{0, 0, 1, 0}] = c[2];
    k.poly[{0, 0, 0, 1}] = c[3];
    return k;
}

// q_a X - q_b (X2*, X1*, X4*, X3*)
std::array<cplx, 4> mix(cplx qa, cplx qb, const std::array<cplx, 4>& X)
{
    using std::conj;
    return {qa * X[0] - qb * conj(X[1]), qa * X[1] - qb * conj(X[0]), qa * X[2] - qb * conj(X[3]),
            qa * X[3] - qb * conj(X[2])};
}

}  // namespace

cplx f_psi(double t, double gamma, cplx psi)
{
    return std::exp(-gamma * t) * std::conj(psi) + psi - 2.0 * gamma * std::exp(-0.5 * std::conj(psi) * t);
}

std::array<cplx, 4> first_order_xA(double t, const PhysicalParams& p, double w)
{
    require_damping(p);
    const double nb = derive(p).nbar, gam = p.gamma, W = p.Omega;
    const cplx pp(gam, 2.0 * (w + W)), pm(gam, 2.0 * (w - W));
    const double den = 1.0 + nb * (1.0 - std::exp(-gam * t));
    const cplx rot = std::exp(-I * w * t);
    const double Pp = std::norm(pp), Pm = std::norm(pm);
    const cplx fp = f_psi(t, gam, pp), fm = f_psi(t, gam, pm);
    return {2.0 * rot * (nb * fp + pp * (1.0 - std::exp(-0.5 * std::conj(pp) * t))) / (den * Pp),
            2.0 * nb * rot * fm / (den * Pm),
            2.0 * (1.0 + nb) * std::conj(fp) / (den * Pp),
            2.0 * (nb * std::conj(fm) + std::conj(pm) * (1.0 - std::exp(-0.5 * pm * t))) / (den * Pm)};
}

std::array<cplx, 4> first_order_xB(double t, const PhysicalParams& p, double w, cplx q11, cplx q22)
{
    require_damping(p);
    using std::conj;
    using std::exp;
    const double nb = derive(p).nbar, gam = p.gamma, W = p.Omega;
    const cplx pp(gam, 2.0 * (w + W)), pm(gam, 2.0 * (w - W));
    const double den = 1.0 + nb * (1.0 - std::exp(-gam * t));
    const double Pp = std::norm(pp), Pm = std::norm(pm);
    const double E = std::exp(-gam * t);
    const cplx d = q11 - q22;
    const cplx rot = exp(-I * w * t);
    return {
        2.0 * ((nb * d + q11) * conj(pm) + nb * E * d * pm - exp(-0.5 * pm * t) * (q11 * conj(pm) + 2.0 * gam * nb * d))
            / (den * Pm),
        2.0 * ((nb * d - q22) * conj(pp) + nb * E * d * pp + exp(-0.5 * pp * t) * (q22 * conj(pp) - 2.0 * gam * nb * d))
            / (den * Pp),
        2.0 * rot
            * ((nb * d + q11) * E * conj(pm) + (1.0 + nb) * d * pm
               + exp(-0.5 * conj(pm) * t) * (q22 * pm - 2.0 * gam * nb * d - 2.0 * gam * q11))
            / (den * Pm),
        2.0 * rot
            * ((nb * d - q22) * E * conj(pp) + (1.0 + nb) * d * pp
               - exp(-0.5 * conj(pp) * t) * (q11 * pp + 2.0 * gam * nb * d - 2.0 * gam * q22))
            / (den * Pp)};
}

Eigen::Matrix2cd first_order_thermal_coeffs(double t, const PhysicalParams& p, const QubitMatrix& q)
{
    require_damping(p);
    using std::conj;
    using std::exp;
    const double nb = derive(p).nbar, gam = p.gamma, w = p.omega, W = p.Omega;
    const cplx pp(gam, 2.0 * (w + W)), pm(gam, 2.0 * (w - W));
    const cplx d = q.q11 - q.q22;
    const cplx sp = 1.0 - exp(-0.5 * pp * t);
    const cplx sm = 1.0 - exp(-0.5 * conj(pm) * t);
    Eigen::Matrix2cd M;
    M(0, 0) = 2.0 * q.q12 * nb * exp(-I * w * t) * sm / ((1.0 + nb) * conj(pm)) - 2.0 * q.q21 * exp(I * w * t) * sp / pp;
    M(0, 1) = 2.0 * sp * (nb * d - q.q22) / ((1.0 + nb) * pp);
    M(1, 0) = -2.0 * sm * (nb * d + q.q11) / ((1.0 + nb) * conj(pm));
    M(1, 1) = 2.0 * q.q21 * nb * exp(I * w * t) * sp / ((1.0 + nb) * pp) - 2.0 * q.q12 * exp(-I * w * t) * sm / conj(pm);
    return M;
}

FirstOrderCoeffs first_order_coeffs(double t, const PhysicalParams& p, const QubitMatrix& q)
{
    FirstOrderCoeffs c;
    c.xA = first_order_xA(t, p, p.omega);
    c.xB = first_order_xB(t, p, p.omega, q.q11, q.q22);
    c.M = first_order_thermal_coeffs(t, p, q);
    return c;
}

BlockKernels zeroth_order_kernels(double t, const PhysicalParams& p, const QubitMatrix& q)
{
    if (t < 0.0) throw std::invalid_argument("kernels require t >= 0");
    const PolyGaussianKernel G = gaussian_G(t, p.Omega, p.gamma, derive(p).nbar);
    BlockKernels out;
    const cplx pref[4] = {q.q11, q.q12 * std::exp(-I * p.omega * t), q.q21 * std::exp(I * p.omega * t), q.q22};
    for (int i = 0; i < 4; ++i) {
        out.k[i] = G;
        out.k[i].Z *= pref[i];
    }
    return out;
}

BlockKernels first_order_kernels(double t, const PhysicalParams& p, const QubitMatrix& q)
{
    if (t < 0.0) throw std::invalid_argument("kernels require t >= 0");
    require_damping(p);
    const PolyGaussianKernel G = gaussian_G(t, p.Omega, p.gamma, derive(p).nbar);
    BlockKernels out;
    out.k[0] = linear_kernel(G, mix(q.q12, q.q21, first_order_xA(t, p, p.omega)));
    out.k[1] = linear_kernel(G, first_order_xB(t, p, p.omega, q.q11, q.q22));
    out.k[2] = linear_kernel(G, first_order_xB(t, p, -p.omega, q.q22, q.q11));
    out.k[3] = linear_kernel(G, mix(q.q21, q.q12, first_order_xA(t, p, -p.omega)));
    return out;
}

std::array<BargmannFunction, 4> FirstOrderThermal::blocks(double g) const
{
    std::array<BargmannFunction, 4> out;
    for (int i = 0; i < 4; ++i) out[i] = zeroth[i] + cplx(g) * first[i];
    return out;
}

FirstOrderThermal first_order_thermal(double t, const PhysicalParams& p, const QubitMatrix& q)
{
    require_hermitian(q);
    const double nb = derive(p).nbar;
    FirstOrderThermal s;
    s.t = t;
    s.M = first_order_thermal_coeffs(t, p, q);
    const BargmannFunction th = BargmannFunction::thermal(nb);
    const cplx pref[4] = {q.q11, q.q12 * std::exp(-I * p.omega * t), q.q21 * std::exp(I * p.omega * t), q.q22};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const int b = 2 * i + j;
            s.zeroth[b] = pref[b] * th;
            BargmannFunction f;
            f.c = th.c;
            f.poly[{0, 0}] = 0.0;
            f.poly[{1, 0}] = I * s.M(i, j) / (1.0 + nb);
            f.poly[{0, 1}] = -I * std::conj(s.M(j, i)) / (1.0 + nb);
            s.first[b] = f;
        }
    return s;
}

TimeSeries exp_sigma_minus_adag(const std::vector<double>& ts, const PhysicalParams& p, const QubitMatrix& q)
{
    require_hermitian(q);
    const double nb = derive(p).nbar;
    TimeSeries out;
    out.label = "sigma_minus_adag";
    for (double t : ts) {
        const Eigen::Matrix2cd M = first_order_thermal_coeffs(t, p, q);
        // Tr_b[a^dag f_eg] with Tr[a^dag a^dag rho_th] = 0 and Tr[a a^dag rho_th] = 1 + nbar
        out.push(t, -I * p.g * (1.0 + nb) * std::conj(M(1, 0)));
    }
    return out;
}

double multiscale_rate(const PhysicalParams& p)
{
    require_damping(p);
    const double nb = derive(p).nbar, gam = p.gamma, w = p.omega, W = p.Omega;
    const double Pp = gam * gam + 4.0 * (w + W) * (w + W);
    const double Pm = gam * gam + 4.0 * (w - W) * (w - W);
    const double S = gam * gam + 4.0 * (w * w + W * W);
    return 8.0 * gam * (2.0 * nb + 1.0) * S / (Pp * Pm);
}

MultiscaleState multiscale_Q(double tau, const PhysicalParams& p, const QubitMatrix& q)
{
    require_damping(p);
    const double nb = derive(p).nbar, gam = p.gamma, w = p.omega, W = p.Omega;
    const double Pp = gam * gam + 4.0 * (w + W) * (w + W);
    const double Pm = gam * gam + 4.0 * (w - W) * (w - W);
    const double S = gam * gam + 4.0 * (w * w + W * W);
    const double k = 2.0 * nb + 1.0;
    const double r = multiscale_rate(p);

    MultiscaleState m;
    m.tau = tau;
    const cplx stat = (Pm * k + 16.0 * nb * w * W) / (2.0 * k * S);
    const cplx trans = ((Pp * k - 16.0 * nb * w * W) * q.q11 - (Pm * k + 16.0 * nb * w * W) * q.q22) / (2.0 * k * S);
    m.Q11 = trans * std::exp(-r * tau) + stat;
    m.Q22 = 1.0 - m.Q11;
    const cplx a(gam, -2.0 * w);
    m.Q12 = q.q12 * std::exp(-4.0 * k * a / (4.0 * W * W + a * a) * tau);
    m.Q21 = std::conj(m.Q12);
    return m;
}

double sigma_z_composite(double t, const PhysicalParams& p, const QubitMatrix& q)
{
    const double nb = derive(p).nbar;
    const MultiscaleState m = multiscale_Q(p.g * p.g * t, p, q);
    const double Q11 = m.Q11.real(), Q22 = m.Q22.real();
    const auto x11 = second_order_diag_terms(p, p.omega, Q11, Q22, false);
    const auto x22 = second_order_diag_terms(p, -p.omega, Q22, Q11, false);
    auto sum = [t](const std::vector<Term>& v) {
        cplx s = 0.0;
        for (const auto& term : v) s += term(t);
        return s;
    };
    const cplx corr = sum(x11[P00]) - sum(x22[P00]) + (1.0 + nb) * (sum(x11[P11]) - sum(x22[P11]));
    return (m.Q11 - m.Q22 + p.g * p.g * corr).real();
}

double sigma_z_secular(double t, const PhysicalParams& p, const QubitMatrix& q)
{
    const SecondOrderCoeffs c = second_order_coeffs(t, p, q, true);
    return (q.q11 - q.q22 + p.g * p.g * (c.traced(0) - c.traced(3))).real();
}

SigmaZCurves exp_sigma_z_multiscale(const std::vector<double>& ts, const PhysicalParams& p, const QubitMatrix& q)
{
    SigmaZCurves c;
    for (double t : ts) {
        c.t.push_back(t);
        const MultiscaleState m = multiscale_Q(p.g * p.g * t, p, q);
        c.zeroth_ms.push_back((m.Q11 - m.Q22).real());
        c.composite.push_back(sigma_z_composite(t, p, q));
        c.secular.push_back(sigma_z_secular(t, p, q));
    }
    return c;
}

double steady_sigma_z(const PhysicalParams& p, Model model, SteadyOrder order)
{
    const double nb = derive(p).nbar, gam = p.gamma, w = p.omega, W = p.Omega;
    if (model == Model::JC) {
        if (order == SteadyOrder::SecondCorrected)
            throw std::invalid_argument("no second-order steady state is available for the JC model");
        return -1.0 / (1.0 + 2.0 * nb);
    }
    if (model != Model::Rabi) throw std::invalid_argument("steady state formulas exist for the Rabi and JC models only");
    const double S = gam * gam + 4.0 * (w * w + W * W);
    double v = -8.0 * w * W / ((1.0 + 2.0 * nb) * S);
    if (order == SteadyOrder::SecondCorrected) {
        const double PpPm = std::pow(gam, 4) + 8.0 * gam * gam * (w * w + W * W) + 16.0 * std::pow(w * w - W * W, 2);
        v += p.g * p.g * 256.0 * gam * gam * w * W / (S * PpPm);
    }
    return v;
}

}  // namespace openqb
