#include "openqb/jc_dispersive.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace openqb {

namespace {

void require_dispersive(const DerivedParams& d)
{
    if (!d.lambda) throw std::domain_error("dispersive model undefined at zero detuning");
}

// (1 - e^{-x t}) / x, finite as x -> 0
cplx one_minus_exp_over(cplx x, double t)
{
    const cplx y = x * t;
    if (std::abs(y) < 1e-4) return t * (1.0 - y / 2.0 + y * y / 6.0 - y * y * y / 24.0);
    return (1.0 - std::exp(-y)) / x;
}

// A block (sign = +1) or D block (sign = -1), with prefactor 1
PolyGaussianKernel kernel_diag(double t, const PhysicalParams& p, const DerivedParams& d, double sign)
{
    const double nb = d.nbar, gam = p.gamma;
    const double E = std::exp(-gam * t);
    const double den = 2.0 + 2.0 * nb * (1.0 - E);
    const double rot = (p.Omega + sign * d.g_lambda) * t;
    PolyGaussianKernel k;
    k.Z = 1.0 / (1.0 + nb * (1.0 - E));
    k.H(0, 1) = k.H(1, 0) = nb * (1.0 - E) / den;
    k.H(0, 2) = k.H(2, 0) = std::exp(-gam * t / 2.0) * std::exp(-I * rot) / den;
    k.H(1, 3) = k.H(3, 1) = std::exp(-gam * t / 2.0) * std::exp(I * rot) / den;
    k.H(2, 3) = k.H(3, 2) = (nb + 1.0) * (1.0 - E) / den;
    return k;
}

// B block with prefactor 1. C1 (C1 - 1) = gamma^2 nbar (nbar + 1) / theta2^2 and
// C1 = kappa / theta2 + 1/2 with kappa = gamma (nbar + 1/2) + i g lambda, which keeps
// every entry finite when theta2 -> 0.
PolyGaussianKernel kernel_offdiag(double t, const PhysicalParams& p, const DerivedParams& d)
{
    const KernelCoeffs kc = theta2_of(p);
    const double nb = d.nbar, gam = p.gamma;
    const cplx th2 = kc.theta2;
    const cplx kappa(gam * (nb + 0.5), d.g_lambda);
    const cplx e = std::exp(-th2 * t);
    const cplx e1 = one_minus_exp_over(th2, t);
    const cplx half = e + kappa * e1 + 0.5 * (1.0 - e);  // e + C1 (1 - e)
    const cplx den = 2.0 * half;
    PolyGaussianKernel k;
    k.Z = std::exp((kc.theta1 - th2) * t / 2.0) / half;
    k.H(0, 1) = k.H(1, 0) = gam * nb * e1 / den;
    k.H(0, 2) = k.H(2, 0) = std::exp(-I * p.Omega * t) * std::exp(-th2 * t / 2.0) / den;
    k.H(1, 3) = k.H(3, 1) = std::exp(I * p.Omega * t) * std::exp(-th2 * t / 2.0) / den;
    k.H(2, 3) = k.H(3, 2) = gam * (nb + 1.0) * e1 / den;
    return k;
}

}  // namespace

cplx theta2_from(double gamma, double g_lambda, double nbar)
{
    // + 0.0 turns a negative zero into +0 so the lossless limit takes the +i branch
    const cplx arg(gamma * gamma - 4.0 * g_lambda * g_lambda, 4.0 * gamma * (1.0 + 2.0 * nbar) * g_lambda + 0.0);
    cplx th = std::sqrt(arg);
    if (th.real() < 0.0) th = -th;
    return th;
}

KernelCoeffs theta2_of(const PhysicalParams& p)
{
    const DerivedParams d = derive(p);
    KernelCoeffs k;
    k.theta1 = cplx(p.gamma, -2.0 * (d.omega_prime - d.g_lambda));
    k.theta2 = theta2_from(p.gamma, d.g_lambda, d.nbar);
    if (k.theta2.real() < p.gamma * (1.0 - 1e-12) - 1e-300)
        throw std::logic_error("Re(theta2) < gamma: branch selection failed");
    if (k.theta2 != 0.0)
        k.c1 = (p.gamma * d.nbar + I * d.omega_prime) / k.theta2 + k.theta1 / (2.0 * k.theta2) + 0.5;
    else
        k.c1 = cplx(std::numeric_limits<double>::quiet_NaN(), 0.0);
    return k;
}

BlockKernels jc_kernels(double t, const PhysicalParams& p, const QubitMatrix& q)
{
    if (t < 0.0) throw std::invalid_argument("kernels require t >= 0");
    const DerivedParams d = derive(p);
    require_dispersive(d);

    BlockKernels out;
    out.k[0] = kernel_diag(t, p, d, +1.0);
    out.k[0].Z *= q.q11;
    out.k[3] = kernel_diag(t, p, d, -1.0);
    out.k[3].Z *= q.q22;

    const PolyGaussianKernel b = kernel_offdiag(t, p, d);
    out.k[1] = b;
    out.k[1].Z *= q.q12;

    // C is the complex conjugate of B: z <-> z*, w <-> v
    static const int perm[4] = {1, 0, 3, 2};
    PolyGaussianKernel c;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) c.H(i, j) = std::conj(b.H(perm[i], perm[j]));
    c.Z = q.q21 * std::conj(b.Z);
    out.k[2] = c;
    return out;
}

QubitMatrix jc_qubit_thermal(double t, const PhysicalParams& p, const QubitMatrix& q)
{
    const DerivedParams d = derive(p);
    const BlockKernels ks = jc_kernels(t, p, q);
    const double nb = d.nbar;
    auto reduce = [nb](const PolyGaussianKernel& k) {
        const auto& H = k.H;
        return k.Z / ((1.0 + nb - 2.0 * nb * H(2, 3)) * (1.0 - 2.0 * H(0, 1)) - 4.0 * nb * H(0, 2) * H(1, 3));
    };
    return {reduce(ks.k[0]), reduce(ks.k[1]), reduce(ks.k[2]), reduce(ks.k[3])};
}

QubitMatrix jc_qubit_coherent(double t, const PhysicalParams& p, const QubitMatrix& q, cplx alpha)
{
    const BlockKernels ks = jc_kernels(t, p, q);
    const double a2 = std::norm(alpha);
    auto reduce = [a2](const PolyGaussianKernel& k) {
        const auto& H = k.H;
        const cplx dd = 1.0 - 2.0 * H(0, 1);
        return k.Z / dd * std::exp(-a2 * (1.0 - 2.0 * H(2, 3) - 4.0 * H(0, 2) * H(1, 3) / dd));
    };
    return {reduce(ks.k[0]), reduce(ks.k[1]), reduce(ks.k[2]), reduce(ks.k[3])};
}

namespace {

std::vector<BlockState> evolve_from(const std::vector<double>& ts, const PhysicalParams& p, const QubitMatrix& q,
                                    const BargmannFunction& init, bool thermal, cplx alpha)
{
    std::vector<BlockState> out;
    out.reserve(ts.size());
    for (double t : ts) {
        BlockState s;
        s.t = t;
        const BlockKernels ks = jc_kernels(t, p, q);
        for (int i = 0; i < 4; ++i) s.blocks[i] = contract_kernel(ks.k[i], init);
        s.qubit = thermal ? jc_qubit_thermal(t, p, q) : jc_qubit_coherent(t, p, q, alpha);
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace

std::vector<BlockState> evolve_thermal(const std::vector<double>& ts, const PhysicalParams& p, const QubitMatrix& q)
{
    return evolve_from(ts, p, q, BargmannFunction::thermal(derive(p).nbar), true, 0.0);
}

std::vector<BlockState> evolve_coherent(const std::vector<double>& ts, const PhysicalParams& p, const QubitMatrix& q,
                                        cplx alpha)
{
    return evolve_from(ts, p, q, BargmannFunction::coherent(alpha), false, alpha);
}

QubitMatrix reduce_qubit(const std::array<BargmannFunction, 4>& b)
{
    return {trace_bargmann(b[0]), trace_bargmann(b[1]), trace_bargmann(b[2]), trace_bargmann(b[3])};
}

Eigen::MatrixXcd joint_state(const std::array<BargmannFunction, 4>& b, int N)
{
    const int M = N + 1;
    Eigen::MatrixXcd rho(2 * M, 2 * M);
    rho.topLeftCorner(M, M) = to_fock(b[0], N);
    rho.topRightCorner(M, M) = to_fock(b[1], N);
    rho.bottomLeftCorner(M, M) = to_fock(b[2], N);
    rho.bottomRightCorner(M, M) = to_fock(b[3], N);
    return rho;
}

double photon_number(const std::array<BargmannFunction, 4>& b)
{
    return (trace_bargmann(apply_number(b[0])) + trace_bargmann(apply_number(b[3]))).real();
}

double gamma2(const PhysicalParams& p)
{
    return 0.5 * (p.gamma - theta2_of(p).theta2.real());
}

}  // namespace openqb
