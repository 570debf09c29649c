#include "residuals.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace openqb::verify {

namespace {

constexpr double c1 = 8.0 / 12.0, c2 = -1.0 / 12.0;

// e F + (left) z Fz - (right) zs Fs under -i, plus the two dissipators
cplx free_generator(const Derivs& d, cplx z, cplx zs, double energy, double left, double right, double gamma,
                    double nbar)
{
    const cplx ham = -I * (energy * d.f + left * z * d.fz - right * zs * d.fs);
    const cplx num = 0.5 * (z * d.fz + zs * d.fs);
    const cplx down = d.fzs - num;
    const cplx up = z * zs * d.f - d.f - num;
    return ham + gamma * (1.0 + nbar) * down + gamma * nbar * up;
}

// -i [(a + a^dag) rho_{i'j} - rho_{ij'} (a + a^dag)]
cplx coupling(const Derivs& flip_left, const Derivs& flip_right, cplx z, cplx zs)
{
    return -I * ((flip_left.fz + z * flip_left.f) - (zs * flip_right.f + flip_right.fs));
}

double relative(cplx lhs, cplx rhs)
{
    return std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
}

int flip_left(int b)
{
    return b ^ 2;
}
int flip_right(int b)
{
    return b ^ 1;
}

}  // namespace

Derivs derivs(const std::function<cplx(cplx, cplx)>& F, cplx z, cplx zs, double h)
{
    const int off[4] = {1, 2, -1, -2};
    const double w[4] = {c1, c2, -c1, -c2};
    Derivs d;
    d.f = F(z, zs);
    d.fz = d.fs = d.fzs = 0.0;
    for (int i = 0; i < 4; ++i) {
        d.fz += w[i] * F(z + off[i] * h, zs);
        d.fs += w[i] * F(z, zs + off[i] * h);
        for (int j = 0; j < 4; ++j) d.fzs += w[i] * w[j] * F(z + off[i] * h, zs + off[j] * h);
    }
    d.fz /= h;
    d.fs /= h;
    d.fzs /= h * h;
    return d;
}

cplx time_derivative(const std::function<cplx(double)>& F, double t, double h)
{
    return (c1 * (F(t + h) - F(t - h)) + c2 * (F(t + 2 * h) - F(t - 2 * h))) / h;
}

double jc_kernel_residual(const PhysicalParams& p, const QubitMatrix& q, double t, cplx z, cplx zs, cplx w, cplx v)
{
    const DerivedParams d = derive(p);
    const double nb = d.nbar;
    const double E[2] = {0.5 * d.omega_prime, -0.5 * d.omega_prime};
    const double B[2] = {p.Omega + d.g_lambda, p.Omega - d.g_lambda};
    const BlockKernels ks = jc_kernels(t, p, q);
    double worst = 0.0;
    for (int b = 0; b < 4; ++b) {
        const int i = b / 2, j = b % 2;
        const auto Fz = [&](cplx a, cplx s) { return ks.k[b](a, s, w, v); };
        const auto Ft = [&](double tt) { return jc_kernels(tt, p, q).k[b](z, zs, w, v); };
        const Derivs dd = derivs(Fz, z, zs);
        const cplx rhs = free_generator(dd, z, zs, E[i] - E[j], B[i], B[j], p.gamma, nb);
        worst = std::max(worst, relative(time_derivative(Ft, t), rhs));
    }
    return worst;
}

double rabi_first_order_residual(const PhysicalParams& p, const QubitMatrix& q, double t, cplx z, cplx zs, cplx w,
                                 cplx v)
{
    const double nb = derive(p).nbar;
    const double E[2] = {0.5 * p.omega, -0.5 * p.omega};
    const BlockKernels k0 = zeroth_order_kernels(t, p, q);
    const BlockKernels k1 = first_order_kernels(t, p, q);
    double worst = 0.0;
    for (int b = 0; b < 4; ++b) {
        const int i = b / 2, j = b % 2;
        auto at = [&](const BlockKernels& ks, int blk) {
            return [&ks, blk, w, v](cplx a, cplx s) { return ks.k[blk](a, s, w, v); };
        };
        const auto Ft = [&](double tt) { return first_order_kernels(tt, p, q).k[b](z, zs, w, v); };
        const Derivs d1 = derivs(at(k1, b), z, zs);
        const cplx rhs = free_generator(d1, z, zs, E[i] - E[j], p.Omega, p.Omega, p.gamma, nb)
                         + coupling(derivs(at(k0, flip_left(b)), z, zs), derivs(at(k0, flip_right(b)), z, zs), z, zs);
        worst = std::max(worst, relative(time_derivative(Ft, t), rhs));
    }
    return worst;
}

double rabi_second_order_residual(const PhysicalParams& p, const QubitMatrix& q, const SecondOrderTable& table, double t,
                                  cplx z, cplx zs)
{
    const double nb = derive(p).nbar;
    const double E[2] = {0.5 * p.omega, -0.5 * p.omega};
    auto second = [&](double tt) {
        SecondOrderCoeffs c;
        c.t = tt;
        c.nbar_plus_one = 1.0 + nb;
        c.x = table.evaluate(tt);
        return second_order_blocks(c, nb);
    };
    const auto f1 = first_order_thermal(t, p, q).first;
    const auto f2 = second(t);
    double worst = 0.0;
    for (int b = 0; b < 4; ++b) {
        const int i = b / 2, j = b % 2;
        auto fn = [](const BargmannFunction& f) { return [&f](cplx a, cplx s) { return f(a, s); }; };
        const auto Ft = [&](double tt) { return second(tt)[b](z, zs); };
        const Derivs d2 = derivs(fn(f2[b]), z, zs);
        const cplx rhs = free_generator(d2, z, zs, E[i] - E[j], p.Omega, p.Omega, p.gamma, nb)
                         + coupling(derivs(fn(f1[flip_left(b)]), z, zs), derivs(fn(f1[flip_right(b)]), z, zs), z, zs);
        worst = std::max(worst, relative(time_derivative(Ft, t), rhs));
    }
    return worst;
}

}  // namespace openqb::verify
