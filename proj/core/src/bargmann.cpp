#include "openqb/bargmann.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace openqb {

namespace {

// sparse polynomial over an arbitrary number of variables
using Exps = std::vector<int>;
using SparsePoly = std::map<Exps, cplx>;

int total_degree(const Exps& e)
{
    int d = 0;
    for (int x : e) d += x;
    return d;
}

SparsePoly multiply(const SparsePoly& a, const SparsePoly& b)
{
    SparsePoly r;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            Exps e(ea.size());
            for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            if (total_degree(e) > 2 && ca * cb != 0.0)
                throw std::domain_error("polynomial prefactor would exceed degree 2");
            r[e] += ca * cb;
        }
    return r;
}

void load_poly(QuadGauss& q, const SparsePoly& p)
{
    q.p0 = 0.0;
    for (const auto& [e, c] : p) {
        std::vector<int> idx;
        for (size_t i = 0; i < e.size(); ++i)
            for (int k = 0; k < e[i]; ++k) idx.push_back(static_cast<int>(i));
        if (idx.empty())
            q.p0 += c;
        else if (idx.size() == 1)
            q.p1(idx[0]) += c;
        else if (idx.size() == 2) {
            q.p2(idx[0], idx[1]) += 0.5 * c;
            q.p2(idx[1], idx[0]) += 0.5 * c;
        } else
            throw std::domain_error("polynomial prefactor exceeds degree 2");
    }
}

SparsePoly embed(const Poly2& p, size_t n, int i0, int i1)
{
    SparsePoly r;
    if (p.empty()) {
        r[Exps(n, 0)] = 1.0;
        return r;
    }
    for (const auto& [m, c] : p) {
        Exps e(n, 0);
        e[i0] = m[0];
        e[i1] = m[1];
        r[e] += c;
    }
    return r;
}

SparsePoly embed(const Poly4& p, size_t n)
{
    SparsePoly r;
    if (p.empty()) {
        r[Exps(n, 0)] = 1.0;
        return r;
    }
    for (const auto& [m, c] : p) {
        Exps e(n, 0);
        for (int i = 0; i < 4; ++i) e[i] = m[i];
        r[e] += c;
    }
    return r;
}

void check_poly2(const Poly2& p)
{
    for (const auto& [m, c] : p)
        if (m[0] < 0 || m[1] < 0 || m[0] + m[1] > 2)
            throw std::domain_error("polynomial prefactor exceeds degree 2");
}

}  // namespace

PolyGaussianKernel PolyGaussianKernel::identity(cplx scale)
{
    PolyGaussianKernel k;
    k.Z = scale;
    k.H(0, 2) = k.H(2, 0) = 0.5;
    k.H(1, 3) = k.H(3, 1) = 0.5;
    return k;
}

cplx PolyGaussianKernel::operator()(cplx z, cplx zs, cplx w, cplx v) const
{
    const Eigen::Vector4cd x(z, zs, w, v);
    cplx p = poly.empty() ? cplx(1.0) : cplx(0.0);
    for (const auto& [m, c] : poly)
        p += c * std::pow(z, m[0]) * std::pow(zs, m[1]) * std::pow(w, m[2]) * std::pow(v, m[3]);
    return Z * p * std::exp((x.transpose() * H * x)(0, 0));
}

bool PolyGaussianKernel::is_symmetric(double tol) const
{
    return (H - H.transpose()).cwiseAbs().maxCoeff() <= tol;
}

BargmannFunction BargmannFunction::thermal(double nbar)
{
    BargmannFunction f;
    f.c = nbar / (1.0 + nbar);
    f.poly[{0, 0}] = 1.0 / (1.0 + nbar);
    return f;
}

BargmannFunction BargmannFunction::coherent(cplx alpha)
{
    BargmannFunction f;
    f.lz = alpha;
    f.ls = std::conj(alpha);
    f.poly[{0, 0}] = std::exp(-std::norm(alpha));
    return f;
}

cplx BargmannFunction::operator()(cplx z, cplx zs) const
{
    cplx p = poly.empty() ? cplx(1.0) : cplx(0.0);
    for (const auto& [m, k] : poly) p += k * std::pow(z, m[0]) * std::pow(zs, m[1]);
    return p * std::exp(c * z * zs + zz * z * z + ss * zs * zs + lz * z + ls * zs);
}

cplx BargmannFunction::coeff(int a, int b) const
{
    if (poly.empty()) return (a == 0 && b == 0) ? 1.0 : 0.0;
    auto it = poly.find({a, b});
    return it == poly.end() ? cplx(0.0) : it->second;
}

int BargmannFunction::degree() const
{
    int d = 0;
    for (const auto& [m, k] : poly)
        if (k != 0.0) d = std::max(d, m[0] + m[1]);
    return d;
}

bool BargmannFunction::same_exponent(const BargmannFunction& o) const
{
    return c == o.c && zz == o.zz && ss == o.ss && lz == o.lz && ls == o.ls;
}

BargmannFunction& BargmannFunction::operator*=(cplx s)
{
    if (poly.empty()) poly[{0, 0}] = 1.0;
    for (auto& [m, k] : poly) k *= s;
    return *this;
}

BargmannFunction& BargmannFunction::operator+=(const BargmannFunction& o)
{
    if (!same_exponent(o)) throw std::invalid_argument("cannot add Bargmann functions with different exponents");
    if (poly.empty()) poly[{0, 0}] = 1.0;
    if (o.poly.empty())
        poly[{0, 0}] += 1.0;
    else
        for (const auto& [m, k] : o.poly) poly[m] += k;
    return *this;
}

BargmannFunction operator*(cplx s, BargmannFunction f)
{
    f *= s;
    return f;
}

BargmannFunction operator+(BargmannFunction a, const BargmannFunction& b)
{
    a += b;
    return a;
}

cplx gaussian_moment(int n, int m)
{
    if (n < 0 || m < 0) throw std::invalid_argument("moment orders must be non-negative");
    if (n != m) return 0.0;
    if (n > 170) {
        std::ostringstream s;
        s << "gaussian_moment: " << n << "! overflows double precision";
        throw std::overflow_error(s.str());
    }
    return std::numbers::pi * std::tgamma(n + 1.0);
}

QuadGauss to_quad(const BargmannFunction& f)
{
    check_poly2(f.poly);
    QuadGauss q(2);
    q.Q(0, 0) = 2.0 * f.zz;
    q.Q(1, 1) = 2.0 * f.ss;
    q.Q(0, 1) = q.Q(1, 0) = f.c;
    q.L << f.lz, f.ls;
    load_poly(q, embed(f.poly, 2, 0, 1));
    return q;
}

BargmannFunction from_quad(const QuadGauss& q)
{
    if (q.n != 2) throw std::invalid_argument("expected a two-variable Gaussian form");
    BargmannFunction f;
    f.c = q.Q(0, 1);
    f.zz = 0.5 * q.Q(0, 0);
    f.ss = 0.5 * q.Q(1, 1);
    f.lz = q.L(0);
    f.ls = q.L(1);
    const cplx s = std::exp(q.c0);
    f.poly[{0, 0}] = s * q.p0;
    f.poly[{1, 0}] = s * q.p1(0);
    f.poly[{0, 1}] = s * q.p1(1);
    f.poly[{2, 0}] = s * q.p2(0, 0);
    f.poly[{0, 2}] = s * q.p2(1, 1);
    f.poly[{1, 1}] = s * 2.0 * q.p2(0, 1);
    return f;
}

BargmannFunction contract_kernel(const PolyGaussianKernel& kernel, const BargmannFunction& init)
{
    check_poly2(init.poly);
    // variables: z, z*, w, v, wbar, vbar
    QuadGauss q(6);
    q.Q.topLeftCorner<4, 4>() = 2.0 * kernel.H;
    q.Q(2, 4) = q.Q(4, 2) = -1.0;
    q.Q(3, 5) = q.Q(5, 3) = -1.0;
    // initial function evaluated at (wbar, vbar)
    q.Q(4, 5) = q.Q(5, 4) = init.c;
    q.Q(4, 4) = 2.0 * init.zz;
    q.Q(5, 5) = 2.0 * init.ss;
    q.L(4) = init.lz;
    q.L(5) = init.ls;

    const SparsePoly pk = embed(kernel.poly, 6);
    const SparsePoly pi = embed(init.poly, 6, 4, 5);
    load_poly(q, multiply(pk, pi));
    q.p0 *= kernel.Z;
    q.p1 *= kernel.Z;
    q.p2 *= kernel.Z;

    return from_quad(integrate_pairs(q, {{2, 4}, {3, 5}}));
}

FockMatrix to_fock(const BargmannFunction& f, int N)
{
    if (N < 0) throw std::invalid_argument("truncation N must be non-negative");
    if (std::abs(f.c) >= 1.0) throw std::domain_error("Fock expansion diverges: |c| >= 1");
    check_poly2(f.poly);

    const int M = N + 1;
    // scaled one-variable series sqrt(n!) [x^n] exp(q x^2 + l x)
    auto series = [M](cplx q, cplx l) {
        std::vector<cplx> u(M, 0.0);
        u[0] = 1.0;
        for (int n = 0; n + 1 < M; ++n) {
            cplx next = l * u[n] / std::sqrt(n + 1.0);
            if (n >= 1) next += 2.0 * q * u[n - 1] * std::sqrt(n / (n + 1.0));
            u[n + 1] = next;
        }
        return u;
    };
    const std::vector<cplx> u = series(f.zz, f.lz);
    const std::vector<cplx> v = series(f.ss, f.ls);

    // binomials for the exp(c z z*) convolution
    std::vector<std::vector<double>> binom(M, std::vector<double>(M, 0.0));
    for (int n = 0; n < M; ++n) {
        binom[n][0] = 1.0;
        for (int k = 1; k <= n; ++k) binom[n][k] = binom[n - 1][k - 1] + (k <= n - 1 ? binom[n - 1][k] : 0.0);
    }
    std::vector<cplx> cpow(M, 1.0);
    for (int k = 1; k < M; ++k) cpow[k] = cpow[k - 1] * f.c;

    FockMatrix E = FockMatrix::Zero(M, M);
    for (int n = 0; n < M; ++n)
        for (int m = 0; m < M; ++m) {
            cplx s = 0.0;
            for (int k = 0; k <= std::min(n, m); ++k)
                s += cpow[k] * std::sqrt(binom[n][k] * binom[m][k]) * u[n - k] * v[m - k];
            E(n, m) = s;
        }

    // sqrt(n!/(n-a)!)
    auto fall = [](int n, int a) {
        double r = 1.0;
        for (int i = 0; i < a; ++i) r *= n - i;
        return std::sqrt(r);
    };

    FockMatrix O = FockMatrix::Zero(M, M);
    Poly2 p = f.poly;
    if (p.empty()) p[{0, 0}] = 1.0;
    for (const auto& [mono, k] : p) {
        if (k == 0.0) continue;
        const int a = mono[0], b = mono[1];
        for (int n = a; n < M; ++n)
            for (int m = b; m < M; ++m) O(n, m) += k * fall(n, a) * fall(m, b) * E(n - a, m - b);
    }
    return O;
}

cplx trace_bargmann(const BargmannFunction& f)
{
    if (std::abs(f.c) >= 1.0) throw std::domain_error("Bargmann trace diverges: |c| >= 1");
    QuadGauss q = to_quad(f);
    q.Q(0, 1) -= 1.0;
    q.Q(1, 0) -= 1.0;
    const QuadGauss r = integrate_pairs(q, {{0, 1}});
    return r.p0 * std::exp(r.c0);
}

BargmannFunction apply_number(const BargmannFunction& f)
{
    // z dF/dz = z (dP/dz + P (c z* + 2 zz z + lz)) e^{...}
    check_poly2(f.poly);
    Poly2 p = f.poly;
    if (p.empty()) p[{0, 0}] = 1.0;
    Poly2 out;
    auto add = [&out](int a, int b, cplx k) {
        if (k == 0.0) return;
        if (a + b > 2) throw std::domain_error("number operator image exceeds degree 2");
        out[{a, b}] += k;
    };
    for (const auto& [m, k] : p) {
        const int a = m[0], b = m[1];
        if (a > 0) add(a, b, k * static_cast<double>(a));
        add(a + 1, b + 1, k * f.c);
        add(a + 2, b, 2.0 * k * f.zz);
        add(a + 1, b, k * f.lz);
    }
    BargmannFunction r = f;
    r.poly = out;
    if (r.poly.empty()) r.poly[{0, 0}] = 0.0;
    return r;
}

}  // namespace openqb
