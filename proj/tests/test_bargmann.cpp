#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "openqb/bargmann.hpp"

using namespace openqb;
using std::numbers::pi;

namespace {

// int d^2z e^{-|z|^2} z^n z*^m over a disk, polar Simpson in r, uniform in theta
cplx moment_quadrature(int n, int m, double R = 8.0)
{
    const int nr = 4000, nt = 64;
    const double hr = R / nr, ht = 2.0 * pi / nt;
    cplx acc = 0.0;
    for (int i = 0; i <= nr; ++i) {
        const double r = i * hr;
        const double w = (i == 0 || i == nr) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        cplx ang = 0.0;
        for (int j = 0; j < nt; ++j) ang += std::polar(1.0, (n - m) * j * ht);
        acc += w * std::pow(r, n + m + 1) * std::exp(-r * r) * ang * ht;
    }
    return acc * hr / 3.0;
}

// (1/pi^2) int d^2w d^2v e^{-|w|^2-|v|^2} K(z, z*, w, v) F(w*, v*) on a 4-d trapezoid grid
cplx contraction_quadrature(const PolyGaussianKernel& K, const BargmannFunction& F, cplx z, cplx zs)
{
    const double half = 6.0;
    const int n = 48;
    const double h = 2.0 * half / n;
    std::vector<cplx> pts;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) pts.emplace_back(-half + i * h, -half + j * h);
    cplx acc = 0.0;
    for (cplx w : pts) {
        const double gw = std::exp(-std::norm(w));
        if (gw < 1e-18) continue;
        for (cplx v : pts) {
            const double g = gw * std::exp(-std::norm(v));
            if (g < 1e-18) continue;
            acc += g * K(z, zs, w, v) * F(std::conj(w), std::conj(v));
        }
    }
    return acc * std::pow(h, 4) / (pi * pi);
}

PolyGaussianKernel random_kernel(int degree)
{
    PolyGaussianKernel k = PolyGaussianKernel::identity(testing::cuniform(1.0));
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
            const cplx d = testing::cuniform(0.12);
            k.H(i, j) += d;
            if (i != j) k.H(j, i) += d;
        }
    if (degree >= 1) {
        k.poly[{0, 0, 0, 0}] = testing::cuniform(1.0);
        k.poly[{1, 0, 0, 0}] = testing::cuniform(1.0);
        k.poly[{0, 0, 1, 0}] = testing::cuniform(1.0);
        k.poly[{0, 0, 0, 1}] = testing::cuniform(1.0);
    }
    if (degree >= 2) {
        k.poly[{0, 0, 1, 1}] = testing::cuniform(1.0);
        k.poly[{1, 1, 0, 0}] = testing::cuniform(1.0);
    }
    return k;
}

double max_abs(const FockMatrix& m)
{
    return m.cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("gaussian moments")
{
    CHECK(gaussian_moment(0, 0) == cplx(pi));
    CHECK(gaussian_moment(1, 2) == cplx(0.0));
    CHECK(std::abs(gaussian_moment(3, 3) - 6.0 * pi) < 1e-12);
    CHECK(std::abs(moment_quadrature(3, 3) - gaussian_moment(3, 3)) < 1e-6);
    CHECK(std::abs(moment_quadrature(2, 2) - gaussian_moment(2, 2)) < 1e-6);
    CHECK(std::abs(moment_quadrature(1, 2)) < 1e-6);
    CHECK_THROWS_AS(gaussian_moment(171, 171), std::overflow_error);
    CHECK_THROWS_AS(gaussian_moment(-1, 0), std::invalid_argument);
}

TEST_CASE("property: off-diagonal moments vanish")
{
    for (int n = 0; n <= 20; ++n)
        for (int m = 0; m <= 20; ++m)
            if (n != m) REQUIRE(gaussian_moment(n, m) == cplx(0.0));
}

TEST_CASE("identity kernel leaves states unchanged")
{
    const PolyGaussianKernel id = PolyGaussianKernel::identity();
    CHECK(id.is_symmetric());
    for (const BargmannFunction& f : {BargmannFunction::thermal(0.7), BargmannFunction::coherent({0.6, -0.3})}) {
        const BargmannFunction r = contract_kernel(id, f);
        for (cplx z : {cplx(0.0), cplx(0.4, 0.1), cplx(-0.9, 0.7)})
            CHECK(std::abs(r(z, std::conj(z)) - f(z, std::conj(z))) < 1e-13);
    }
}

TEST_CASE("contraction agrees with direct four-dimensional quadrature")
{
    const BargmannFunction th = BargmannFunction::thermal(0.4);
    BargmannFunction lin = BargmannFunction::thermal(0.3);
    lin.poly[{1, 0}] = cplx(0.2, 0.1);
    lin.poly[{0, 1}] = cplx(-0.1, 0.3);
    const BargmannFunction coh = BargmannFunction::coherent({0.5, 0.2});

    struct Case {
        int kdeg;
        BargmannFunction f;
    };
    for (const Case& c : {Case{0, coh}, Case{1, lin}, Case{2, th}}) {
        const PolyGaussianKernel K = random_kernel(c.kdeg);
        const BargmannFunction r = contract_kernel(K, c.f);
        const cplx z(0.3, -0.2);
        const cplx exact = r(z, std::conj(z)), quad = contraction_quadrature(K, c.f, z, std::conj(z));
        CHECK(std::abs(exact - quad) < 1e-9 * std::max(1.0, std::abs(quad)));
    }
}

TEST_CASE("property: contraction is linear in kernel and state")
{
    for (int rep = 0; rep < 20; ++rep) {
        PolyGaussianKernel k1 = random_kernel(1), k2 = k1;
        k2.Z = testing::cuniform(1.0);
        k2.poly.clear();
        k2.poly[{0, 1, 0, 0}] = testing::cuniform(1.0);
        k2.poly[{0, 0, 0, 0}] = testing::cuniform(1.0);
        PolyGaussianKernel sum = k1;
        sum.Z = 1.0;
        sum.poly.clear();
        for (const auto& [m, c] : k1.poly) sum.poly[m] += k1.Z * c;
        for (const auto& [m, c] : k2.poly) sum.poly[m] += k2.Z * c;

        BargmannFunction f1 = BargmannFunction::thermal(0.5), f2 = f1;
        f2.poly[{0, 1}] = testing::cuniform(1.0);
        const cplx a = testing::cuniform(1.0);
        BargmannFunction comb = a * f1;
        comb += f2;

        const cplx z = testing::cuniform(0.8), zs = std::conj(z);
        const cplx lhs_k = contract_kernel(sum, f1)(z, zs);
        const cplx rhs_k = contract_kernel(k1, f1)(z, zs) + contract_kernel(k2, f1)(z, zs);
        REQUIRE(std::abs(lhs_k - rhs_k) < 1e-12 * std::max(1.0, std::abs(lhs_k)));
        const cplx lhs_f = contract_kernel(k1, comb)(z, zs);
        const cplx rhs_f = a * contract_kernel(k1, f1)(z, zs) + contract_kernel(k1, f2)(z, zs);
        REQUIRE(std::abs(lhs_f - rhs_f) < 1e-12 * std::max(1.0, std::abs(lhs_f)));
    }
}

TEST_CASE("polynomial degree above two is rejected")
{
    PolyGaussianKernel k = PolyGaussianKernel::identity();
    k.poly[{0, 0, 1, 0}] = 1.0;
    BargmannFunction f = BargmannFunction::thermal(0.2);
    f.poly[{1, 1}] = 1.0;
    CHECK_THROWS_AS(contract_kernel(k, f), std::domain_error);
    f.poly.clear();
    f.poly[{2, 1}] = 1.0;
    CHECK_THROWS_AS(to_fock(f, 3), std::domain_error);
}

TEST_CASE("non-convergent contraction is reported")
{
    PolyGaussianKernel k = PolyGaussianKernel::identity();
    k.H(2, 2) = 2.0;  // exp(2 w^2) overwhelms the measure along one direction
    CHECK_THROWS_AS(contract_kernel(k, BargmannFunction::thermal(0.1)), std::domain_error);
}

TEST_CASE("thermal function maps to the Bose-Einstein diagonal")
{
    const double nbar = 0.8;
    const FockMatrix O = to_fock(BargmannFunction::thermal(nbar), 15);
    for (int n = 0; n <= 15; ++n) {
        CHECK(std::abs(O(n, n) - std::pow(nbar, n) / std::pow(1.0 + nbar, n + 1)) < 1e-15);
        CHECK(O(n, n).real() > 0.0);
    }
    CHECK(max_abs(O - FockMatrix(O.diagonal().asDiagonal())) == 0.0);
}

TEST_CASE("z maps to a^dag acting on the vacuum")
{
    BargmannFunction f;
    f.poly[{1, 0}] = 1.0;
    const FockMatrix O = to_fock(f, 4);
    FockMatrix ref = FockMatrix::Zero(5, 5);
    ref(1, 0) = 1.0;
    CHECK(max_abs(O - ref) < 1e-15);
}

TEST_CASE("Fock coefficients re-expand to the original function")
{
    for (int rep = 0; rep < 10; ++rep) {
        BargmannFunction f;
        f.c = testing::cuniform(0.3);
        for (Monomial2 m : {Monomial2{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 0}, {0, 2}}) f.poly[m] = testing::cuniform(1.0);
        const int N = 12;
        const FockMatrix O = to_fock(f, N);
        for (int k = 0; k < 4; ++k) {
            const cplx z = testing::cuniform(0.15), zs = std::conj(z);
            cplx s = 0.0;
            for (int n = 0; n <= N; ++n)
                for (int m = 0; m <= N; ++m)
                    s += O(n, m) * std::pow(z, n) * std::pow(zs, m) / std::sqrt(std::tgamma(n + 1.0) * std::tgamma(m + 1.0));
            REQUIRE(std::abs(s - f(z, zs)) < 1e-12);
        }
    }
}

TEST_CASE("coherent function maps to the projector")
{
    const cplx alpha(0.7, -0.4);
    const int N = 25;
    const FockMatrix O = to_fock(BargmannFunction::coherent(alpha), N);
    Eigen::VectorXcd v(N + 1);
    for (int n = 0; n <= N; ++n) v(n) = std::exp(-0.5 * std::norm(alpha)) * std::pow(alpha, n) / std::sqrt(std::tgamma(n + 1.0));
    CHECK(max_abs(O - v * v.adjoint()) < 1e-14);
}

TEST_CASE("divergent Fock and trace inputs are rejected")
{
    BargmannFunction f;
    f.c = 1.0;
    CHECK_THROWS_AS(to_fock(f, 3), std::domain_error);
    CHECK_THROWS_AS(trace_bargmann(f), std::domain_error);
}

TEST_CASE("traces")
{
    CHECK(std::abs(trace_bargmann(BargmannFunction::thermal(1.7)) - 1.0) < 1e-14);
    CHECK(std::abs(trace_bargmann(BargmannFunction::coherent({1.2, 0.5})) - 1.0) < 1e-13);

    // z z* e^{c z z*}: diagonal Fock entries n c^{n-1}
    const double c = 0.35;
    BargmannFunction f;
    f.c = c;
    f.poly[{1, 1}] = 1.0;
    double partial = 0.0;
    for (int n = 1; n < 200; ++n) partial += n * std::pow(c, n - 1);
    CHECK(std::abs(trace_bargmann(f) - partial) < 1e-14);

    BargmannFunction odd;
    odd.c = c;
    odd.poly[{1, 0}] = 1.0;
    CHECK(std::abs(trace_bargmann(odd)) < 1e-15);
}

TEST_CASE("thermal truncation error is the geometric tail")
{
    const double nbar = 1.3, c = nbar / (1.0 + nbar);
    for (int N : {0, 3, 10, 30}) {
        const FockMatrix O = to_fock(BargmannFunction::thermal(nbar), N);
        CHECK(std::abs(1.0 - O.trace().real() - std::pow(c, N + 1)) < 1e-14);
    }
}

TEST_CASE("property: Bargmann trace equals the truncated Fock trace plus a small tail")
{
    for (int rep = 0; rep < 20; ++rep) {
        BargmannFunction f;
        f.c = testing::uniform(0.0, 0.4);
        for (Monomial2 m : {Monomial2{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 0}, {0, 2}}) f.poly[m] = testing::cuniform(1.0);
        const cplx tr = trace_bargmann(f);
        const cplx ft = to_fock(f, 30).trace();
        // the tail is bounded by a polynomial times c^{N-1}
        REQUIRE(std::abs(tr - ft) < 1e3 * std::pow(std::abs(f.c), 29) + 1e-13);
    }
}

TEST_CASE("number operator image matches the Fock diagonal")
{
    BargmannFunction f = BargmannFunction::thermal(0.6);
    f.lz = cplx(0.2, 0.1);
    f.ls = cplx(-0.3, 0.05);
    const int N = 20;
    const FockMatrix lhs = to_fock(apply_number(f), N);
    Eigen::VectorXcd n(N + 1);
    for (int k = 0; k <= N; ++k) n(k) = k;
    const FockMatrix rhs = n.asDiagonal() * to_fock(f, N);
    CHECK(max_abs(lhs - rhs) < 1e-13);
    // thermal mean occupation through the same route
    CHECK(std::abs(trace_bargmann(apply_number(BargmannFunction::thermal(0.6))) - 0.6) < 1e-14);
}

TEST_CASE("Gaussian form conversion round trip")
{
    BargmannFunction f = BargmannFunction::coherent({0.3, 0.9});
    f.c = 0.2;
    f.poly[{1, 1}] = 0.5;
    f.poly[{0, 2}] = cplx(0.0, 0.3);
    const BargmannFunction g = from_quad(to_quad(f));
    for (cplx z : {cplx(0.1, 0.2), cplx(-0.5, 0.4)})
        CHECK(std::abs(g(z, std::conj(z)) - f(z, std::conj(z))) < 1e-14);
}
