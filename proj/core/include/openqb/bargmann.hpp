#pragma once

#include <Eigen/Dense>
#include <array>
#include <map>

#include "openqb/gaussian_integral.hpp"
#include "openqb/params.hpp"

namespace openqb {

// Monomial exponents over (z, z*, w, v).
using Monomial4 = std::array<int, 4>;
using Poly4 = std::map<Monomial4, cplx>;
// Monomial exponents over (z, z*).
using Monomial2 = std::array<int, 2>;
using Poly2 = std::map<Monomial2, cplx>;

// Z * P(z, z*, w, v) * exp(x^T H x), x = (z, z*, w, v).
// H is symmetric, so an off-diagonal pair contributes 2 H_ij x_i x_j.
// An empty poly means P = 1.
struct PolyGaussianKernel {
    cplx Z{1.0};
    Eigen::Matrix4cd H = Eigen::Matrix4cd::Zero();
    Poly4 poly;

    // exp(z w + z* v)
    static PolyGaussianKernel identity(cplx scale = 1.0);

    cplx operator()(cplx z, cplx zs, cplx w, cplx v) const;
    bool is_symmetric(double tol = 0.0) const;
};

// P(z, z*) * exp(c z z* + zz z^2 + ss z*^2 + lz z + ls z*).
// The terms beyond c z z* cover coherent states; they are zero for thermal input.
struct BargmannFunction {
    cplx c{0.0};
    Poly2 poly;
    cplx zz{0.0}, ss{0.0}, lz{0.0}, ls{0.0};

    static BargmannFunction thermal(double nbar);
    static BargmannFunction coherent(cplx alpha);

    cplx operator()(cplx z, cplx zs) const;
    // coefficient of z^a z*^b in P (1 for the constant term of an empty poly)
    cplx coeff(int a, int b) const;
    int degree() const;
    bool same_exponent(const BargmannFunction& o) const;

    BargmannFunction& operator*=(cplx s);
    // sums polynomials; exponents must agree
    BargmannFunction& operator+=(const BargmannFunction& o);
};

BargmannFunction operator*(cplx s, BargmannFunction f);
BargmannFunction operator+(BargmannFunction a, const BargmannFunction& b);

using FockMatrix = Eigen::MatrixXcd;

// int d^2z e^{-|z|^2} z^n z*^m = pi n! delta_nm
cplx gaussian_moment(int n, int m);

// (1/pi^2) int d^2w d^2v e^{-|w|^2-|v|^2} K(z, z*, w, v) F(w*, v*)
BargmannFunction contract_kernel(const PolyGaussianKernel& kernel, const BargmannFunction& init);

// O_nm = sqrt(n! m!) [z^n z*^m] F for n, m <= N
FockMatrix to_fock(const BargmannFunction& f, int N);

// (1/pi) int d^2z e^{-|z|^2} F(z, z*)
cplx trace_bargmann(const BargmannFunction& f);

// z d/dz F, the image of a^dag a acting from the left
BargmannFunction apply_number(const BargmannFunction& f);

// conversions to the generic Gaussian form
QuadGauss to_quad(const BargmannFunction& f);
BargmannFunction from_quad(const QuadGauss& q);

}  // namespace openqb
