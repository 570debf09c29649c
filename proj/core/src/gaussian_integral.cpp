#include "openqb/gaussian_integral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace openqb {

QuadGauss::QuadGauss(Eigen::Index dim)
    : n(dim),
      p1(Eigen::VectorXcd::Zero(dim)),
      p2(Eigen::MatrixXcd::Zero(dim, dim)),
      Q(Eigen::MatrixXcd::Zero(dim, dim)),
      L(Eigen::VectorXcd::Zero(dim))
{
}

cplx QuadGauss::operator()(const Eigen::VectorXcd& x) const
{
    const cplx poly = p0 + (p1.transpose() * x)(0, 0) + (x.transpose() * p2 * x)(0, 0);
    const cplx ex = 0.5 * (x.transpose() * Q * x)(0, 0) + (L.transpose() * x)(0, 0) + c0;
    return poly * std::exp(ex);
}

int QuadGauss::degree() const
{
    if (p2.cwiseAbs().maxCoeff() > 0.0) return 2;
    if (n > 0 && p1.cwiseAbs().maxCoeff() > 0.0) return 1;
    return 0;
}

QuadGauss integrate_pairs(const QuadGauss& f, const std::vector<std::pair<int, int>>& pairs)
{
    using Eigen::Index;
    using Eigen::MatrixXcd;
    using Eigen::VectorXcd;

    const Index k = static_cast<Index>(pairs.size());
    std::vector<int> inner;
    for (auto [u, ub] : pairs) inner.push_back(u);
    for (auto [u, ub] : pairs) inner.push_back(ub);
    std::vector<int> outer;
    for (int i = 0; i < f.n; ++i)
        if (std::find(inner.begin(), inner.end(), i) == inner.end()) outer.push_back(i);
    const Index ns = static_cast<Index>(outer.size());
    const Index ny = 2 * k;

    auto block = [](const MatrixXcd& m, const std::vector<int>& r, const std::vector<int>& c) {
        MatrixXcd b(r.size(), c.size());
        for (size_t i = 0; i < r.size(); ++i)
            for (size_t j = 0; j < c.size(); ++j) b(i, j) = m(r[i], c[j]);
        return b;
    };
    auto sub = [](const VectorXcd& v, const std::vector<int>& r) {
        VectorXcd b(r.size());
        for (size_t i = 0; i < r.size(); ++i) b(i) = v(r[i]);
        return b;
    };

    const MatrixXcd A = block(f.Q, inner, inner);
    const MatrixXcd B = block(f.Q, inner, outer);
    const MatrixXcd Qss = block(f.Q, outer, outer);
    const VectorXcd Ly = sub(f.L, inner);
    const VectorXcd Ls = sub(f.L, outer);

    // u = a + i b, ubar = a - i b: y = T r with r = (a, b)
    MatrixXcd T = MatrixXcd::Zero(ny, ny);
    for (Index i = 0; i < k; ++i) {
        T(i, i) = 1.0;
        T(i, k + i) = I;
        T(k + i, i) = 1.0;
        T(k + i, k + i) = -I;
    }
    const MatrixXcd M = -(T.transpose() * A * T);

    // convergence needs Re M positive definite
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> re_eig(0.5 * (M.real() + M.real().transpose()));
    const double lo = re_eig.eigenvalues().minCoeff();
    if (!(lo > 0.0)) {
        std::ostringstream s;
        s << "non-convergent Gaussian integral: real part of the quadratic form has eigenvalue " << lo;
        throw std::domain_error(s.str());
    }

    Eigen::ComplexEigenSolver<MatrixXcd> ev(M, false);
    cplx pref = std::pow(2.0, static_cast<double>(k));
    for (Index i = 0; i < ny; ++i) pref /= std::sqrt(ev.eigenvalues()(i));

    Eigen::PartialPivLU<MatrixXcd> lu(A);
    const MatrixXcd Ainv = lu.inverse();
    const MatrixXcd C = -Ainv;
    const MatrixXcd Ms = -Ainv * B;     // mean = m0 + Ms s
    const VectorXcd m0 = -Ainv * Ly;

    QuadGauss out(ns);
    out.Q = Qss - B.transpose() * Ainv * B;
    out.Q = 0.5 * (out.Q + out.Q.transpose()).eval();
    out.L = Ls - B.transpose() * Ainv * Ly;
    out.c0 = f.c0 - 0.5 * (Ly.transpose() * Ainv * Ly)(0, 0);

    // Gaussian expectation of the polynomial prefactor (Wick pairing at degree two)
    const VectorXcd p1y = sub(f.p1, inner);
    const VectorXcd p1s = sub(f.p1, outer);
    const MatrixXcd Ryy = block(f.p2, inner, inner);
    const MatrixXcd Rsy = block(f.p2, outer, inner);
    const MatrixXcd Rss = block(f.p2, outer, outer);

    out.p0 = f.p0 + (p1y.transpose() * m0)(0, 0) + (m0.transpose() * Ryy * m0)(0, 0) + (Ryy * C).trace();
    out.p1 = p1s + Ms.transpose() * p1y + 2.0 * Rsy * m0 + 2.0 * Ms.transpose() * Ryy * m0;
    const MatrixXcd R = Rss + 2.0 * Rsy * Ms + Ms.transpose() * Ryy * Ms;
    out.p2 = 0.5 * (R + R.transpose());

    out.p0 *= pref;
    out.p1 *= pref;
    out.p2 *= pref;
    return out;
}

}  // namespace openqb
