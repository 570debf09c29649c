#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "openqb/params.hpp"

namespace openqb {

// (p0 + p1.x + x^T p2 x) * exp(x^T Q x / 2 + L.x + c0) over n formally independent
// complex variables. p2 and Q are kept symmetric.
struct QuadGauss {
    Eigen::Index n = 0;
    cplx p0{1.0};
    Eigen::VectorXcd p1;
    Eigen::MatrixXcd p2;
    Eigen::MatrixXcd Q;
    Eigen::VectorXcd L;
    cplx c0{0.0};

    explicit QuadGauss(Eigen::Index dim = 0);

    cplx operator()(const Eigen::VectorXcd& x) const;
    // highest monomial degree with a nonzero coefficient
    int degree() const;
};

// Integrates out conjugate pairs (u, ubar) with measure d^2u/pi, treating
// ubar = conj(u). Variables not named in `pairs` survive in their original order.
// Throws std::domain_error if the Gaussian does not converge.
QuadGauss integrate_pairs(const QuadGauss& f, const std::vector<std::pair<int, int>>& pairs);

}  // namespace openqb
