#pragma once

#include <Eigen/Dense>
#include <string>

#include "openqb/params.hpp"

namespace openqb {

// Qubit basis order is (|e>, |g>): q11 is the excited population.
struct QubitMatrix {
    cplx q11{1.0}, q12{0.0}, q21{0.0}, q22{0.0};

    static QubitMatrix excited() { return {1.0, 0.0, 0.0, 0.0}; }
    static QubitMatrix ground() { return {0.0, 0.0, 0.0, 1.0}; }
    static QubitMatrix plus() { return {0.5, 0.5, 0.5, 0.5}; }
    // (x, y, z) Bloch vector with |r| <= 1
    static QubitMatrix from_bloch(double x, double y, double z);
    static QubitMatrix from_name(const std::string& name);

    Eigen::Matrix2cd matrix() const;
    // swaps the roles of |e> and |g>
    QubitMatrix flipped() const { return {q22, q21, q12, q11}; }

    double sigma_x() const { return 2.0 * q12.real(); }
    double sigma_y() const { return -2.0 * q12.imag(); }
    double sigma_z() const { return (q11 - q22).real(); }

    // trace one, hermitian, positive semidefinite (to tol)
    bool is_state(double tol = 1e-12) const;
};

// sqrt(<sx>^2 + <sy>^2) = 2|q12|
double coherence_measure(const QubitMatrix& q);

}  // namespace openqb
