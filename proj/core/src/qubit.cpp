#include "openqb/qubit.hpp"

#include <cmath>
#include <stdexcept>

namespace openqb {

QubitMatrix QubitMatrix::from_bloch(double x, double y, double z)
{
    if (x * x + y * y + z * z > 1.0 + 1e-12)
        throw std::invalid_argument("Bloch vector outside the unit ball");
    const cplx c = 0.5 * cplx(x, -y);
    return {0.5 * (1.0 + z), c, std::conj(c), 0.5 * (1.0 - z)};
}

QubitMatrix QubitMatrix::from_name(const std::string& name)
{
    if (name == "excited" || name == "e") return excited();
    if (name == "ground" || name == "g") return ground();
    if (name == "plus" || name == "+") return plus();
    throw std::invalid_argument("unknown qubit preset '" + name + "' (expected excited, ground or plus)");
}

Eigen::Matrix2cd QubitMatrix::matrix() const
{
    Eigen::Matrix2cd m;
    m << q11, q12, q21, q22;
    return m;
}

bool QubitMatrix::is_state(double tol) const
{
    if (std::abs(q11 + q22 - 1.0) > tol) return false;
    if (std::abs(q21 - std::conj(q12)) > tol) return false;
    if (std::abs(q11.imag()) > tol || std::abs(q22.imag()) > tol) return false;
    if (q11.real() < -tol || q22.real() < -tol) return false;
    return std::norm(q12) <= q11.real() * q22.real() + tol;
}

double coherence_measure(const QubitMatrix& q)
{
    const double sx = 2.0 * q.q12.real();
    const double sy = -2.0 * q.q12.imag();
    return std::sqrt(sx * sx + sy * sy);
}

}  // namespace openqb
