#pragma once

#include <array>
#include <string>
#include <vector>

#include "openqb/bargmann.hpp"
#include "openqb/jc_dispersive.hpp"
#include "openqb/params.hpp"
#include "openqb/qubit.hpp"
#include "openqb/timeseries.hpp"

namespace openqb {

// f(t) = e^{-gamma t} conj(psi) + psi - 2 gamma e^{-conj(psi) t / 2}
cplx f_psi(double t, double gamma, cplx psi);

struct FirstOrderCoeffs {
    std::array<cplx, 4> xA;  // coefficients of (z*, z, w, v) in the ee-block kernel
    std::array<cplx, 4> xB;  // same for the eg block
    Eigen::Matrix2cd M;      // thermal-contracted coefficients, blocks (ee, eg; ge, gg)
};

// X^(A) for qubit frequency `omega` (pass -omega for the gg block)
std::array<cplx, 4> first_order_xA(double t, const PhysicalParams& p, double omega);
// X^(B); the ge block uses (-omega, q22, q11)
std::array<cplx, 4> first_order_xB(double t, const PhysicalParams& p, double omega, cplx q11, cplx q22);
Eigen::Matrix2cd first_order_thermal_coeffs(double t, const PhysicalParams& p, const QubitMatrix& q);
FirstOrderCoeffs first_order_coeffs(double t, const PhysicalParams& p, const QubitMatrix& q);

// Full kernels read K = K0 + g K1 (+ O(g^2)); both functions return g-free pieces.
BlockKernels zeroth_order_kernels(double t, const PhysicalParams& p, const QubitMatrix& q);
BlockKernels first_order_kernels(double t, const PhysicalParams& p, const QubitMatrix& q);

struct FirstOrderThermal {
    double t = 0.0;
    Eigen::Matrix2cd M;
    std::array<BargmannFunction, 4> zeroth;
    std::array<BargmannFunction, 4> first;  // multiply by g

    std::array<BargmannFunction, 4> blocks(double g) const;
};

// thermal boson at the bath temperature, qubit state q
FirstOrderThermal first_order_thermal(double t, const PhysicalParams& p, const QubitMatrix& q);

// <sigma_- a^dag> to first order in g
TimeSeries exp_sigma_minus_adag(const std::vector<double>& ts, const PhysicalParams& p, const QubitMatrix& q);

// ---- second order ----

// Order of the monomial pairs inside a block.
enum Pair : int { P00 = 0, P11 = 1, P20 = 2, P02 = 3 };

// amp * t^tpow * exp(rate * t)
struct Term {
    cplx amp;
    cplx rate;
    int tpow = 0;
    std::string label;

    cplx operator()(double t) const;
};

struct SecondOrderTable {
    // x[block][pair], blocks ordered (11, 12, 21, 22)
    std::array<std::array<std::vector<Term>, 4>, 4> x;

    std::array<std::array<cplx, 4>, 4> evaluate(double t) const;
};

struct SecondOrderCoeffs {
    double t = 0.0;
    double nbar_plus_one = 1.0;
    std::array<std::array<cplx, 4>, 4> x;

    cplx at(int i, int j, Pair pr) const { return x[2 * i + j][pr]; }
    // g^2 contribution to the reduced qubit block ij (boson trace)
    cplx traced(int block) const;
};

// Terms of x_11 for a qubit with frequency `omega`; x_22 reuses it with (-omega, q22, q11).
std::array<std::vector<Term>, 4> second_order_diag_terms(const PhysicalParams& p, double omega, double q11,
                                                         double q22, bool secular);
std::array<std::vector<Term>, 4> second_order_offdiag_terms(const PhysicalParams& p, cplx q12, cplx q21,
                                                            bool secular);
SecondOrderTable second_order_table(const PhysicalParams& p, const QubitMatrix& q, bool secular = true);
SecondOrderCoeffs second_order_coeffs(double t, const PhysicalParams& p, const QubitMatrix& q, bool secular = true);

// f^(2)_ij as Bargmann functions (thermal exponent)
std::array<BargmannFunction, 4> second_order_blocks(const SecondOrderCoeffs& c, double nbar);

// ---- multiscale ----

struct MultiscaleState {
    double tau = 0.0;
    cplx Q11, Q12, Q21, Q22;
    QubitMatrix as_qubit() const { return {Q11, Q12, Q21, Q22}; }
};

// relaxation rate of Q11 per unit slow time
double multiscale_rate(const PhysicalParams& p);
MultiscaleState multiscale_Q(double tau, const PhysicalParams& p, const QubitMatrix& q);

struct SigmaZCurves {
    std::vector<double> t;
    std::vector<double> zeroth_ms;   // Q11 - Q22
    std::vector<double> composite;   // Q11 - Q22 plus the multiscale g^2 correction
    std::vector<double> secular;     // plain second order with q fixed
};

SigmaZCurves exp_sigma_z_multiscale(const std::vector<double>& ts, const PhysicalParams& p, const QubitMatrix& q);
double sigma_z_composite(double t, const PhysicalParams& p, const QubitMatrix& q);
double sigma_z_secular(double t, const PhysicalParams& p, const QubitMatrix& q);

enum class SteadyOrder { Zeroth, SecondCorrected };
double steady_sigma_z(const PhysicalParams& p, Model model, SteadyOrder order);

}  // namespace openqb
