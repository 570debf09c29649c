#pragma once

#include <array>
#include <vector>

#include "openqb/bargmann.hpp"
#include "openqb/params.hpp"
#include "openqb/qubit.hpp"

namespace openqb {

struct KernelCoeffs {
    cplx theta1;
    cplx theta2;  // branch with Re >= 0
    cplx c1;      // undefined (NaN) when theta2 == 0
};

// sqrt(gamma^2 - 4 (g lambda)^2 + 4 i gamma (1 + 2 nbar) g lambda), Re >= 0
cplx theta2_from(double gamma, double g_lambda, double nbar);
KernelCoeffs theta2_of(const PhysicalParams& p);

// Propagation kernels for the four qubit blocks, ordered (ee, eg, ge, gg).
struct BlockKernels {
    std::array<PolyGaussianKernel, 4> k;
    const PolyGaussianKernel& A() const { return k[0]; }
    const PolyGaussianKernel& B() const { return k[1]; }
    const PolyGaussianKernel& C() const { return k[2]; }
    const PolyGaussianKernel& D() const { return k[3]; }
};

BlockKernels jc_kernels(double t, const PhysicalParams& p, const QubitMatrix& q);

// closed-form reduced qubit state
QubitMatrix jc_qubit_thermal(double t, const PhysicalParams& p, const QubitMatrix& q);
QubitMatrix jc_qubit_coherent(double t, const PhysicalParams& p, const QubitMatrix& q, cplx alpha);

struct BlockState {
    double t = 0.0;
    std::array<BargmannFunction, 4> blocks;  // Bargmann image of each qubit block
    QubitMatrix qubit;                       // closed-form reduced state
};

std::vector<BlockState> evolve_thermal(const std::vector<double>& ts, const PhysicalParams& p, const QubitMatrix& q);
std::vector<BlockState> evolve_coherent(const std::vector<double>& ts, const PhysicalParams& p, const QubitMatrix& q,
                                        cplx alpha);

// reduced qubit state by tracing each block's Bargmann function
QubitMatrix reduce_qubit(const std::array<BargmannFunction, 4>& blocks);
// qubit-major joint density matrix on 2(N+1) levels
Eigen::MatrixXcd joint_state(const std::array<BargmannFunction, 4>& blocks, int N);
double photon_number(const std::array<BargmannFunction, 4>& blocks);

// (1/2) Re(gamma - theta2)
double gamma2(const PhysicalParams& p);

}  // namespace openqb
