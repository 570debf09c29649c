#pragma once

#include <functional>

#include "openqb/rabi_perturbative.hpp"

namespace openqb::verify {

// Finite-difference residuals of the Bargmann-space equations of motion. Each
// function returns max over the four qubit blocks of |dF/dt - rhs| / max(1, |dF/dt|).
// z and zs are independent complex arguments.

struct Derivs {
    cplx f, fz, fs, fzs;
};

// fourth-order central differences with step h along the real axis
Derivs derivs(const std::function<cplx(cplx, cplx)>& F, cplx z, cplx zs, double h = 1e-3);
cplx time_derivative(const std::function<cplx(double)>& F, double t, double h = 1e-3);

// dispersive JC kernels, (w, v) held fixed
double jc_kernel_residual(const PhysicalParams& p, const QubitMatrix& q, double t, cplx z, cplx zs, cplx w, cplx v);

// Rabi first-order kernels driven by the zeroth-order kernels
double rabi_first_order_residual(const PhysicalParams& p, const QubitMatrix& q, double t, cplx z, cplx zs, cplx w,
                                 cplx v);

// Rabi second-order thermal functions from `table` (plain, with secular terms),
// driven by the first-order thermal functions
double rabi_second_order_residual(const PhysicalParams& p, const QubitMatrix& q, const SecondOrderTable& table, double t,
                                  cplx z, cplx zs);

}  // namespace openqb::verify
