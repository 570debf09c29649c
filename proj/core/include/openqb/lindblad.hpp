#pragma once

#include <Eigen/Dense>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "openqb/dopri5.hpp"
#include "openqb/params.hpp"
#include "openqb/qubit.hpp"

namespace openqb {

// Operators on qubit (x) boson, qubit-major: index = q * (N + 1) + n, |e> is q = 0.
struct FockOps {
    int N = 0;
    Eigen::MatrixXcd a, adag, num, sz, sx, sy, sm, sp, id;

    explicit FockOps(int N);
    int dim() const { return 2 * (N + 1); }
};

Eigen::MatrixXcd build_hamiltonian(Model model, const PhysicalParams& p, int N);

// eigenvalues of the JC Hamiltonian for doublets n = 0..nmax plus the |g,0> level
std::vector<double> jc_exact_levels(const PhysicalParams& p, int nmax);

struct TruncationLeak : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class LindbladSystem {
public:
    LindbladSystem(Model model, const PhysicalParams& p, int N);

    Eigen::MatrixXcd rhs(const Eigen::MatrixXcd& rho) const;
    // dense generator acting on row-major vectorised density matrices
    Eigen::MatrixXcd liouvillian() const;

    int N() const { return ops_.N; }
    int dim() const { return ops_.dim(); }
    const FockOps& ops() const { return ops_; }
    const Eigen::MatrixXcd& hamiltonian() const { return H_; }

private:
    FockOps ops_;
    Eigen::MatrixXcd H_;
    Eigen::MatrixXcd Heff_;  // H - (i/2) sum rate J^dag J
    struct Entry {
        int row, col;
        cplx v;
    };
    std::vector<Entry> heff_nz_;
    std::vector<std::pair<double, std::vector<Entry>>> jumps_nz_;  // (rate, nonzeros of J)
    double rate_down_, rate_up_;
};

// -i[H, rho] + gamma (1 + nbar) D[a] rho + gamma nbar D[a^dag] rho; N inferred from rho
Eigen::MatrixXcd lindblad_rhs(const Eigen::MatrixXcd& rho, Model model, const PhysicalParams& p);

Eigen::MatrixXcd liouvillian(Model model, const PhysicalParams& p, int N);
// generator restricted to the |e><g| block of the dispersive model, (N+1)^2 dimensional
Eigen::MatrixXcd coherence_block_liouvillian(const PhysicalParams& p, int N);
// eigenvalues sorted by real part, largest first
Eigen::VectorXcd spectrum(const Eigen::MatrixXcd& L);
// Same spectrum for a hermiticity-preserving generator on d x d matrices, computed
// from its real form on the hermitian subspace (no eigenvectors).
Eigen::VectorXcd spectrum_hermitian(const Eigen::MatrixXcd& L, int d);

Eigen::VectorXcd vec_rows(const Eigen::MatrixXcd& rho);
Eigen::MatrixXcd unvec_rows(const Eigen::VectorXcd& v, int d);

// unique stationary state from the trace-constrained linear system
Eigen::MatrixXcd steady_state(const Eigen::MatrixXcd& L, int d);

// normalised truncated boson states
Eigen::MatrixXcd thermal_boson(double nbar, int N);
Eigen::MatrixXcd coherent_boson(cplx alpha, int N);
Eigen::MatrixXcd product_state(const QubitMatrix& q, const Eigen::MatrixXcd& boson);

enum class Observable { SigmaX, SigmaY, SigmaZ, SigmaMinusAdag, PhotonNumber, CoherenceMeasure };
Observable observable_from_string(const std::string& s);
std::string to_string(Observable o);

cplx observable(const Eigen::MatrixXcd& rho, Observable which, const FockOps& ops);
cplx observable(const Eigen::MatrixXcd& rho, Observable which);
double top_population(const Eigen::MatrixXcd& rho);
QubitMatrix reduced_qubit(const Eigen::MatrixXcd& rho);

struct EvolveOptions {
    double tol = 1e-10;
    bool adaptive = true;
    double fixed_step = 1e-2;
    double leak_threshold = 1e-4;  // abort when the top level population exceeds this
};

struct Trajectory {
    std::vector<double> t;
    std::vector<Eigen::MatrixXcd> states;
    double max_trace_drift = 0.0;
    double min_eigenvalue = std::numeric_limits<double>::infinity();
    double max_top_population = 0.0;
    Dopri5Stats stats;
};

Trajectory evolve(const Eigen::MatrixXcd& rho0, const std::vector<double>& ts, Model model, const PhysicalParams& p,
                  const EvolveOptions& opt = {});
// exact propagation with exp(L dt) between grid points
Trajectory evolve_expm(const Eigen::MatrixXcd& rho0, const std::vector<double>& ts, Model model, const PhysicalParams& p,
                       double leak_threshold = std::numeric_limits<double>::infinity());

struct TruncationResult {
    int N = -1;
    double top_population = 0.0;
    bool ok = false;
    std::vector<std::pair<int, double>> history;  // (N, max top population) as probed
};

// smallest N in [N0, N_max] with top_pop(N) <= target: doubling, then bisection
TruncationResult truncation_search(const std::function<double(int)>& top_pop, double target = 1e-7, int N0 = 1,
                                   int N_max = 256);

}  // namespace openqb
