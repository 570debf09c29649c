#include "openqb/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unsupported/Eigen/MatrixFunctions>

namespace openqb {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

namespace {

MatrixXcd kron(const MatrixXcd& A, const MatrixXcd& B)
{
    MatrixXcd K(A.rows() * B.rows(), A.cols() * B.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j) K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return K;
}

MatrixXcd boson_lowering(int N)
{
    MatrixXcd a = MatrixXcd::Zero(N + 1, N + 1);
    for (int n = 1; n <= N; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

// -i(Heff (x) 1 - 1 (x) conj(Heff')) + sum rate J (x) conj(J), row-major convention
MatrixXcd generator(const MatrixXcd& Heff_left, const MatrixXcd& Heff_right, const std::vector<std::pair<double, MatrixXcd>>& jumps)
{
    const Eigen::Index d = Heff_left.rows();
    const MatrixXcd Id = MatrixXcd::Identity(d, d);
    MatrixXcd L = -I * (kron(Heff_left, Id) - kron(Id, Heff_right.conjugate()));
    for (const auto& [rate, J] : jumps)
        if (rate != 0.0) L += rate * kron(J, J.conjugate());
    return L;
}

void hermitize(MatrixXcd& m)
{
    m = 0.5 * (m + m.adjoint()).eval();
}

}  // namespace

FockOps::FockOps(int n) : N(n)
{
    if (N < 1) throw std::invalid_argument("boson truncation N must be at least 1");
    const MatrixXcd ab = boson_lowering(N);
    const MatrixXcd Ib = MatrixXcd::Identity(N + 1, N + 1);
    const MatrixXcd I2 = MatrixXcd::Identity(2, 2);
    MatrixXcd z2(2, 2), m2(2, 2);
    z2 << 1.0, 0.0, 0.0, -1.0;
    m2 << 0.0, 0.0, 1.0, 0.0;  // |g><e|
    a = kron(I2, ab);
    adag = a.adjoint();
    num = adag * a;
    sz = kron(z2, Ib);
    sm = kron(m2, Ib);
    sp = sm.adjoint();
    sx = sm + sp;
    sy = I * (sm - sp);
    id = MatrixXcd::Identity(dim(), dim());
}

MatrixXcd build_hamiltonian(Model model, const PhysicalParams& p, int N)
{
    const FockOps o(N);
    switch (model) {
    case Model::Rabi:
        return 0.5 * p.omega * o.sz + p.Omega * o.num + p.g * o.sx * (o.a + o.adag);
    case Model::JC:
        return 0.5 * p.omega * o.sz + p.Omega * o.num + p.g * (o.sp * o.a + o.sm * o.adag);
    case Model::DispersiveJC: {
        const DerivedParams d = derive(p);
        if (!d.lambda) throw std::domain_error("dispersive model undefined at zero detuning");
        return 0.5 * d.omega_prime * o.sz + p.Omega * o.num + d.g_lambda * o.sz * o.num;
    }
    }
    throw std::invalid_argument("unknown model");
}

std::vector<double> jc_exact_levels(const PhysicalParams& p, int nmax)
{
    std::vector<double> out{-0.5 * p.omega};
    const double D = p.omega - p.Omega;
    for (int n = 0; n <= nmax; ++n) {
        const double r = 0.5 * std::sqrt(D * D + 4.0 * p.g * p.g * (n + 1));
        out.push_back((n + 0.5) * p.Omega + r);
        out.push_back((n + 0.5) * p.Omega - r);
    }
    std::sort(out.begin(), out.end());
    return out;
}

LindbladSystem::LindbladSystem(Model model, const PhysicalParams& p, int N)
    : ops_(N), H_(build_hamiltonian(model, p, N))
{
    const double nb = derive(p).nbar;
    rate_down_ = p.gamma * (1.0 + nb);
    rate_up_ = p.gamma * nb;
    Heff_ = H_ - 0.5 * I * (rate_down_ * ops_.adag * ops_.a + rate_up_ * ops_.a * ops_.adag);
    auto nonzeros = [](const MatrixXcd& m) {
        std::vector<Entry> nz;
        for (int j = 0; j < m.cols(); ++j)
            for (int i = 0; i < m.rows(); ++i)
                if (m(i, j) != 0.0) nz.push_back({i, j, m(i, j)});
        return nz;
    };
    heff_nz_ = nonzeros(Heff_);
    if (rate_down_ != 0.0) jumps_nz_.emplace_back(rate_down_, nonzeros(ops_.a));
    if (rate_up_ != 0.0) jumps_nz_.emplace_back(rate_up_, nonzeros(ops_.adag));
}

MatrixXcd LindbladSystem::rhs(const MatrixXcd& rho) const
{
    const Eigen::Index d = rho.rows();
    MatrixXcd out = MatrixXcd::Zero(d, d);
    // -i Heff rho + i rho Heff^dag
    for (const Entry& e : heff_nz_) {
        const cplx l = -I * e.v, r = I * std::conj(e.v);
        for (Eigen::Index k = 0; k < d; ++k) out(e.row, k) += l * rho(e.col, k);
        out.col(e.row) += r * rho.col(e.col);
    }
    // rate J rho J^dag
    for (const auto& [rate, nz] : jumps_nz_)
        for (const Entry& x : nz)
            for (const Entry& y : nz) out(x.row, y.row) += rate * x.v * std::conj(y.v) * rho(x.col, y.col);
    return out;
}

MatrixXcd LindbladSystem::liouvillian() const
{
    return generator(Heff_, Heff_, {{rate_down_, ops_.a}, {rate_up_, ops_.adag}});
}

MatrixXcd lindblad_rhs(const MatrixXcd& rho, Model model, const PhysicalParams& p)
{
    if (rho.rows() != rho.cols() || rho.rows() % 2 != 0 || rho.rows() < 4)
        throw std::invalid_argument("density matrix must be square with dimension 2(N+1), N >= 1");
    return LindbladSystem(model, p, static_cast<int>(rho.rows() / 2 - 1)).rhs(rho);
}

MatrixXcd liouvillian(Model model, const PhysicalParams& p, int N)
{
    const long d = 2L * (N + 1);
    if (d * d > 6000) {
        std::ostringstream s;
        s << "dense Liouvillian of dimension " << d * d << " is too large; use N <= 37";
        throw std::length_error(s.str());
    }
    return LindbladSystem(model, p, N).liouvillian();
}

MatrixXcd coherence_block_liouvillian(const PhysicalParams& p, int N)
{
    const DerivedParams d = derive(p);
    if (!d.lambda) throw std::domain_error("dispersive model undefined at zero detuning");
    const MatrixXcd a = boson_lowering(N);
    const MatrixXcd ad = a.adjoint();
    const MatrixXcd n = ad * a;
    const MatrixXcd Ib = MatrixXcd::Identity(N + 1, N + 1);
    const double rd = p.gamma * (1.0 + d.nbar), ru = p.gamma * d.nbar;
    const MatrixXcd loss = -0.5 * I * (rd * n + ru * a * ad);
    const MatrixXcd He = 0.5 * d.omega_prime * Ib + (p.Omega + d.g_lambda) * n + loss;
    const MatrixXcd Hg = -0.5 * d.omega_prime * Ib + (p.Omega - d.g_lambda) * n + loss;
    return generator(He, Hg, {{rd, a}, {ru, ad}});
}

VectorXcd spectrum(const MatrixXcd& L)
{
    Eigen::ComplexEigenSolver<MatrixXcd> es(L, false);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigenvalue computation did not converge");
    VectorXcd ev = es.eigenvalues();
    std::sort(ev.data(), ev.data() + ev.size(), [](cplx x, cplx y) { return x.real() > y.real(); });
    return ev;
}

VectorXcd spectrum_hermitian(const MatrixXcd& L, int d)
{
    if (L.rows() != static_cast<Eigen::Index>(d) * d || L.cols() != L.rows())
        throw std::invalid_argument("generator size does not match d^2");
    // coordinates: diagonal entries, then (Re, Im) of each upper-triangle entry
    std::vector<std::pair<int, int>> idx;
    for (int i = 0; i < d; ++i) idx.emplace_back(i, i);
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            idx.emplace_back(i, j);
            idx.emplace_back(i, j);
        }
    const Eigen::Index n = static_cast<Eigen::Index>(d) * d;
    Eigen::MatrixXd R(n, n);
    VectorXcd col(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const auto [i, j] = idx[k];
        if (i == j) {
            col = L.col(i * d + i);
        } else if (k < d || idx[k - 1] != idx[k]) {
            col = L.col(i * d + j) + L.col(j * d + i);  // |i><j| + |j><i|
        } else {
            col = I * (L.col(i * d + j) - L.col(j * d + i));
        }
        for (Eigen::Index r = 0; r < n; ++r) {
            const auto [a, b] = idx[r];
            const cplx y = col(a * d + b);
            R(r, k) = (a == b || r < d || idx[r - 1] != idx[r]) ? y.real() : y.imag();
        }
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(R, false);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigenvalue computation did not converge");
    VectorXcd ev = es.eigenvalues();
    std::sort(ev.data(), ev.data() + ev.size(), [](cplx x, cplx y) { return x.real() > y.real(); });
    return ev;
}

VectorXcd vec_rows(const MatrixXcd& rho)
{
    const MatrixXcd t = rho.transpose();
    return Eigen::Map<const VectorXcd>(t.data(), t.size());
}

MatrixXcd unvec_rows(const VectorXcd& v, int d)
{
    return Eigen::Map<const MatrixXcd>(v.data(), d, d).transpose();
}

MatrixXcd steady_state(const MatrixXcd& L, int d)
{
    MatrixXcd A = L;
    A.row(0).setZero();
    for (int i = 0; i < d; ++i) A(0, i * d + i) = 1.0;
    VectorXcd b = VectorXcd::Zero(A.rows());
    b(0) = 1.0;
    MatrixXcd rho = unvec_rows(A.partialPivLu().solve(b), d);
    hermitize(rho);
    return rho;
}

MatrixXcd thermal_boson(double nbar, int N)
{
    MatrixXcd r = MatrixXcd::Zero(N + 1, N + 1);
    const double c = nbar / (1.0 + nbar);
    double s = 0.0;
    for (int n = 0; n <= N; ++n) {
        r(n, n) = std::pow(c, n);
        s += r(n, n).real();
    }
    return r / s;
}

MatrixXcd coherent_boson(cplx alpha, int N)
{
    VectorXcd v(N + 1);
    v(0) = 1.0;
    for (int n = 1; n <= N; ++n) v(n) = v(n - 1) * alpha / std::sqrt(static_cast<double>(n));
    v.normalize();
    return v * v.adjoint();
}

MatrixXcd product_state(const QubitMatrix& q, const MatrixXcd& boson)
{
    return kron(q.matrix(), boson);
}

Observable observable_from_string(const std::string& s)
{
    if (s == "sigma_x") return Observable::SigmaX;
    if (s == "sigma_y") return Observable::SigmaY;
    if (s == "sigma_z") return Observable::SigmaZ;
    if (s == "sigma_minus_adag") return Observable::SigmaMinusAdag;
    if (s == "photon_number") return Observable::PhotonNumber;
    if (s == "coherence_measure") return Observable::CoherenceMeasure;
    throw std::invalid_argument("unknown observable '" + s + "'");
}

std::string to_string(Observable o)
{
    switch (o) {
    case Observable::SigmaX: return "sigma_x";
    case Observable::SigmaY: return "sigma_y";
    case Observable::SigmaZ: return "sigma_z";
    case Observable::SigmaMinusAdag: return "sigma_minus_adag";
    case Observable::PhotonNumber: return "photon_number";
    case Observable::CoherenceMeasure: return "coherence_measure";
    }
    return "unknown";
}

namespace {
cplx trace_product(const MatrixXcd& op, const MatrixXcd& rho)
{
    return op.transpose().cwiseProduct(rho).sum();
}
}  // namespace

cplx observable(const MatrixXcd& rho, Observable which, const FockOps& o)
{
    switch (which) {
    case Observable::SigmaX: return trace_product(o.sx, rho);
    case Observable::SigmaY: return trace_product(o.sy, rho);
    case Observable::SigmaZ: return trace_product(o.sz, rho);
    case Observable::SigmaMinusAdag: return trace_product(o.sm * o.adag, rho);
    case Observable::PhotonNumber: return trace_product(o.num, rho);
    case Observable::CoherenceMeasure: {
        const double x = trace_product(o.sx, rho).real(), y = trace_product(o.sy, rho).real();
        return std::sqrt(x * x + y * y);
    }
    }
    return 0.0;
}

cplx observable(const MatrixXcd& rho, Observable which)
{
    return observable(rho, which, FockOps(static_cast<int>(rho.rows() / 2 - 1)));
}

double top_population(const MatrixXcd& rho)
{
    const Eigen::Index M = rho.rows() / 2;
    return (rho(M - 1, M - 1) + rho(2 * M - 1, 2 * M - 1)).real();
}

QubitMatrix reduced_qubit(const MatrixXcd& rho)
{
    const Eigen::Index M = rho.rows() / 2;
    return {rho.topLeftCorner(M, M).trace(), rho.topRightCorner(M, M).trace(), rho.bottomLeftCorner(M, M).trace(),
            rho.bottomRightCorner(M, M).trace()};
}

namespace {

struct Recorder {
    Trajectory& tr;
    cplx trace0;
    double leak;
    int N;

    void operator()(double t, const MatrixXcd& rho)
    {
        tr.t.push_back(t);
        tr.states.push_back(rho);
        tr.max_trace_drift = std::max(tr.max_trace_drift, std::abs(rho.trace() - trace0));
        Eigen::SelfAdjointEigenSolver<MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
        tr.min_eigenvalue = std::min(tr.min_eigenvalue, es.eigenvalues().minCoeff());
        const double top = top_population(rho);
        tr.max_top_population = std::max(tr.max_top_population, top);
        if (top > leak) {
            std::ostringstream s;
            s << "truncation leakage: top boson level population " << top << " at t = " << t << " exceeds " << leak
              << "; raise N above " << N;
            throw TruncationLeak(s.str());
        }
    }
};

void check_initial(const MatrixXcd& rho0, int d, const std::vector<double>& ts)
{
    if (rho0.rows() != d || rho0.cols() != d) throw std::invalid_argument("initial state dimension mismatch");
    if (ts.empty() || ts.front() < 0.0 || !std::is_sorted(ts.begin(), ts.end()))
        throw std::invalid_argument("time grid must be non-negative and increasing");
}

}  // namespace

Trajectory evolve(const MatrixXcd& rho0, const std::vector<double>& ts, Model model, const PhysicalParams& p,
                  const EvolveOptions& opt)
{
    if (!(opt.tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    const LindbladSystem sys(model, p, static_cast<int>(rho0.rows() / 2 - 1));
    check_initial(rho0, sys.dim(), ts);

    Trajectory tr;
    Recorder rec{tr, rho0.trace(), opt.leak_threshold, sys.N()};
    Dopri5Options o;
    o.rtol = o.atol = opt.tol;
    o.adaptive = opt.adaptive;
    o.fixed_step = opt.fixed_step;
    tr.stats = dopri5(
        [&sys](double, const MatrixXcd& r) { return sys.rhs(r); }, MatrixXcd(rho0), 0.0, ts, o,
        [&](size_t i, const MatrixXcd& r) { rec(ts[i], r); }, [](MatrixXcd& r) { hermitize(r); });
    return tr;
}

Trajectory evolve_expm(const MatrixXcd& rho0, const std::vector<double>& ts, Model model, const PhysicalParams& p,
                       double leak_threshold)
{
    const LindbladSystem sys(model, p, static_cast<int>(rho0.rows() / 2 - 1));
    check_initial(rho0, sys.dim(), ts);
    const MatrixXcd L = sys.liouvillian();

    Trajectory tr;
    Recorder rec{tr, rho0.trace(), leak_threshold, sys.N()};
    VectorXcd v = vec_rows(rho0);
    double t = 0.0, cached_dt = -1.0;
    MatrixXcd E;
    for (double tt : ts) {
        const double dt = tt - t;
        if (dt > 0.0) {
            if (std::abs(dt - cached_dt) > 1e-12 * dt) {
                E = (L * dt).exp();
                cached_dt = dt;
            }
            v = E * v;
            MatrixXcd r = unvec_rows(v, sys.dim());
            hermitize(r);
            v = vec_rows(r);
        }
        t = tt;
        rec(tt, unvec_rows(v, sys.dim()));
    }
    return tr;
}

TruncationResult truncation_search(const std::function<double(int)>& top_pop, double target, int N0, int N_max)
{
    TruncationResult r;
    auto probe = [&](int N) {
        const double v = top_pop(N);
        r.history.emplace_back(N, v);
        return v;
    };
    int lo = N0 - 1, hi = -1;
    double hi_val = 0.0;
    for (int N = std::max(1, N0);; N = std::min(2 * N, N_max)) {
        const double v = probe(N);
        if (v <= target) {
            hi = N;
            hi_val = v;
            break;
        }
        lo = N;
        if (N == N_max) return r;
    }
    while (hi - lo > 1) {
        const int mid = (lo + hi) / 2;
        const double v = probe(mid);
        if (v <= target) {
            hi = mid;
            hi_val = v;
        } else
            lo = mid;
    }
    r.N = hi;
    r.top_population = hi_val;
    r.ok = true;
    return r;
}

}  // namespace openqb
