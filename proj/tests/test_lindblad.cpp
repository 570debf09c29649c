#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "helpers.hpp"
#include "openqb/lindblad.hpp"
#include "openqb/rabi_perturbative.hpp"

using namespace openqb;
using Eigen::MatrixXcd;

namespace {

MatrixXcd random_hermitian(int d)
{
    MatrixXcd m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m(i, j) = testing::cuniform(1.0);
    return 0.5 * (m + m.adjoint());
}

MatrixXcd random_density(int d)
{
    MatrixXcd m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m(i, j) = testing::cuniform(1.0);
    MatrixXcd r = m * m.adjoint();
    return r / r.trace();
}

std::vector<double> sorted_real_eigenvalues(const MatrixXcd& H)
{
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(H);
    std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    return v;
}

bool contains(const std::vector<double>& v, double x, double tol)
{
    return std::any_of(v.begin(), v.end(), [&](double y) { return std::abs(x - y) < tol; });
}

}  // namespace

TEST_CASE("ladder and Pauli operators")
{
    const FockOps o(6);
    CHECK(o.dim() == 14);
    const MatrixXcd comm = o.a * o.adag - o.adag * o.a;
    // identity except at the truncation edge
    for (int q = 0; q < 2; ++q)
        for (int n = 0; n < 6; ++n) CHECK(std::abs(comm(q * 7 + n, q * 7 + n) - 1.0) < 1e-14);
    CHECK((o.sx * o.sx - o.id).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((o.sx * o.sy - I * o.sz).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((o.sp * o.sm - 0.5 * (o.id + o.sz)).cwiseAbs().maxCoeff() < 1e-15);
    CHECK_THROWS(FockOps(0));
}

TEST_CASE("uncoupled Rabi spectrum")
{
    PhysicalParams p = testing::fig4(0.0);
    const auto ev = sorted_real_eigenvalues(build_hamiltonian(Model::Rabi, p, 5));
    for (int n = 0; n <= 5; ++n) {
        CHECK(contains(ev, 0.5 * p.omega + n * p.Omega, 1e-12));
        CHECK(contains(ev, -0.5 * p.omega + n * p.Omega, 1e-12));
    }
}

TEST_CASE("resonant JC levels")
{
    PhysicalParams p;
    p.omega = p.Omega = 1.0;
    p.g = 0.1;
    const auto ev = sorted_real_eigenvalues(build_hamiltonian(Model::JC, p, 3));
    CHECK(contains(ev, 0.6, 1e-12));
    CHECK(contains(ev, 0.4, 1e-12));
    CHECK(contains(ev, -0.5, 1e-12));
}

TEST_CASE("JC spectrum matches the exact doublets below the truncation")
{
    for (int k = 0; k < 10; ++k) {
        PhysicalParams p;
        p.omega = testing::uniform(0.5, 2.0);
        p.Omega = testing::uniform(0.5, 2.0);
        p.g = testing::uniform(0.0, 0.5);
        const int N = 20;
        const auto ev = sorted_real_eigenvalues(build_hamiltonian(Model::JC, p, N));
        for (double e : jc_exact_levels(p, 10)) REQUIRE(contains(ev, e, 1e-10 * std::max(1.0, std::abs(e))));
    }
}

TEST_CASE("dispersive and JC spectra agree to second order in lambda")
{
    const PhysicalParams p = testing::fig2();
    const double lam = *derive(p).lambda;
    const auto jc = jc_exact_levels(p, 4);
    const auto disp = sorted_real_eigenvalues(build_hamiltonian(Model::DispersiveJC, p, 12));
    // the two differ by a constant shift; align the |g,0> levels
    const double jc0 = *std::min_element(jc.begin(), jc.end());
    const double shift = disp.front() - jc0;
    CHECK(std::abs(shift + 0.5 * p.g * lam) < 1e-12);
    for (double e : jc) {
        const int n = static_cast<int>(std::floor((e - jc0) / p.Omega));
        double best = 1e300;
        for (double d : disp) best = std::min(best, std::abs(d - shift - e));
        CHECK(best <= 5.0 * p.g * p.g * lam * lam * (std::max(n, 0) + 1));
    }
}

TEST_CASE("master equation right-hand side")
{
    SUBCASE("thermal product state is stationary without coupling")
    {
        PhysicalParams p = testing::fig2();
        p.g = 0.0;
        const int N = 10;
        const MatrixXcd rho = product_state(QubitMatrix{0.3, 0.0, 0.0, 0.7}, thermal_boson(derive(p).nbar, N));
        for (Model m : {Model::Rabi, Model::JC, Model::DispersiveJC})
            CHECK(lindblad_rhs(rho, m, p).cwiseAbs().maxCoeff() < 1e-15);
    }
    SUBCASE("single-photon decay at zero temperature")
    {
        PhysicalParams p = testing::fig2();
        p.g = 0.0;
        p.temperature = 0.0;
        const int N = 3;
        MatrixXcd b = MatrixXcd::Zero(N + 1, N + 1);
        b(1, 1) = 1.0;
        const MatrixXcd d = lindblad_rhs(product_state(QubitMatrix::ground(), b), Model::Rabi, p);
        const int g0 = N + 1;  // |g, 0>
        CHECK(std::abs(d(g0, g0) - p.gamma) < 1e-15);
        CHECK(std::abs(d(g0 + 1, g0 + 1) + p.gamma) < 1e-15);
    }
    SUBCASE("property: trace and hermiticity preservation")
    {
        const PhysicalParams p = testing::fig4(0.3);
        for (int k = 0; k < 100; ++k) {
            const Model m = std::array{Model::Rabi, Model::JC, Model::DispersiveJC}[k % 3];
            const MatrixXcd rho = random_hermitian(12);
            const MatrixXcd d = lindblad_rhs(rho, m, p);
            REQUIRE(std::abs(d.trace()) < 1e-13);
            REQUIRE((d - d.adjoint()).cwiseAbs().maxCoeff() < 1e-13);
        }
    }
    SUBCASE("dimension mismatch")
    {
        CHECK_THROWS_AS(lindblad_rhs(MatrixXcd::Zero(5, 5), Model::Rabi, testing::fig4()), std::invalid_argument);
    }
}

TEST_CASE("vectorised generator agrees with the matrix form")
{
    const PhysicalParams p = testing::fig4(0.2);
    const int N = 4, d = 2 * (N + 1);
    for (Model m : {Model::Rabi, Model::JC, Model::DispersiveJC}) {
        const MatrixXcd L = liouvillian(m, p, N);
        const MatrixXcd rho = random_hermitian(d);
        const MatrixXcd lhs = unvec_rows(L * vec_rows(rho), d);
        CHECK((lhs - lindblad_rhs(rho, m, p)).cwiseAbs().maxCoeff() < 1e-13);
    }
    CHECK((unvec_rows(vec_rows(random_hermitian(d)), d).rows()) == d);
    CHECK_THROWS_AS(liouvillian(Model::Rabi, p, 40), std::length_error);
}

TEST_CASE("coherence block generator is the eg restriction of the dispersive generator")
{
    const PhysicalParams p = testing::fig2();
    const int N = 5, M = N + 1, d = 2 * M;
    const MatrixXcd Lb = coherence_block_liouvillian(p, N);
    MatrixXcd blk(M, M);
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) blk(i, j) = testing::cuniform(1.0);
    MatrixXcd rho = MatrixXcd::Zero(d, d);
    rho.topRightCorner(M, M) = blk;
    const MatrixXcd full = lindblad_rhs(rho, Model::DispersiveJC, p);
    const MatrixXcd part = unvec_rows(Lb * vec_rows(blk), M);
    CHECK((full.topRightCorner(M, M) - part).cwiseAbs().maxCoeff() < 1e-13);
    CHECK(full.topLeftCorner(M, M).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("Liouvillian spectra")
{
    SUBCASE("uncoupled: undamped qubit block")
    {
        const PhysicalParams p = testing::fig4(0.0);
        const Eigen::VectorXcd ev = spectrum(liouvillian(Model::Rabi, p, 5));
        int zeros = 0, undamped = 0, rotating = 0;
        for (Eigen::Index i = 0; i < ev.size(); ++i) {
            zeros += std::abs(ev(i)) < 1e-9;
            undamped += std::abs(ev(i).real()) < 1e-9;
            rotating += std::abs(ev(i).real()) < 1e-9 && std::abs(std::abs(ev(i).imag()) - p.omega) < 1e-9;
        }
        // populations are stationary, coherences rotate at the qubit frequency
        CHECK(zeros == 2);
        CHECK(undamped >= 4);
        CHECK(rotating == 2);
        CHECK(ev(0).real() <= 1e-10);
    }
    SUBCASE("property: dissipative for every model")
    {
        for (int k = 0; k < 6; ++k) {
            PhysicalParams p;
            p.omega = testing::uniform(0.5, 2.0);
            p.Omega = testing::uniform(2.0, 4.0);
            p.g = testing::uniform(0.0, 0.3);
            p.gamma = testing::uniform(0.01, 0.3);
            p.temperature = testing::uniform(0.1, 2.0);
            const Model m = std::array{Model::Rabi, Model::JC, Model::DispersiveJC}[k % 3];
            const Eigen::VectorXcd ev = spectrum(liouvillian(m, p, 5));
            REQUIRE(ev(0).real() <= 1e-10);
            for (Eigen::Index i = 1; i < ev.size(); ++i) REQUIRE(ev(i).real() <= ev(i - 1).real());
        }
    }
    SUBCASE("coupled Rabi: unique stationary state near the zeroth-order prediction")
    {
        const PhysicalParams p = testing::fig4(0.02);
        const int N = 6;
        const MatrixXcd L = liouvillian(Model::Rabi, p, N);
        const Eigen::VectorXcd ev = spectrum(L);
        CHECK(std::abs(ev(0)) < 1e-10);
        CHECK(ev(1).real() < -1e-6);
        const MatrixXcd rho = steady_state(L, 2 * (N + 1));
        CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
        CHECK((L * vec_rows(rho)).cwiseAbs().maxCoeff() < 1e-12);
        const double sz = observable(rho, Observable::SigmaZ).real();
        CHECK(std::abs(sz - steady_sigma_z(p, Model::Rabi, SteadyOrder::Zeroth)) < 5e-3);
    }
}

TEST_CASE("real-form spectrum matches the complex eigensolver")
{
    for (Model m : {Model::Rabi, Model::JC, Model::DispersiveJC}) {
        const PhysicalParams p = testing::fig4(0.2);
        const int N = 4, d = 2 * (N + 1);
        const MatrixXcd L = liouvillian(m, p, N);
        const Eigen::VectorXcd a = spectrum(L), b = spectrum_hermitian(L, d);
        REQUIRE(a.size() == b.size());
        double worst = 0.0;
        for (Eigen::Index i = 0; i < a.size(); ++i) {
            double best = 1e300;
            for (Eigen::Index j = 0; j < b.size(); ++j) best = std::min(best, std::abs(a(i) - b(j)));
            worst = std::max(worst, best);
        }
        CHECK(worst < 1e-9);
        CHECK(std::abs(a(0).real() - b(0).real()) < 1e-10);
    }
    CHECK_THROWS_AS(spectrum_hermitian(MatrixXcd::Zero(9, 9), 2), std::invalid_argument);
}

TEST_CASE("observables")
{
    const double nbar = 0.4;
    const int N = 40;
    const MatrixXcd th = product_state(QubitMatrix::excited(), thermal_boson(nbar, N));
    CHECK(observable(th, Observable::PhotonNumber).real() == doctest::Approx(nbar).epsilon(1e-12));
    CHECK(observable(th, Observable::SigmaZ).real() == doctest::Approx(1.0));
    const MatrixXcd mixed = product_state(QubitMatrix::from_bloch(0.3, 0.2, 0.1), thermal_boson(nbar, N));
    CHECK(std::abs(observable(mixed, Observable::SigmaMinusAdag)) < 1e-15);
    CHECK(observable(mixed, Observable::SigmaX).real() == doctest::Approx(0.3));
    CHECK(observable(mixed, Observable::SigmaY).real() == doctest::Approx(0.2));
    CHECK(observable(mixed, Observable::CoherenceMeasure).real() == doctest::Approx(std::sqrt(0.13)));
    const QubitMatrix r = reduced_qubit(mixed);
    CHECK(r.sigma_x() == doctest::Approx(0.3));
    CHECK(std::abs(r.q11 + r.q22 - 1.0) < 1e-12);
    const MatrixXcd coh = coherent_boson({1.0, 0.5}, 30);
    CHECK(std::abs(coh.trace() - 1.0) < 1e-15);
    for (Observable o : {Observable::SigmaX, Observable::SigmaY, Observable::SigmaZ, Observable::SigmaMinusAdag,
                         Observable::PhotonNumber, Observable::CoherenceMeasure})
        CHECK(observable_from_string(to_string(o)) == o);
    CHECK_THROWS(observable_from_string("purity"));
}

TEST_CASE("integration")
{
    SUBCASE("fixed point stays fixed")
    {
        PhysicalParams p = testing::fig4(0.0);
        p.temperature = 1.0;
        const MatrixXcd rho0 = product_state(QubitMatrix{0.6, 0.0, 0.0, 0.4}, thermal_boson(derive(p).nbar, 8));
        const Trajectory tr = evolve(rho0, {0.0, 5.0, 20.0}, Model::Rabi, p);
        for (const auto& r : tr.states) CHECK((r - rho0).cwiseAbs().maxCoeff() < 1e-10);
    }
    SUBCASE("diagnostics on a coupled run")
    {
        const PhysicalParams p = testing::fig4(0.1);
        const MatrixXcd rho0 = product_state(QubitMatrix::excited(), thermal_boson(derive(p).nbar, 8));
        std::vector<double> ts;
        for (int k = 0; k <= 40; ++k) ts.push_back(0.5 * k);
        EvolveOptions o;
        o.tol = 1e-10;
        const Trajectory tr = evolve(rho0, ts, Model::Rabi, p, o);
        CHECK(tr.states.size() == ts.size());
        CHECK(tr.max_trace_drift < 10.0 * o.tol * ts.back());
        CHECK(tr.min_eigenvalue > -10.0 * o.tol);
        for (const auto& r : tr.states) CHECK((r - r.adjoint()).cwiseAbs().maxCoeff() == 0.0);

        // matrix exponential route agrees
        const Trajectory ex = evolve_expm(rho0, ts, Model::Rabi, p);
        double diff = 0.0;
        for (size_t k = 0; k < ts.size(); ++k) diff = std::max(diff, (tr.states[k] - ex.states[k]).cwiseAbs().maxCoeff());
        CHECK(diff < 1e-8);
    }
    SUBCASE("leakage aborts with guidance")
    {
        const PhysicalParams p = testing::fig4(0.1);
        const MatrixXcd rho0 = product_state(QubitMatrix::excited(), coherent_boson({2.0, 0.0}, 4));
        try {
            evolve(rho0, {0.0, 1.0}, Model::Rabi, p);
            FAIL("expected TruncationLeak");
        } catch (const TruncationLeak& e) {
            CHECK(std::string(e.what()).find("raise N") != std::string::npos);
        }
    }
    SUBCASE("bad inputs")
    {
        const MatrixXcd rho0 = random_density(8);
        EvolveOptions o;
        o.tol = 0.0;
        CHECK_THROWS_AS(evolve(rho0, {0.0, 1.0}, Model::Rabi, testing::fig4(), o), std::invalid_argument);
        CHECK_THROWS_AS(evolve(rho0, {1.0, 0.5}, Model::Rabi, testing::fig4()), std::invalid_argument);
    }
}

TEST_CASE("truncation search")
{
    SUBCASE("vacuum at zero temperature needs one level")
    {
        PhysicalParams p = testing::fig2();
        p.temperature = 0.0;
        auto top = [&](int N) {
            const MatrixXcd rho0 = product_state(QubitMatrix::plus(), thermal_boson(0.0, N));
            const Trajectory tr = evolve(rho0, linspace(0.0, 20.0, 21), Model::DispersiveJC, p);
            return tr.max_top_population;
        };
        const TruncationResult r = truncation_search(top, 1e-7);
        CHECK(r.ok);
        CHECK(r.N == 1);
    }
    SUBCASE("coherent input")
    {
        auto top = [](int N) { return top_population(coherent_boson({2.0, 0.0}, N)); };
        const TruncationResult r = truncation_search(top, 1e-7);
        CHECK(r.ok);
        CHECK(r.N >= 4);
        CHECK(top(r.N) <= 1e-7);
        CHECK(top(r.N - 1) > 1e-7);
        CHECK(r.history.size() >= 3);
    }
    SUBCASE("cap reached")
    {
        const TruncationResult r = truncation_search([](int) { return 1.0; }, 1e-7, 1, 16);
        CHECK_FALSE(r.ok);
        CHECK(r.history.back().first == 16);
    }
}
