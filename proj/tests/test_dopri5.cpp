#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "openqb/dopri5.hpp"
#include "openqb/params.hpp"

using namespace openqb;
using Eigen::Vector2d;

namespace {

// harmonic oscillator y'' = -y, y(0) = (1, 0)
double oscillator_error(const Dopri5Options& o, const std::vector<double>& ts)
{
    double err = 0.0;
    dopri5([](double, const Vector2d& y) { return Vector2d(y(1), -y(0)); }, Vector2d(1.0, 0.0), 0.0, ts, o,
           [&](size_t i, const Vector2d& y) {
               err = std::max(err, std::abs(y(0) - std::cos(ts[i])) + std::abs(y(1) + std::sin(ts[i])));
           },
           [](Vector2d&) {});
    return err;
}

double slope(double x1, double y1, double x2, double y2)
{
    return std::log(y2 / y1) / std::log(x2 / x1);
}

}  // namespace

TEST_CASE("fixed-step convergence order is five")
{
    Dopri5Options o;
    o.adaptive = false;
    const std::vector<double> ts{10.0};
    o.fixed_step = 0.2;
    const double e1 = oscillator_error(o, ts);
    o.fixed_step = 0.1;
    const double e2 = oscillator_error(o, ts);
    o.fixed_step = 0.05;
    const double e3 = oscillator_error(o, ts);
    CHECK(slope(0.2, e1, 0.1, e2) == doctest::Approx(5.0).epsilon(0.1));
    CHECK(slope(0.1, e2, 0.05, e3) == doctest::Approx(5.0).epsilon(0.1));
}

TEST_CASE("adaptive error is proportional to the tolerance")
{
    const std::vector<double> ts{20.0};
    Dopri5Options o;
    o.rtol = o.atol = 1e-6;
    const double e1 = oscillator_error(o, ts);
    o.rtol = o.atol = 1e-9;
    const double e2 = oscillator_error(o, ts);
    const double s = slope(1e-6, e1, 1e-9, e2);
    CHECK(s > 0.5);
    CHECK(s < 1.5);
    CHECK(e2 < 1e-7);
}

TEST_CASE("dense output between steps")
{
    std::vector<double> ts;
    for (int k = 0; k <= 400; ++k) ts.push_back(0.037 * k);
    Dopri5Options o;
    o.rtol = o.atol = 1e-11;
    CHECK(oscillator_error(o, ts) < 1e-9);
}

TEST_CASE("exponential decay of a complex matrix state")
{
    const cplx lam(-0.3, 2.0);
    const Eigen::Matrix2cd y0 = Eigen::Matrix2cd::Identity();
    const std::vector<double> ts{0.0, 1.0, 2.5};
    std::vector<Eigen::Matrix2cd> out;
    Dopri5Options o;
    o.rtol = o.atol = 1e-12;
    const Dopri5Stats st = dopri5([lam](double, const Eigen::Matrix2cd& y) -> Eigen::Matrix2cd { return lam * y; }, y0, 0.0,
                                  ts, o, [&](size_t, const Eigen::Matrix2cd& y) { out.push_back(y); },
                                  [](Eigen::Matrix2cd&) {});
    REQUIRE(out.size() == 3);
    for (size_t k = 0; k < 3; ++k) CHECK(std::abs(out[k](0, 0) - std::exp(lam * ts[k])) < 1e-10);
    CHECK(out[0] == y0);
    CHECK(st.accepted > 0);
    CHECK(st.rhs_evals >= 6 * st.accepted);
}

TEST_CASE("errors")
{
    Dopri5Options o;
    auto f = [](double, const Vector2d& y) { return Vector2d(y(1), -y(0)); };
    auto emit = [](size_t, const Vector2d&) {};
    auto post = [](Vector2d&) {};
    CHECK_THROWS_AS(dopri5(f, Vector2d(1, 0), 0.0, {2.0, 1.0}, o, emit, post), std::invalid_argument);
    CHECK_THROWS_AS(dopri5(f, Vector2d(1, 0), 1.0, {0.5}, o, emit, post), std::invalid_argument);
    o.max_steps = 3;
    CHECK_THROWS_AS(dopri5(f, Vector2d(1, 0), 0.0, {100.0}, o, emit, post), std::runtime_error);

    // finite-time blow-up drives the step to zero
    Dopri5Options u;
    auto blow = [](double, const Eigen::Matrix<double, 1, 1>& y) -> Eigen::Matrix<double, 1, 1> { return y * y; };
    Eigen::Matrix<double, 1, 1> y1;
    y1(0) = 1.0;
    CHECK_THROWS_AS(dopri5(blow, y1, 0.0, {2.0}, u, [](size_t, const auto&) {}, [](auto&) {}), std::runtime_error);
}
