#pragma once

// Dormand-Prince 5(4) with FSAL, embedded error control and Hairer's dense output.
// State is any Eigen dense type.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace openqb {

struct Dopri5Options {
    double rtol = 1e-10;
    double atol = 1e-10;
    bool adaptive = true;
    double fixed_step = 1e-2;  // used when adaptive == false
    double h0 = 0.0;           // 0 selects an initial step automatically
    double hmax = std::numeric_limits<double>::infinity();
    long max_steps = 50'000'000;
};

struct Dopri5Stats {
    long accepted = 0;
    long rejected = 0;
    long rhs_evals = 0;
};

namespace dp5 {
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                        a65 = -5103.0 / 18656;
inline constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                        a76 = 11.0 / 84;
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                        e6 = 22.0 / 525, e7 = -1.0 / 40;
inline constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                        d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                        d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;
}  // namespace dp5

// Integrates y' = f(t, y) from t0 through every point of t_out (sorted, >= t0) and
// calls emit(i, y(t_out[i])). post(y) runs after each accepted step.
template <class State, class F, class Emit, class Post>
Dopri5Stats dopri5(F&& f, State y, double t0, const std::vector<double>& t_out, const Dopri5Options& opt, Emit&& emit,
                   Post&& post)
{
    using namespace dp5;
    Dopri5Stats st;
    if (t_out.empty()) return st;
    if (!std::is_sorted(t_out.begin(), t_out.end()) || t_out.front() < t0)
        throw std::invalid_argument("output times must be sorted and not precede t0");

    size_t next = 0;
    while (next < t_out.size() && t_out[next] == t0) emit(next++, y);
    const double t_end = t_out.back();
    if (next == t_out.size()) return st;

    auto errnorm = [&](const State& e, const State& y0, const State& y1) {
        const auto sc = (opt.atol + opt.rtol * y0.cwiseAbs().cwiseMax(y1.cwiseAbs()).array());
        const double s = (e.cwiseAbs().array() / sc).square().sum();
        return std::sqrt(s / static_cast<double>(e.size()));
    };

    State k1 = f(t0, y);
    ++st.rhs_evals;

    double h;
    if (!opt.adaptive) {
        h = opt.fixed_step;
    } else if (opt.h0 > 0.0) {
        h = opt.h0;
    } else {
        // starting step from the first and a trial second derivative estimate
        const State zero = State::Zero(y.rows(), y.cols());
        const double d0 = errnorm(y, zero, y), d1n = errnorm(k1, zero, y);
        double h0 = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 : 0.01 * d0 / d1n;
        const State y1 = y + h0 * k1;
        const State k2 = f(t0 + h0, y1);
        ++st.rhs_evals;
        const double d2 = errnorm(k2 - k1, zero, y) / h0;
        const double mx = std::max(d1n, d2);
        const double h1 = mx <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / mx, 1.0 / 5.0);
        h = std::min(100.0 * h0, h1);
    }
    h = std::min({h, opt.hmax, t_end - t0});

    double t = t0;
    bool last_rejected = false;
    while (next < t_out.size()) {
        if (st.accepted + st.rejected >= opt.max_steps) throw std::runtime_error("integrator exceeded the step limit");
        if (t_end - t <= 1e-13 * std::max(1.0, std::abs(t_end))) {
            // reached the end up to rounding
            while (next < t_out.size()) emit(next++, y);
            break;
        }
        if (t + h > t_end || t_end - (t + h) < 1e-10 * h) h = t_end - t;
        if (h <= std::abs(t) * 1e-14 || h <= 0.0) throw std::runtime_error("integrator step size underflow");

        const State k2 = f(t + c2 * h, y + h * (a21 * k1));
        const State k3 = f(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
        const State k4 = f(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
        const State k5 = f(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const State k6 = f(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        State y1 = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
        const State k7 = f(t + h, y1);
        st.rhs_evals += 6;

        double err = 0.0;
        if (opt.adaptive) {
            const State e = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
            err = errnorm(e, y, y1);
        }

        if (!opt.adaptive || err <= 1.0) {
            const double tn = t + h;
            if (next < t_out.size() && t_out[next] <= tn) {
                const State r2 = y1 - y;
                const State r3 = h * k1 - r2;
                const State r4 = r2 - h * k7 - r3;
                const State r5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
                while (next < t_out.size() && t_out[next] <= tn) {
                    const double th = (t_out[next] - t) / h, th1 = 1.0 - th;
                    State yo = y + th * (r2 + th1 * (r3 + th * (r4 + th1 * r5)));
                    post(yo);
                    emit(next++, yo);
                }
            }
            post(y1);
            y = std::move(y1);
            k1 = k7;
            t = tn;
            ++st.accepted;
            if (opt.adaptive) {
                double fac = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 10.0;
                fac = std::clamp(fac, 0.2, last_rejected ? 1.0 : 10.0);
                h = std::min(h * fac, opt.hmax);
            }
            last_rejected = false;
        } else {
            h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
            ++st.rejected;
            last_rejected = true;
        }
    }
    return st;
}

}  // namespace openqb
