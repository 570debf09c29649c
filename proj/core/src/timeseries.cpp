#include "openqb/timeseries.hpp"

#include <cmath>
#include <stdexcept>

namespace openqb {

std::vector<double> linspace(double a, double b, int n)
{
    if (n < 2) throw std::invalid_argument("linspace needs at least two points");
    std::vector<double> out(n);
    const double h = (b - a) / (n - 1);
    for (int i = 0; i < n; ++i) out[i] = a + i * h;
    out.back() = b;
    return out;
}

std::vector<double> logspace(double a, double b, int n)
{
    if (n < 2) throw std::invalid_argument("logspace needs at least two points");
    if (!(a > 0.0 && b > a)) throw std::invalid_argument("logspace needs 0 < a < b");
    std::vector<double> out(n);
    const double la = std::log(a), lb = std::log(b);
    for (int i = 0; i < n; ++i) out[i] = std::exp(la + (lb - la) * i / (n - 1));
    out.front() = a;
    out.back() = b;
    return out;
}

}  // namespace openqb
