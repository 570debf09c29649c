#pragma once

#include <complex>
#include <random>

#include "openqb/params.hpp"

namespace testing {

inline std::mt19937_64& rng()
{
    static std::mt19937_64 gen(20240611);
    return gen;
}

inline double uniform(double a, double b)
{
    return std::uniform_real_distribution<double>(a, b)(rng());
}

inline openqb::cplx cuniform(double r)
{
    return {uniform(-r, r), uniform(-r, r)};
}

// Fig. 2 parameters
inline openqb::PhysicalParams fig2()
{
    openqb::PhysicalParams p;
    p.omega = 1.0;
    p.Omega = 4.0;
    p.g = 0.5;
    p.gamma = 0.15;
    p.temperature = 1.563;
    return p;
}

// Fig. 4 parameters
inline openqb::PhysicalParams fig4(double g = 0.1)
{
    openqb::PhysicalParams p;
    p.omega = 1.0;
    p.Omega = 1.5;
    p.g = g;
    p.gamma = 0.1;
    p.temperature = 0.1;
    return p;
}

}  // namespace testing
