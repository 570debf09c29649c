#pragma once

#include <string>
#include <vector>

#include "openqb/params.hpp"

namespace openqb {

struct TimeSeries {
    std::string label;
    std::vector<double> t;
    std::vector<cplx> value;

    void push(double time, cplx v)
    {
        t.push_back(time);
        value.push_back(v);
    }
    size_t size() const { return t.size(); }
};

std::vector<double> linspace(double a, double b, int n);
std::vector<double> logspace(double a, double b, int n);  // endpoints a, b > 0

}  // namespace openqb
