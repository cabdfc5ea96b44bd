// dopri5.hpp: Dormand–Prince 5(4) integrator with dense output for matrix ODEs

#pragma once

#include <functional>
#include <vector>

#include "tclgen/superop.hpp"

namespace tclgen::ode {

using Rhs = std::function<CMatrix(double t, const CMatrix& y)>;

struct Options {
    double rtol = 1e-10;
    double atol = 1e-12;
    double initial_step = 0.0;  // 0 selects a step automatically
    double max_step = 0.0;      // 0 means unbounded
    long max_steps = 1'000'000;
};

struct Stats {
    long steps = 0;
    long rejected_steps = 0;
    long rhs_evaluations = 0;
    double est_error = 0.0;  // sum of accepted local error estimates (max-abs)
};

/// Integrates y' = f(t, y) from (t0, y0) and returns y at each sample time
/// using the order-4 continuous extension. Samples must be non-decreasing and
/// no earlier than t0. Throws StiffnessError when the step size underflows.
std::vector<CMatrix> integrate(const Rhs& f, const CMatrix& y0, double t0,
                               const std::vector<double>& samples, const Options& opts,
                               Stats* stats = nullptr);

} // namespace tclgen::ode
