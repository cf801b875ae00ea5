// Derivative-free simplex minimizer.
#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace volest {

struct NelderMeadOptions {
    double f_tol = 1e-10;        // stop when the simplex's value spread shrinks below this
    double x_tol = 1e-10;        // ... or its coordinate spread does
    std::size_t max_iters = 4000;
    double initial_step = 0.25;  // per-coordinate offset for the starting simplex
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
};

/// Minimize fn starting from x0. The objective may return +inf (or any huge
/// value) to veto a region; the simplex contracts away from it.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& fn,
                             const std::vector<double>& x0, const NelderMeadOptions& opts = {});

}  // namespace volest
