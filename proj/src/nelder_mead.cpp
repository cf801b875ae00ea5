#include "volest/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "volest/errors.hpp"

namespace volest {

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& fn,
                             const std::vector<double>& x0, const NelderMeadOptions& opts) {
    const std::size_t n = x0.size();
    if (n == 0) throw InvalidInput("nelder_mead: empty start vector");

    // Standard coefficients: reflection 1, expansion 2, contraction 1/2, shrink 1/2.
    constexpr double kAlpha = 1.0;
    constexpr double kGamma = 2.0;
    constexpr double kRho = 0.5;
    constexpr double kSigma = 0.5;

    std::vector<std::vector<double>> simplex(n + 1, x0);
    for (std::size_t i = 0; i < n; ++i) {
        simplex[i + 1][i] += (x0[i] != 0.0 ? opts.initial_step * std::abs(x0[i]) : opts.initial_step);
    }
    std::vector<double> values(n + 1);
    for (std::size_t i = 0; i <= n; ++i) values[i] = fn(simplex[i]);

    std::vector<std::size_t> order(n + 1);
    NelderMeadResult result;
    for (result.iterations = 0; result.iterations < opts.max_iters; ++result.iterations) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second_worst = order[n - 1];

        double spread = std::abs(values[worst] - values[best]);
        double xspread = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            xspread = std::max(xspread, std::abs(simplex[worst][i] - simplex[best][i]));
        }
        if ((std::isfinite(values[best]) && spread < opts.f_tol) || xspread < opts.x_tol) {
            result.converged = true;
            break;
        }

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j];
        }
        for (double& c : centroid) c /= static_cast<double>(n);

        auto blend = [&](double t) {
            std::vector<double> x(n);
            for (std::size_t j = 0; j < n; ++j) {
                x[j] = centroid[j] + t * (centroid[j] - simplex[worst][j]);
            }
            return x;
        };

        const std::vector<double> reflected = blend(kAlpha);
        const double f_reflected = fn(reflected);
        if (f_reflected < values[best]) {
            const std::vector<double> expanded = blend(kGamma);
            const double f_expanded = fn(expanded);
            if (f_expanded < f_reflected) {
                simplex[worst] = expanded;
                values[worst] = f_expanded;
            } else {
                simplex[worst] = reflected;
                values[worst] = f_reflected;
            }
            continue;
        }
        if (f_reflected < values[second_worst]) {
            simplex[worst] = reflected;
            values[worst] = f_reflected;
            continue;
        }
        const bool outside = f_reflected < values[worst];
        const std::vector<double> contracted = blend(outside ? kRho : -kRho);
        const double f_contracted = fn(contracted);
        if (f_contracted < std::min(f_reflected, values[worst])) {
            simplex[worst] = contracted;
            values[worst] = f_contracted;
            continue;
        }
        // Shrink toward the best vertex.
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == best) continue;
            for (std::size_t j = 0; j < n; ++j) {
                simplex[i][j] = simplex[best][j] + kSigma * (simplex[i][j] - simplex[best][j]);
            }
            values[i] = fn(simplex[i]);
        }
    }

    const std::size_t best =
        static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
    result.x = simplex[best];
    result.value = values[best];
    return result;
}

}  // namespace volest
