// GARCH(2,1) with Student-t innovations: filtering, MLE, forecasting, cap rule.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "volest/errors.hpp"
#include "volest/schedule.hpp"
#include "volest/series.hpp"

namespace volest {

enum class InnovationDist { student_t, gaussian };

/// Conditional-variance recursion with two ARCH lags and one GARCH lag:
/// var_t = omega + alpha1*eps^2_{t-1} + alpha2*eps^2_{t-2} + beta1*var_{t-1}.
struct GarchParams {
    double mu = 0.0;       // mean return, per day
    double omega = 1e-6;   // variance intercept, daily variance units
    double alpha1 = 0.05;
    double alpha2 = 0.0;
    double beta1 = 0.90;
    double nu = 8.0;       // Student-t dof; ignored for gaussian innovations

    double persistence() const { return alpha1 + alpha2 + beta1; }
    double unconditional_variance() const { return omega / (1.0 - persistence()); }
};

/// Throws InvalidInput unless omega > 0, the lag coefficients are nonnegative,
/// persistence < 1, and (for Student-t) nu > 2.
void validate(const GarchParams& params, InnovationDist dist = InnovationDist::student_t);

/// Forecast seed state after filtering: the last conditional variance and the
/// last two squared innovations (eps^2_t first).
struct GarchState {
    double last_variance = 0.0;
    std::array<double, 2> last_two_sq_innovations{0.0, 0.0};
};

/// One step of the variance recursion from an explicit state.
double garch_recursion_step(const GarchParams& params, const GarchState& state);

struct GarchFilterResult {
    std::vector<double> variances;  // conditional variance per observation
    GarchState state;
};

/// Filter a return series. The first variance is the unconditional variance;
/// presample squared innovations seed at the sample variance about mu.
/// Requires at least 3 returns and valid params.
GarchFilterResult garch_filter(const GarchParams& params, std::span<const double> returns);

/// Log-likelihood of the return series under the filtered variances:
/// sum_t [ logpdf(eps_t / sigma_t) - ln sigma_t ].
double garch_loglik(const GarchParams& params, std::span<const double> returns,
                    InnovationDist dist = InnovationDist::student_t);

struct GarchFitOptions {
    InnovationDist dist = InnovationDist::student_t;
    std::size_t restarts = 3;       // jittered simplex restarts beyond the first run
    std::size_t max_iters = 4000;   // per simplex run
    double f_tol = 1e-9;            // objective spread tolerance
    std::size_t min_obs = 50;
    std::uint64_t seed = 0;         // restart jitter stream
    std::optional<GarchParams> start;  // warm start; default uses moment heuristics
};

struct GarchFitReport {
    bool converged = false;
    double loglik = 0.0;
    std::size_t iterations = 0;   // total simplex iterations across runs
    std::size_t restarts_used = 0;
};

struct GarchFit {
    GarchParams params;
    GarchFitReport report;
};

/// Thrown on non-convergence; carries the best parameters found so far.
class GarchFitError : public NumericError {
public:
    GarchFitError(const std::string& msg, GarchParams best, double loglik)
        : NumericError(msg), best_params(best), best_loglik(loglik) {}
    GarchParams best_params;
    double best_loglik = 0.0;
};

/// Maximum-likelihood fit via Nelder-Mead on an unconstrained
/// reparameterization (log omega, stick-breaking logistic allocation of the
/// stationarity mass, shifted log for nu - 2). Deterministic given the seed.
/// Throws InvalidInput on short/constant input, GarchFitError on
/// non-convergence.
GarchFit garch_fit(std::span<const double> returns, const GarchFitOptions& options = {});

/// Asymptotic standard errors from the observed information (numerical
/// Hessian of the negative log-likelihood at params). Order: mu, omega,
/// alpha1, alpha2, beta1[, nu]. NaN entries when the Hessian is not
/// invertible.
std::vector<double> garch_std_errors(const GarchParams& params, std::span<const double> returns,
                                     InnovationDist dist = InnovationDist::student_t);

/// One-step variance forecast, annualized:
/// sqrt(days_per_year * (omega + alpha1*eps^2_t + alpha2*eps^2_{t-1} + beta1*var_t)).
double garch_forecast_annualized(const GarchParams& params, const GarchState& state,
                                 AnnualizationConvention annualization = {});

/// Forecast cap: min(forecast, 2 * previous realized volatility).
double cap_forecast(double forecast, double prev_realized);

struct GarchRunResult {
    /// One entry per schedule point; missing when the per-point fit failed.
    std::vector<std::pair<std::size_t, std::optional<double>>> estimates;
    std::vector<std::string> warnings;
};

/// Fit-and-forecast over a schedule: per point, fit on the estimation window
/// implied by (anchor, mode), forecast one step, annualize, and cap against
/// the previous point's realized volatility (the first point caps against its
/// own realized value). Per-point failures are recorded, not fatal.
/// Deterministic given options.seed; points are fitted in parallel.
GarchRunResult run_garch(const ReturnSeries& returns, const std::vector<SchedulePoint>& schedule,
                         WindowMode mode, std::size_t rolling_window,
                         const GarchFitOptions& options = {},
                         AnnualizationConvention annualization = {}, std::size_t threads = 0);

}  // namespace volest
