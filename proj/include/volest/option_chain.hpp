// Option chains and the strike-integral implied-variance estimators.
#pragma once

#include <optional>
#include <vector>

namespace volest {

/// Present-value mid quotes at one strike. At least one side must be present.
struct OptionQuote {
    double strike = 0.0;
    std::optional<double> call_mid;
    std::optional<double> put_mid;
};

/// Strike-sorted option chain with its pricing context. The forward is
/// derived once at construction and kept consistent with spot/rate/maturity.
class OptionChain {
public:
    /// Validates: positive spot/maturity, strictly increasing positive
    /// strikes, nonnegative quotes, each quote carrying at least one side.
    OptionChain(double spot, double rate, double maturity, std::vector<OptionQuote> quotes);

    double spot() const { return spot_; }
    double rate() const { return rate_; }
    double maturity() const { return maturity_; }
    double forward() const { return forward_; }
    const std::vector<OptionQuote>& quotes() const { return quotes_; }

private:
    double spot_;
    double rate_;
    double maturity_;
    double forward_;
    std::vector<OptionQuote> quotes_;
};

/// Annualized model-free implied variance:
/// (2/T) * e^{rT} * integral of otm(x)/x^2 dx over the quoted strikes, where
/// otm(x) is the cheaper (out-of-the-money) of the two quotes at x. The
/// integral uses trapezoid weights on the quoted grid with half intervals at
/// the edges and no extrapolation. Requires at least 3 quotes with strikes on
/// both sides of the forward.
double model_free_variance(const OptionChain& chain);

/// The same integral restricted to strikes inside [lower, upper]. Requires at
/// least 2 quotes inside the corridor. The full quoted range reproduces
/// model_free_variance exactly.
double corridor_variance(const OptionChain& chain, double lower, double upper);

/// Corridor bounds at the q and 1-q quantiles of the lognormal risk-neutral
/// distribution anchored at the at-the-forward implied volatility, clamped to
/// the quoted strike range. Requires 0 < q < 0.5.
std::pair<double, double> corridor_bounds_from_quantiles(const OptionChain& chain, double q);

/// VIX-style scaling: 100 * sqrt(annualized variance).
double vix_scale(double variance);

}  // namespace volest
