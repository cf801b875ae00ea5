// Black-Scholes pricing, Vega, and implied-volatility inversion.
#pragma once

namespace volest {

enum class OptionKind { call, put };

/// European option price. sigma = 0 returns the discounted intrinsic value on
/// the forward. Throws InvalidInput on non-positive spot/strike/maturity or
/// negative sigma.
double bs_price(double spot, double strike, double rate, double maturity, double sigma,
                OptionKind kind);

/// dPrice/dSigma = S * sqrt(T) * phi(d1); identical for calls and puts.
/// Requires sigma > 0.
double vega(double spot, double strike, double rate, double maturity, double sigma);

/// Strike with the largest Vega: S * exp((r + sigma^2/2) * T).
double max_vega_strike(double spot, double rate, double sigma, double maturity);

/// Invert the price for sigma. Newton iteration on Vega inside a bisection
/// bracket of (1e-6, 10]; converges to |price error| < 1e-10 * spot and then
/// polishes until the sigma step is negligible. Throws InvalidInput when the
/// price sits outside the no-arbitrage bounds, NumericError on
/// non-convergence.
double implied_vol(double price, double spot, double strike, double rate, double maturity,
                   OptionKind kind);

}  // namespace volest
