#include "volest/black_scholes.hpp"

#include <algorithm>
#include <cmath>

#include "volest/errors.hpp"
#include "volest/special.hpp"

namespace volest {

namespace {

void check_inputs(double spot, double strike, double maturity, double sigma) {
    if (!(spot > 0.0)) throw InvalidInput("black-scholes: spot must be positive");
    if (!(strike > 0.0)) throw InvalidInput("black-scholes: strike must be positive");
    if (!(maturity > 0.0)) throw InvalidInput("black-scholes: maturity must be positive");
    if (sigma < 0.0) throw InvalidInput("black-scholes: sigma must be nonnegative");
}

}  // namespace

double bs_price(double spot, double strike, double rate, double maturity, double sigma,
                OptionKind kind) {
    check_inputs(spot, strike, maturity, sigma);
    const double df = std::exp(-rate * maturity);
    const double forward = spot / df;
    double call;
    if (sigma == 0.0) {
        call = df * std::max(forward - strike, 0.0);
    } else {
        const double vol = sigma * std::sqrt(maturity);
        const double d1 = (std::log(spot / strike) + (rate + 0.5 * sigma * sigma) * maturity) / vol;
        const double d2 = d1 - vol;
        call = spot * norm_cdf(d1) - strike * df * norm_cdf(d2);
    }
    // Rounding can push a deep in/out-of-the-money price a few ulp below zero.
    if (kind == OptionKind::call) return std::max(call, 0.0);
    return std::max(call + strike * df - spot, 0.0);  // put-call parity
}

double vega(double spot, double strike, double rate, double maturity, double sigma) {
    check_inputs(spot, strike, maturity, sigma);
    if (!(sigma > 0.0)) throw InvalidInput("vega: sigma must be positive");
    const double vol = sigma * std::sqrt(maturity);
    const double d1 = (std::log(spot / strike) + (rate + 0.5 * sigma * sigma) * maturity) / vol;
    return spot * std::sqrt(maturity) * norm_pdf(d1);
}

double max_vega_strike(double spot, double rate, double sigma, double maturity) {
    if (!(spot > 0.0) || !(maturity > 0.0) || sigma < 0.0) {
        throw InvalidInput("max_vega_strike: invalid inputs");
    }
    return spot * std::exp((rate + 0.5 * sigma * sigma) * maturity);
}

double implied_vol(double price, double spot, double strike, double rate, double maturity,
                   OptionKind kind) {
    check_inputs(spot, strike, maturity, 0.0);
    const double df = std::exp(-rate * maturity);
    const double lower_bound = kind == OptionKind::call ? std::max(spot - strike * df, 0.0)
                                                        : std::max(strike * df - spot, 0.0);
    const double upper_bound = kind == OptionKind::call ? spot : strike * df;
    if (!(price > lower_bound) || !(price < upper_bound)) {
        throw InvalidInput("implied_vol: price violates no-arbitrage bounds");
    }

    double lo = 1e-6;
    double hi = 10.0;
    if (bs_price(spot, strike, rate, maturity, hi, kind) < price) {
        throw NumericError("implied_vol: price above the sigma = 10 envelope");
    }

    // Newton start: sqrt(2|ln(S/X) + rT| / T), falling back to 0.2 at the money.
    const double m = std::log(spot / strike) + rate * maturity;
    double sigma = m != 0.0 ? std::sqrt(2.0 * std::abs(m) / maturity) : 0.2;
    sigma = std::clamp(sigma, lo, hi);

    const double tol = 1e-10 * spot;
    for (int iter = 0; iter < 100; ++iter) {
        const double value = bs_price(spot, strike, rate, maturity, sigma, kind);
        const double diff = value - price;
        if (diff > 0.0) {
            hi = sigma;
        } else {
            lo = sigma;
        }
        double v;
        double step = 0.0;
        bool newton_ok = false;
        if (sigma > 0.0 && (v = vega(spot, strike, rate, maturity, sigma)) > 1e-300) {
            step = diff / v;
            const double next = sigma - step;
            if (next > lo && next < hi) {
                sigma = next;
                newton_ok = true;
            }
        }
        if (!newton_ok) {
            sigma = 0.5 * (lo + hi);
            step = hi - lo;
        }
        if (std::abs(diff) < tol && std::abs(step) < 1e-14 * std::max(1.0, sigma)) {
            return sigma;
        }
        if (hi - lo < 1e-15 * sigma) return sigma;
    }
    const double final_diff =
        std::abs(bs_price(spot, strike, rate, maturity, sigma, kind) - price);
    if (final_diff < tol) return sigma;
    throw NumericError("implied_vol: Newton/bisection did not converge");
}

}  // namespace volest
