#include "volest/option_chain.hpp"

#include <algorithm>
#include <cmath>

#include "volest/black_scholes.hpp"
#include "volest/errors.hpp"
#include "volest/special.hpp"

namespace volest {

namespace {

double otm_price(const OptionQuote& q) {
    if (q.call_mid && q.put_mid) return std::min(*q.call_mid, *q.put_mid);
    return q.call_mid ? *q.call_mid : *q.put_mid;
}

// Trapezoid quadrature of otm(x)/x^2 over the quote subrange [first, last].
double strike_integral(const std::vector<OptionQuote>& quotes, std::size_t first,
                       std::size_t last) {
    double sum = 0.0;
    for (std::size_t i = first; i <= last; ++i) {
        double weight = 0.0;
        if (i > first) weight += 0.5 * (quotes[i].strike - quotes[i - 1].strike);
        if (i < last) weight += 0.5 * (quotes[i + 1].strike - quotes[i].strike);
        const double k = quotes[i].strike;
        sum += weight * otm_price(quotes[i]) / (k * k);
    }
    return sum;
}

}  // namespace

OptionChain::OptionChain(double spot, double rate, double maturity,
                         std::vector<OptionQuote> quotes)
    : spot_(spot), rate_(rate), maturity_(maturity), quotes_(std::move(quotes)) {
    if (!(spot_ > 0.0)) throw InvalidInput("OptionChain: spot must be positive");
    if (!(maturity_ > 0.0)) throw InvalidInput("OptionChain: maturity must be positive");
    for (std::size_t i = 0; i < quotes_.size(); ++i) {
        const OptionQuote& q = quotes_[i];
        if (!(q.strike > 0.0)) throw InvalidInput("OptionChain: strikes must be positive");
        if (i > 0 && !(quotes_[i - 1].strike < q.strike)) {
            throw InvalidInput("OptionChain: strikes must be strictly increasing");
        }
        if (!q.call_mid && !q.put_mid) {
            throw InvalidInput("OptionChain: quote must carry at least one side");
        }
        if ((q.call_mid && *q.call_mid < 0.0) || (q.put_mid && *q.put_mid < 0.0)) {
            throw InvalidInput("OptionChain: negative quote");
        }
    }
    forward_ = spot_ * std::exp(rate_ * maturity_);
}

double model_free_variance(const OptionChain& chain) {
    const auto& quotes = chain.quotes();
    if (quotes.size() < 3) {
        throw InvalidInput("model_free_variance: insufficient strikes (need at least 3)");
    }
    if (!(quotes.front().strike < chain.forward() && quotes.back().strike > chain.forward())) {
        throw InvalidInput("model_free_variance: quotes must span both sides of the forward");
    }
    const double integral = strike_integral(quotes, 0, quotes.size() - 1);
    return 2.0 / chain.maturity() * std::exp(chain.rate() * chain.maturity()) * integral;
}

double corridor_variance(const OptionChain& chain, double lower, double upper) {
    if (!(lower < upper)) throw InvalidInput("corridor_variance: lower must be below upper");
    const auto& quotes = chain.quotes();
    std::size_t first = 0;
    while (first < quotes.size() && quotes[first].strike < lower) ++first;
    std::size_t last = quotes.size();
    while (last > 0 && quotes[last - 1].strike > upper) --last;
    if (last < first + 2) {
        throw InvalidInput("corridor_variance: corridor holds fewer than 2 quotes");
    }
    const double integral = strike_integral(quotes, first, last - 1);
    return 2.0 / chain.maturity() * std::exp(chain.rate() * chain.maturity()) * integral;
}

std::pair<double, double> corridor_bounds_from_quantiles(const OptionChain& chain, double q) {
    if (!(q > 0.0 && q < 0.5)) throw InvalidInput("corridor bounds: q must lie in (0, 0.5)");
    const auto& quotes = chain.quotes();
    if (quotes.empty()) throw InvalidInput("corridor bounds: empty chain");

    // Anchor volatility: invert the out-of-the-money quote nearest the forward.
    const double f = chain.forward();
    std::size_t nearest = 0;
    for (std::size_t i = 1; i < quotes.size(); ++i) {
        if (std::abs(quotes[i].strike - f) < std::abs(quotes[nearest].strike - f)) nearest = i;
    }
    const OptionQuote& atm = quotes[nearest];
    const OptionKind kind = atm.strike >= f ? OptionKind::call : OptionKind::put;
    const double price = kind == OptionKind::call
                             ? (atm.call_mid ? *atm.call_mid : otm_price(atm))
                             : (atm.put_mid ? *atm.put_mid : otm_price(atm));
    double sigma;
    try {
        sigma = implied_vol(price, chain.spot(), atm.strike, chain.rate(), chain.maturity(), kind);
    } catch (const std::exception&) {
        throw InvalidInput("corridor bounds: no usable at-the-forward quote to anchor");
    }

    // Lognormal risk-neutral quantiles: F * exp(-sigma^2 T / 2 + sigma sqrt(T) z).
    const double t = chain.maturity();
    const double drift = -0.5 * sigma * sigma * t;
    const double width = sigma * std::sqrt(t);
    const double z = norm_ppf(q);  // upper quantile by symmetry: -z
    const double lower = f * std::exp(drift + width * z);
    const double upper = f * std::exp(drift - width * z);
    return {std::max(lower, quotes.front().strike), std::min(upper, quotes.back().strike)};
}

double vix_scale(double variance) {
    if (variance < 0.0) throw InvalidInput("vix_scale: variance must be nonnegative");
    return 100.0 * std::sqrt(variance);
}

}  // namespace volest
