#include "volest/simulate.hpp"

#include <cmath>

#include "volest/black_scholes.hpp"
#include "volest/errors.hpp"
#include "volest/rng.hpp"

namespace volest {

namespace {

void check_config(const SimConfig& config) {
    if (!(config.s0 > 0.0)) throw InvalidInput("simulate: s0 must be positive");
    if (config.n_steps < 1) throw InvalidInput("simulate: need at least one step");
    if (!(config.horizon > 0.0)) throw InvalidInput("simulate: horizon must be positive");
}

void check_piecewise(const PiecewiseVol& v, double horizon) {
    if (v.sigma.empty() || v.sigma.size() != v.end_time.size()) {
        throw InvalidInput("piecewise vol: sigma/end_time size mismatch or empty");
    }
    double prev = 0.0;
    for (std::size_t i = 0; i < v.sigma.size(); ++i) {
        if (v.sigma[i] < 0.0) throw InvalidInput("piecewise vol: sigma must be nonnegative");
        if (!(v.end_time[i] > prev)) throw InvalidInput("piecewise vol: end_time must increase");
        prev = v.end_time[i];
    }
    if (prev < horizon - 1e-12) {
        throw InvalidInput("piecewise vol: segments do not cover the horizon");
    }
}

double piecewise_sigma_at(const PiecewiseVol& v, double t) {
    for (std::size_t i = 0; i < v.end_time.size(); ++i) {
        if (t < v.end_time[i]) return v.sigma[i];
    }
    return v.sigma.back();
}

}  // namespace

SimPath simulate_path(const SimConfig& config, const VolProcess& vol) {
    check_config(config);
    const std::size_t n = config.n_steps;
    const double dt = config.horizon / static_cast<double>(n);
    const double sqrt_dt = std::sqrt(dt);

    SimPath path;
    path.config = config;
    path.prices.resize(n + 1);
    path.inst_vol.resize(n);
    path.prices[0] = config.s0;

    Rng rng = Rng::for_stream(config.seed, 0x51);
    double log_s = std::log(config.s0);

    if (const auto* c = std::get_if<ConstantVol>(&vol)) {
        if (c->sigma < 0.0) throw InvalidInput("constant vol: sigma must be nonnegative");
        for (std::size_t k = 0; k < n; ++k) {
            const double z = rng.normal();
            log_s += (config.rate - 0.5 * c->sigma * c->sigma) * dt + c->sigma * sqrt_dt * z;
            path.prices[k + 1] = std::exp(log_s);
            path.inst_vol[k] = c->sigma;
        }
    } else if (const auto* pw = std::get_if<PiecewiseVol>(&vol)) {
        check_piecewise(*pw, config.horizon);
        for (std::size_t k = 0; k < n; ++k) {
            const double sigma = piecewise_sigma_at(*pw, static_cast<double>(k) * dt);
            const double z = rng.normal();
            log_s += (config.rate - 0.5 * sigma * sigma) * dt + sigma * sqrt_dt * z;
            path.prices[k + 1] = std::exp(log_s);
            path.inst_vol[k] = sigma;
        }
    } else {
        const GarchVol& gv = std::get<GarchVol>(vol);
        validate(gv.params, InnovationDist::gaussian);
        const double uncond = gv.params.unconditional_variance();
        double var = uncond;           // per-step variance
        double eps2_1 = uncond;        // eps^2_{k-1}
        double eps2_2 = uncond;        // eps^2_{k-2}
        for (std::size_t k = 0; k < n; ++k) {
            if (k > 0) {
                var = gv.params.omega + gv.params.alpha1 * eps2_1 + gv.params.alpha2 * eps2_2 +
                      gv.params.beta1 * var;
            }
            const double sigma_step = std::sqrt(var);
            const double sigma_ann = sigma_step / sqrt_dt;
            const double z = rng.normal();
            log_s += (config.rate - 0.5 * sigma_ann * sigma_ann) * dt + sigma_step * z;
            path.prices[k + 1] = std::exp(log_s);
            path.inst_vol[k] = sigma_ann;
            eps2_2 = eps2_1;
            eps2_1 = sigma_step * z * sigma_step * z;
        }
    }
    return path;
}

double discrete_variance_payoff(std::span<const double> prices, double horizon) {
    if (prices.size() < 2) throw InvalidInput("variance payoff: need at least two prices");
    if (!(horizon > 0.0)) throw InvalidInput("variance payoff: horizon must be positive");
    double sum = 0.0;
    for (std::size_t k = 1; k < prices.size(); ++k) {
        if (!(prices[k - 1] > 0.0) || !(prices[k] > 0.0)) {
            throw InvalidInput("variance payoff: prices must be positive");
        }
        const double r = (prices[k] - prices[k - 1]) / prices[k - 1];
        sum += r * r;
    }
    return sum / horizon;
}

double discrete_variance_payoff(const SimPath& path) {
    return discrete_variance_payoff(path.prices, path.config.horizon);
}

double integrated_variance(const VolProcess& vol, double horizon) {
    if (!(horizon > 0.0)) throw InvalidInput("integrated variance: horizon must be positive");
    if (const auto* c = std::get_if<ConstantVol>(&vol)) {
        return c->sigma * c->sigma;
    }
    if (const auto* pw = std::get_if<PiecewiseVol>(&vol)) {
        check_piecewise(*pw, horizon);
        double acc = 0.0;
        double prev = 0.0;
        for (std::size_t i = 0; i < pw->sigma.size() && prev < horizon; ++i) {
            const double hi = std::min(pw->end_time[i], horizon);
            acc += pw->sigma[i] * pw->sigma[i] * (hi - prev);
            prev = hi;
        }
        return acc / horizon;
    }
    throw InvalidInput("integrated variance: GARCH vol has no closed form; pass the path");
}

double integrated_variance(const SimPath& path) {
    double acc = 0.0;
    for (double s : path.inst_vol) acc += s * s;
    return acc / static_cast<double>(path.inst_vol.size());
}

double log_contract_identity_check(std::span<const double> prices) {
    if (prices.size() < 2) throw InvalidInput("log contract check: need at least two prices");
    double sum_r = 0.0;
    double sum_r2 = 0.0;
    for (std::size_t k = 1; k < prices.size(); ++k) {
        if (!(prices[k - 1] > 0.0) || !(prices[k] > 0.0)) {
            throw InvalidInput("log contract check: prices must be positive");
        }
        const double r = (prices[k] - prices[k - 1]) / prices[k - 1];
        sum_r += r;
        sum_r2 += r * r;
    }
    return std::abs(std::log(prices.back() / prices.front()) - sum_r + 0.5 * sum_r2);
}

OptionChain generate_bs_chain(double spot, double rate, double maturity, double sigma,
                              std::span<const double> strike_grid) {
    std::vector<OptionQuote> quotes;
    quotes.reserve(strike_grid.size());
    for (double k : strike_grid) {
        OptionQuote q;
        q.strike = k;
        q.call_mid = bs_price(spot, k, rate, maturity, sigma, OptionKind::call);
        q.put_mid = bs_price(spot, k, rate, maturity, sigma, OptionKind::put);
        quotes.push_back(q);
    }
    return OptionChain(spot, rate, maturity, std::move(quotes));
}

std::vector<double> simulate_garch_returns(const GarchParams& params, std::size_t n,
                                           std::uint64_t seed, InnovationDist dist,
                                           std::size_t burn_in) {
    validate(params, dist);
    Rng rng = Rng::for_stream(seed, 0x6a5c);
    const double uncond = params.unconditional_variance();
    double var = uncond;
    double eps2_1 = uncond;
    double eps2_2 = uncond;
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t t = 0; t < burn_in + n; ++t) {
        if (t > 0) {
            var = params.omega + params.alpha1 * eps2_1 + params.alpha2 * eps2_2 +
                  params.beta1 * var;
        }
        const double z = dist == InnovationDist::student_t
                             ? rng.student_t_unit_variance(params.nu)
                             : rng.normal();
        const double eps = std::sqrt(var) * z;
        if (t >= burn_in) out.push_back(params.mu + eps);
        eps2_2 = eps2_1;
        eps2_1 = eps * eps;
    }
    return out;
}

}  // namespace volest
