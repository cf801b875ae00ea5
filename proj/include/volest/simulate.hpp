// Synthetic-market oracle: seeded path simulation, variance-swap payoffs,
// integrated variance, and flat-vol chain generation.
#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "volest/garch.hpp"
#include "volest/option_chain.hpp"

namespace volest {

struct ConstantVol {
    double sigma = 0.2;  // annualized
};

/// Piecewise-constant vol: sigma[k] applies until end_time[k] (years).
/// end_time must be increasing and cover the simulation horizon.
struct PiecewiseVol {
    std::vector<double> sigma;
    std::vector<double> end_time;
};

/// GARCH-driven vol. Parameters are in per-step variance units; the recursion
/// advances once per simulation step, seeded at the unconditional variance.
struct GarchVol {
    GarchParams params;
};

using VolProcess = std::variant<ConstantVol, PiecewiseVol, GarchVol>;

struct SimConfig {
    double s0 = 100.0;
    double rate = 0.0;
    double horizon = 1.0;  // years
    std::size_t n_steps = 252;
    std::uint64_t seed = 0;
};

struct SimPath {
    SimConfig config;
    std::vector<double> prices;    // n_steps + 1 values, prices[0] = s0
    std::vector<double> inst_vol;  // annualized sigma applied on each step
};

/// Log-Euler scheme: ln S_k = ln S_{k-1} + (r - sigma_k^2/2) dt + sigma_k sqrt(dt) Z_k,
/// exact in distribution for constant vol. Deterministic given config.seed.
SimPath simulate_path(const SimConfig& config, const VolProcess& vol);

/// Discrete variance-swap payoff: (1/(n dt)) * sum ((S_k - S_{k-1})/S_{k-1})^2.
/// horizon = n dt in years. Throws InvalidInput on short or non-positive paths.
double discrete_variance_payoff(std::span<const double> prices, double horizon);
double discrete_variance_payoff(const SimPath& path);

/// (1/T) * integral of sigma_t^2 dt, closed form. GarchVol has no closed form;
/// use the path overload for it.
double integrated_variance(const VolProcess& vol, double horizon);

/// Riemann sum of the instantaneous variance actually applied to the path.
double integrated_variance(const SimPath& path);

/// Second-order log expansion residual:
/// | ln S_n/S_0 - sum(dS/S) + 1/2 sum(dS/S)^2 |.
double log_contract_identity_check(std::span<const double> prices);

/// Chain with both sides quoted at their Black-Scholes values.
OptionChain generate_bs_chain(double spot, double rate, double maturity, double sigma,
                              std::span<const double> strike_grid);

/// Daily returns r_t = mu + sigma_t z_t from the variance recursion in daily
/// units, after a burn-in. Used to exercise estimators against known truth.
std::vector<double> simulate_garch_returns(const GarchParams& params, std::size_t n,
                                           std::uint64_t seed,
                                           InnovationDist dist = InnovationDist::student_t,
                                           std::size_t burn_in = 1000);

}  // namespace volest
