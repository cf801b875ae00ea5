// Seeded random number generation with a pinned, reproducible stream.
#pragma once

#include <cstdint>
#include <random>

namespace volest {

/// Identifier of the stream algorithm; recorded in run provenance so that
/// golden outputs can be invalidated if the stream ever changes.
inline constexpr const char* kRngStreamId = "mt19937_64/boxmuller-v1";

/// splitmix64 mixing step; used to derive independent per-stream seeds.
std::uint64_t splitmix64(std::uint64_t& state);

/// Deterministic generator. The engine is std::mt19937_64 (bit-exact across
/// platforms by the standard); all distributions are implemented here rather
/// than with std:: distribution adaptors, whose algorithms are unspecified.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Generator for sub-stream `stream` of a master seed. Streams with
    /// distinct indices are decorrelated through splitmix64.
    static Rng for_stream(std::uint64_t master_seed, std::uint64_t stream);

    /// Uniform draw on (0, 1].
    double uniform();

    /// Standard normal via Box-Muller (two uniforms per draw, no cached state).
    double normal();

    /// Gamma(shape, 1) via Marsaglia-Tsang squeeze. Requires shape > 0.
    double gamma(double shape);

    double chi_squared(double dof);

    /// Student-t with nu degrees of freedom (variance nu/(nu-2) for nu > 2).
    double student_t(double nu);

    /// Student-t rescaled to unit variance. Requires nu > 2.
    double student_t_unit_variance(double nu);

    std::uint64_t next_u64() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace volest
