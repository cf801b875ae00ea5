#include "volest/rng.hpp"

#include <cmath>

#include "volest/errors.hpp"

namespace volest {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Rng Rng::for_stream(std::uint64_t master_seed, std::uint64_t stream) {
    std::uint64_t s = master_seed;
    std::uint64_t a = splitmix64(s);
    s ^= stream * 0xda942042e4dd58b5ULL + 0x2545f4914f6cdd1dULL;
    std::uint64_t b = splitmix64(s);
    return Rng(a ^ b);
}

double Rng::uniform() {
    // 53-bit mantissa, mapped to (0, 1] so log() is always safe.
    return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
}

double Rng::normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
}

double Rng::gamma(double shape) {
    if (!(shape > 0.0)) throw InvalidInput("Rng::gamma: shape must be positive");
    if (shape < 1.0) {
        // Boost to shape+1 and scale back (Marsaglia-Tsang section 6).
        const double u = uniform();
        return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x;
        double v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double Rng::chi_squared(double dof) {
    return 2.0 * gamma(0.5 * dof);
}

double Rng::student_t(double nu) {
    if (!(nu > 0.0)) throw InvalidInput("Rng::student_t: nu must be positive");
    const double z = normal();
    const double w = chi_squared(nu);
    return z / std::sqrt(w / nu);
}

double Rng::student_t_unit_variance(double nu) {
    if (!(nu > 2.0)) throw InvalidInput("Rng::student_t_unit_variance: nu must exceed 2");
    return student_t(nu) / std::sqrt(nu / (nu - 2.0));
}

}  // namespace volest
