#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace growthlab {

// Identifies one replicate of a Monte Carlo run. Distinct
// (master_seed, replicate_index) pairs give independent streams;
// identical pairs reproduce bit-identical draws.
struct SeedSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t replicate_index = 0;
};

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}
}  // namespace detail

// Deterministic stream built from a SeedSpec. All distributions are
// hand-rolled on top of raw 64-bit output so results do not depend on
// the standard library's distribution implementations.
class Rng {
  public:
    explicit Rng(SeedSpec seed)
        : gen_(detail::splitmix64(detail::splitmix64(seed.master_seed) ^
                                  detail::splitmix64(~seed.replicate_index))) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform double in [0, 1).
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform double in (0, 1].
    double uniform_pos() { return 1.0 - uniform(); }

    // Uniform integer in [0, n). n must be positive.
    std::uint64_t uniform_below(std::uint64_t n) {
        // rejection sampling on the top bits, unbiased
        const std::uint64_t threshold = -n % n;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    // Standard normal via the polar method.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

    double exponential() { return -std::log(uniform_pos()); }

    // Gamma(shape, 1) via Marsaglia-Tsang; shape >= 1 handled directly,
    // shape < 1 via the boost trick Gamma(a) = Gamma(a+1) * U^{1/a}.
    double gamma(double shape) {
        if (shape <= 0.0) throw std::invalid_argument("gamma: shape must be positive");
        if (shape < 1.0) {
            const double u = uniform_pos();
            return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform_pos();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

  private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace growthlab
