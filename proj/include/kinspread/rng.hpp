#pragma once

#include <cmath>
#include <cstdint>

namespace kinspread {

// Per-purpose tags for counter-based random streams. Every stream is keyed
// by (seed, a, b, purpose), so any draw in the simulation is addressable
// independently of execution order or thread count.
enum class Draw : std::uint64_t {
    Placement = 1,
    InfectPick,
    MigrantTag,
    Move,
    MoveRetry,
    MigrateFire,
    MigrateDest,
    MigratePlace,
    Transmit,
    Generic,
};

namespace detail {
inline std::uint64_t avalanche(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}
}  // namespace detail

// Stateless counter-based generator (splitmix-style output function over a
// mixed key). Streams with distinct keys are independent; a stream's draws
// depend only on its key and how many values were taken from it.
class RngStream {
  public:
    RngStream(std::uint64_t seed, std::uint64_t a, std::uint64_t b, Draw tag) {
        constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ull;
        std::uint64_t k = detail::avalanche(seed + golden);
        k = detail::avalanche(k ^ (a + golden));
        k = detail::avalanche(k ^ (b + golden));
        key_ = detail::avalanche(k ^ (static_cast<std::uint64_t>(tag) + golden));
    }

    std::uint64_t next_u64() {
        constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ull;
        return detail::avalanche(key_ + (++counter_) * golden);
    }

    // Uniform in [0, 1).
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    // Angle uniform on [0, 2*pi).
    double angle() { return uniform01() * 6.283185307179586476925286766559; }

    std::uint64_t uniform_index(std::uint64_t n) {
        // Modulo bias is below 2^-50 for the n used here (n << 2^32).
        return next_u64() % n;
    }

    // Box-Muller; consumes exactly two draws per call.
    double normal(double mean, double stddev) {
        double u1 = uniform01();
        double u2 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        return mean + stddev * r * std::cos(6.283185307179586476925286766559 * u2);
    }

    // Normal truncated at zero: negative draws are resampled, not clamped.
    double normal_nonneg(double mean, double stddev) {
        for (;;) {
            const double v = normal(mean, stddev);
            if (v >= 0.0) return v;
        }
    }

  private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace kinspread
