#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace qsim {

/// Seeded generator with platform-independent derived draws.
///
/// std::uniform_*_distribution is implementation-defined, so the helpers here
/// derive doubles and bounded integers directly from the 64-bit engine output.
class Rng {
  public:
    static constexpr double kPi = 3.14159265358979323846;

    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x = engine_();
        while (x >= limit) {
            x = engine_();
        }
        return x % bound;
    }

    /// Standard normal variate (Box-Muller, one value per call).
    double normal() {
        double u = uniform();
        while (u <= 0.0) {
            u = uniform();
        }
        const double v = uniform();
        return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * kPi * v);
    }

  private:
    std::mt19937_64 engine_;
};

} // namespace qsim
