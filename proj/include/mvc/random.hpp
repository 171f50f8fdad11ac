#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace mvc {

/// Seeded generator whose streams are identical across standard libraries.
/// std::mt19937_64 output is fully specified; the distributions below are
/// built on it directly instead of the implementation-defined <random> ones.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal (Box-Muller, one value per call).
    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    /// Uniform integer in [0, n).
    int index(int n) { return static_cast<int>(uniform() * n); }

    std::uint64_t next() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace mvc
