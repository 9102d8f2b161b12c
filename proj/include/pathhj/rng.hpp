#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace pathhj {

/// Counter-based deterministic RNG (splitmix64 core). Sub-streams are
/// derived by hashing (seed, stream, index), so every parallel job owns an
/// independent generator and results do not depend on scheduling order.
class Rng {
  public:
    explicit Rng(uint64_t seed) : state_(seed * 0x9E3779B97F4A7C15ULL + 0x2545F4914F6CDD1DULL) {}

    static uint64_t derive(uint64_t seed, uint64_t stream, uint64_t index) {
        uint64_t z = seed;
        z ^= stream + 0x9E3779B97F4A7C15ULL + (z << 6) + (z >> 2);
        z ^= index + 0xBF58476D1CE4E5B9ULL + (z << 6) + (z >> 2);
        return z;
    }
    static Rng derived(uint64_t seed, uint64_t stream, uint64_t index) {
        return Rng(derive(seed, stream, index));
    }

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(next_u64() % static_cast<uint64_t>(hi - lo + 1));
    }

    /// Standard normal via Box-Muller (explicit so every platform with the
    /// same libm draws the same stream).
    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
    }

    /// Uniform direction on the unit sphere in R^n.
    std::vector<double> unit_vector(int n) {
        std::vector<double> v(n);
        double s = 0.0;
        do {
            s = 0.0;
            for (int i = 0; i < n; ++i) {
                v[i] = normal();
                s += v[i] * v[i];
            }
        } while (s < 1e-24);
        const double inv = 1.0 / std::sqrt(s);
        for (double& x : v) x *= inv;
        return v;
    }

    /// Uniform point in the ball of the given radius.
    std::vector<double> in_ball(int n, double radius) {
        std::vector<double> v = unit_vector(n);
        const double r = radius * std::pow(uniform(), 1.0 / n);
        for (double& x : v) x *= r;
        return v;
    }

  private:
    uint64_t state_;
};

}  // namespace pathhj
