#ifndef GSCALE_RNG_HPP
#define GSCALE_RNG_HPP

#include <array>
#include <cmath>
#include <cstdint>

namespace gscale {

// xoshiro256++ with SplitMix64 seeding.
//
// Substream convention (the split function): substream(seed, k) seeds a
// SplitMix64 with  seed ^ ((k + 1) * 0x9E3779B97F4A7C15)  and fills the four
// state words from it. Replicate r of a simulation cell uses
// substream(cell_seed, r), so results are independent of thread scheduling
// and replicate order.
class Rng {
  public:
    static Rng seeded(std::uint64_t seed) { return substream(seed, 0); }

    static Rng substream(std::uint64_t seed, std::uint64_t stream) {
        Rng r;
        std::uint64_t x = seed ^ ((stream + 1) * 0x9E3779B97F4A7C15ULL);
        for (auto& w : r.state_) {
            // SplitMix64
            x += 0x9E3779B97F4A7C15ULL;
            std::uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
            z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
            w = z ^ (z >> 31);
        }
        return r;
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform on [0,1) with 53 random bits.
    double uniform01() { return (next_u64() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n); rejection keeps it exact.
    std::uint64_t uniform_below(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do { v = next_u64(); } while (v >= limit);
        return v % n;
    }

    bool bernoulli(double p) { return uniform01() < p; }

    // Standard normal via the Marsaglia polar method (second value cached).
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        has_spare_ = true;
        return u * f;
    }

    // Correlated standard-normal pair via the 2x2 Cholesky of [[1,r],[r,1]].
    std::array<double, 2> bvn_pair(double rho) {
        double z1 = normal();
        double z2 = normal();
        return {z1, rho * z1 + std::sqrt(1.0 - rho * rho) * z2};
    }

    // Marsaglia-Tsang; shapes below 1 use the boost Gamma(a+1)*U^(1/a).
    double gamma(double shape) {
        if (shape <= 0.0) return 0.0;
        if (shape < 1.0) {
            double u = uniform01();
            while (u == 0.0) u = uniform01();
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
            double u = uniform01();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
                return d * v;
        }
    }

    std::array<double, 3> dirichlet3(const std::array<double, 3>& conc) {
        std::array<double, 3> g{gamma(conc[0]), gamma(conc[1]), gamma(conc[2])};
        double s = g[0] + g[1] + g[2];
        if (s <= 0.0) return {1.0, 0.0, 0.0};
        return {g[0] / s, g[1] / s, g[2] / s};
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_{1, 2, 3, 4};
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace gscale

#endif
