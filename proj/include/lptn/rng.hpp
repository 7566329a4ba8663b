#ifndef LPTN_RNG_HPP
#define LPTN_RNG_HPP

#include <cstdint>
#include <random>

#include "lptn/math.hpp"

namespace lptn {

// Deterministic random stream. All variate generation goes through our own
// transforms of the mt19937_64 output (never std::*_distribution, whose
// sequences are implementation-defined), so a seed pins the exact draw
// sequence on every platform.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed) : engine_(seed), seed_(seed) {}

    std::uint64_t seed() const { return seed_; }

    // uniform on the open interval (0, 1)
    double uniform() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double normal() { return norm_quantile(uniform()); }

    // Marsaglia-Tsang; shape boosting below 1 keeps it valid for all a > 0.
    double gamma(double shape) {
        if (shape < 1.0) {
            double u = uniform();
            return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x = normal();
            double v = 1.0 + c * x;
            if (v <= 0.0) continue;
            v = v * v * v;
            double u = uniform();
            if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v;
        }
    }

    double student_t(double df) {
        double z = normal();
        double chi2 = 2.0 * gamma(0.5 * df);
        return z / std::sqrt(chi2 / df);
    }

    std::uint64_t next_u64() { return engine_(); }

    // Independent child stream; splitmix64 of (seed, index) decorrelates.
    RngStream substream(std::uint64_t index) const {
        std::uint64_t x = seed_ + 0x9e3779b97f4a7c15ULL * (index + 1);
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        x ^= x >> 31;
        return RngStream(x);
    }

  private:
    std::mt19937_64 engine_;
    std::uint64_t seed_;
};

}  // namespace lptn

#endif
