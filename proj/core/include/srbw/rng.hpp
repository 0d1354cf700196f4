#pragma once
#include <cmath>
#include <cstdint>
#include <random>

namespace srbw {

/// mt19937_64 engine (sequence fixed by the standard) with a hand-rolled
/// Box-Muller normal on top: std::normal_distribution's output is
/// implementation-defined, which would break bit-for-bit seed
/// reproducibility across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /// uniform in [0, 1)
    double uniform() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    /// standard normal
    double gauss() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u = 0.0;
        do { u = uniform(); } while (u <= 0.0);
        const double v = uniform();
        const double mag = std::sqrt(-2.0 * std::log(u));
        spare_ = mag * std::sin(2.0 * M_PI * v);
        have_spare_ = true;
        return mag * std::cos(2.0 * M_PI * v);
    }

    std::uint64_t raw() { return eng_(); }

    /// uniform integer in [0, n)
    std::uint64_t below(std::uint64_t n) {
        // rejection-free modulo bias is irrelevant for n << 2^64, but do it right
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t x;
        do { x = eng_(); } while (x >= limit);
        return x % n;
    }

private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace srbw
