#pragma once

// Seeded generators for property tests. Every draw is derived from the raw
// mt19937_64 stream (whose output the standard fixes), never from the
// implementation-defined std:: distributions, so a seed names the same cases
// on every platform.

#include <cstdint>
#include <random>
#include <vector>

#include "hyperclass/coding.hpp"
#include "hyperclass/numeric.hpp"

namespace hyperclass::testing {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    /// Uniform on lo..hi (modulo bias is irrelevant at these widths).
    long integer(long lo, long hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<long>(rng_() % span);
    }

    /// Uniform on [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    /// p/q with 1 <= p <= max_num, 1 <= q <= max_den.
    Rational positive_rational(long max_num, long max_den) {
        return Rational(integer(1, max_num)) / Rational(integer(1, max_den));
    }

    /// Strict rational coding on indices 0..last: xi_0 in (0, 3], then
    /// positive steps p/q. Denominators stay below lcm(1..max_den).
    PrimeCoding<Rational> strict_rational_coding(long last, long max_den = 6) {
        std::vector<Rational> xi;
        xi.push_back(positive_rational(3 * max_den, max_den));
        for (long m = 1; m <= last; ++m) xi.push_back(Rational(xi.back() + positive_rational(4, max_den)));
        return PrimeCoding<Rational>(std::move(xi));
    }

    /// Strict double coding with steps in [0.05, 1.05).
    PrimeCoding<double> strict_double_coding(long last) {
        std::vector<double> xi{uniform(0.5, 2.0)};
        for (long m = 1; m <= last; ++m) xi.push_back(xi.back() + uniform(0.05, 1.05));
        return PrimeCoding<double>(std::move(xi));
    }

    /// A non-integer in (lo, hi).
    double non_integer(double lo, double hi) {
        for (;;) {
            const double v = uniform(lo, hi);
            if (v > lo && v != static_cast<double>(static_cast<long>(v))) return v;
        }
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace hyperclass::testing
