#pragma once

// Essential points P_{k0} = (x_{k0}, y_{k0}): values of the lower and upper
// essential polynomials at a coding. Consecutive repetition of x marks a
// prime k0; of y, a prime alpha - k0.

#include <string>
#include <vector>

#include "hyperclass/coding.hpp"
#include "hyperclass/errors.hpp"
#include "hyperclass/numeric.hpp"
#include "hyperclass/oracles.hpp"
#include "hyperclass/polynomial.hpp"
#include "hyperclass/primes.hpp"

namespace hyperclass {

template <Scalar T>
struct EssentialPoint {
    long k0;
    T x;  // > 0
    T y;  // < 0
};

/// Lower essential values x_j = P_{I,j}(xi) for j = 4..last. Since
/// y_{k0} = -x_{alpha-k0-1}, one table serves every alpha <= last + 5.
template <Scalar T>
class LowerValueTable {
public:
    LowerValueTable(const PrimeCoding<T>& c, long last) : last_(last) {
        if (last < 4) throw ArgumentError("value table needs last >= 4");
        values_.reserve(static_cast<std::size_t>(last - 3));
        for (long j = 4; j <= last; ++j) values_.push_back(lower_essential_poly(j).evaluate(c));
    }

    long last() const { return last_; }

    const T& x(long j) const {
        if (j < 4 || j > last_)
            throw RangeError("x_" + std::to_string(j) + " outside the table 4.." + std::to_string(last_));
        return values_[static_cast<std::size_t>(j - 4)];
    }

    T y(long alpha, long k0) const { return T(-x(alpha - k0 - 1)); }

private:
    long last_;
    std::vector<T> values_;
};

namespace detail {

inline void require_window(long alpha) {
    if (alpha < 16 || alpha % 2 != 0)
        throw ArgumentError("alpha must be even and >= 16, got " + std::to_string(alpha));
}

/// The polynomials for alpha reference slopes up to floor((alpha-5)/2), all
/// below alpha/2 - 1, so strictness through alpha/2 - 1 (an "adapted"
/// coding) suffices.
template <Scalar T>
void require_adapted(const PrimeCoding<T>& c, long alpha) {
    require_window(alpha);
    if (!c.is_strict_through(alpha / 2 - 1))
        throw ArgumentError("coding must be strictly increasing through index alpha/2-1 = " +
                            std::to_string(alpha / 2 - 1));
}

}  // namespace detail

template <Scalar T>
std::vector<EssentialPoint<T>> essential_points(const LowerValueTable<T>& table, long alpha) {
    detail::require_window(alpha);
    std::vector<EssentialPoint<T>> out;
    for (long k0 = 4; k0 <= alpha / 2 - 1; ++k0) out.push_back({k0, table.x(k0), table.y(alpha, k0)});
    return out;
}

template <Scalar T>
std::vector<EssentialPoint<T>> essential_points(const PrimeCoding<T>& c, long alpha) {
    detail::require_adapted(c, alpha);
    return essential_points(LowerValueTable<T>(c, alpha - 5), alpha);
}

struct RepetitionRecord {
    long k0;
    bool x_repeated;        // x_{k0-1} = x_{k0}
    bool y_repeated;        // y_{k0-1} = y_{k0}
    bool k0_prime;
    bool complement_prime;  // alpha - k0 prime
};

struct MonotonicityReport {
    long alpha = 0;
    std::vector<RepetitionRecord> records;  // k0 = 5..alpha/2-1
};

/// Checks 0 < x_4 <= ... <= x_{a/2-1}, y_4 <= ... <= y_{a/2-1} < 0, and that
/// repetitions occur exactly at primes. Equality is exact for rationals and
/// relative (`rel_tol`) otherwise. Throws TheoremViolation on any failure.
template <Scalar T>
MonotonicityReport monotonicity_report(const std::vector<EssentialPoint<T>>& points, long alpha,
                                       double rel_tol = kDefaultRelativeTolerance) {
    MonotonicityReport report{alpha, {}};
    if (points.empty()) return report;
    if (!(points.front().x > 0)) throw TheoremViolation("x_4 is not positive");
    if (!(points.back().y < 0)) throw TheoremViolation("y_{alpha/2-1} is not negative");
    for (std::size_t i = 1; i < points.size(); ++i) {
        const auto& prev = points[i - 1];
        const auto& cur = points[i];
        const long k0 = cur.k0;
        const bool xr = nearly_equal(prev.x, cur.x, rel_tol);
        const bool yr = nearly_equal(prev.y, cur.y, rel_tol);
        if (!xr && !(prev.x < cur.x))
            throw TheoremViolation("x decreases at k0 = " + std::to_string(k0));
        if (!yr && !(prev.y < cur.y))
            throw TheoremViolation("y decreases at k0 = " + std::to_string(k0));
        RepetitionRecord rec{k0, xr, yr, is_prime(k0), is_prime(alpha - k0)};
        if (rec.x_repeated != rec.k0_prime)
            throw TheoremViolation("x_{k0-1} = x_{k0} disagrees with primality of k0 = " +
                                   std::to_string(k0));
        if (rec.y_repeated != rec.complement_prime)
            throw TheoremViolation("y_{k0-1} = y_{k0} disagrees with primality of alpha-k0 = " +
                                   std::to_string(alpha - k0));
        report.records.push_back(rec);
    }
    return report;
}

template <Scalar T>
MonotonicityReport monotonicity_report(const PrimeCoding<T>& c, long alpha,
                                       double rel_tol = kDefaultRelativeTolerance) {
    return monotonicity_report(essential_points(c, alpha), alpha, rel_tol);
}

/// The k0 whose point equals its predecessor in both coordinates, without
/// any cross-check.
template <Scalar T>
std::vector<long> repeated_points(const std::vector<EssentialPoint<T>>& points,
                                  double rel_tol = kDefaultRelativeTolerance) {
    std::vector<long> found;
    for (std::size_t i = 1; i < points.size(); ++i)
        if (nearly_equal(points[i - 1].x, points[i].x, rel_tol) &&
            nearly_equal(points[i - 1].y, points[i].y, rel_tol))
            found.push_back(points[i].k0);
    return found;
}

/// The k0 in 5..alpha/2-1 whose essential point repeats its predecessor in
/// both coordinates. Throws TheoremViolation unless this equals the sieve's
/// in-window Goldbach partitions.
template <Scalar T>
std::vector<long> goldbach_characterization(const std::vector<EssentialPoint<T>>& points, long alpha,
                                            double rel_tol = kDefaultRelativeTolerance) {
    const auto found = repeated_points(points, rel_tol);
    const auto expected = goldbach_partitions_oracle(alpha).inside_window;
    if (found != expected)
        throw TheoremViolation("repeated essential points disagree with the sieve for alpha = " +
                               std::to_string(alpha));
    return found;
}

template <Scalar T>
std::vector<long> goldbach_characterization(const PrimeCoding<T>& c, long alpha,
                                            double rel_tol = kDefaultRelativeTolerance) {
    return goldbach_characterization(essential_points(c, alpha), alpha, rel_tol);
}

}  // namespace hyperclass
