#pragma once

// Closed-form areas of the essential regions below the hyperbola xy = k, the
// Jacobian-scaled areas in the deformed plane, and the bounds of the two
// second-derivative weights A_{k0}(k) and B_{k0}(k).

#include <cmath>
#include <string>
#include <vector>

#include "hyperclass/coding.hpp"
#include "hyperclass/errors.hpp"
#include "hyperclass/numeric.hpp"
#include "hyperclass/regions.hpp"

namespace hyperclass {

/// Area of the part of a region lying above the curve's lower boundary and
/// below the curve, with its first two k-derivatives.
template <class F>
struct AreaFormulaResult {
    F area;
    F d1;
    F d2;
};

namespace detail {

template <class F>
F log_of(const F& x) {
    using std::log;
    return F(log(x));
}

template <class F>
F sqrt_of(const F& x) {
    using std::sqrt;
    return F(sqrt(x));
}

}  // namespace detail

/// The five formulas, without checking that (n, n') really has that type.
template <class F>
AreaFormulaResult<F> area_formula(RegionType type, long n, long n_prime, const F& k) {
    using detail::log_of;
    const F fn(n);
    const F fp(n_prime);
    const F one(1);
    switch (type) {
        case RegionType::T2: {
            const F nn = fn * fp;
            return {F(k * log_of(F(k / nn)) + nn - k), log_of(F(k / nn)), F(one / k)};
        }
        case RegionType::T3: {
            const F p1 = fp + one;
            const F slope = log_of(F(p1 / fp));
            // k/(n'+1) - n + k log((n'+1)/n') - n'(1/n' - 1/(n'+1)) k
            const F area = k / p1 - fn + k * slope - fp * (one / fp - one / p1) * k;
            return {area, slope, F(0)};
        }
        case RegionType::T5: {
            const F p1 = fp + one;
            const F slope = log_of(F((fn + one) * p1 / k));
            const F area = k / p1 - fn + k * slope - fp * (fn + one - k / p1);
            return {area, slope, F(-one / k)};
        }
        case RegionType::T7: {
            // (k/2) log k - k/2 - k log n + n^2/2, written to stay accurate near k = n^2.
            const F n2 = fn * fn;
            const F area = k / 2 * log_of(F(k / n2)) - (k - n2) / 2;
            return {area, F(log_of(F(k / n2)) / 2), F(one / (2 * k))};
        }
        case RegionType::T8: {
            const F slope = log_of(F((fn + one) / detail::sqrt_of(k)));
            const F area = k / 2 - fn * (fn + one) + fn * fn / 2 + k * slope;
            return {area, slope, F(-one / (2 * k))};
        }
    }
    throw ArgumentError("unknown region type");
}

/// Checked version: (n, n') must be an essential region of type `type` for
/// floor(k), or for k - 1 when k is an integer (closed-interval extension).
template <class F>
AreaFormulaResult<F> area_closed(RegionType type, long n, long n_prime, const F& k) {
    if (k < 4) throw DomainError("areas need k >= 4");
    const long k0 = floor_long(k);
    bool ok = region_type(k0, n, n_prime) == type;
    if (!ok && is_integral(k) && k0 - 1 >= 4) ok = region_type(k0 - 1, n, n_prime) == type;
    if (!ok)
        throw ArgumentError("cell (" + std::to_string(n) + ", " + std::to_string(n_prime) +
                            ") is not an essential region of type " + std::string(to_string(type)) +
                            " for k = " + format_scalar(k));
    return area_formula(type, n, n_prime, k);
}

template <class F>
AreaFormulaResult<F> area_closed(const RegionEntry& entry, const F& k) {
    return area_closed(entry.type, entry.index.n, entry.index.n_prime, k);
}

/// Second-derivative weight of a type: 1/k times {1, 0, -1, 1/2, -1/2}, as an
/// exact multiple of 1/k expressed in halves.
inline int d2_halves(RegionType type) {
    switch (type) {
        case RegionType::T2: return 2;
        case RegionType::T3: return 0;
        case RegionType::T5: return -2;
        case RegionType::T7: return 1;
        case RegionType::T8: return -1;
    }
    return 0;
}

/// Area of the image region in the deformed plane: xi_n xi_{n'} A(k).
template <class F, Scalar T>
F hat_area(const PrimeCoding<T>& c, const RegionEntry& entry, const F& k) {
    const F jac = convert_scalar<F>(c.slope(entry.index.n)) * convert_scalar<F>(c.slope(entry.index.n_prime));
    return F(jac * area_closed(entry, k).area);
}

// ---------------------------------------------------------------------------
// Second-derivative weights

/// A_{k0}(k) = 1 / (xi_{k0}^2 k).
template <Scalar T>
T weight_A(const PrimeCoding<T>& c, long k0, const T& k) {
    const T& xi = c.slope(k0);
    return T(T(1) / (xi * xi * k));
}

/// B_{k0}(k) = 1 / (xi_{alpha-k0-1}^2 (alpha - k)).
template <Scalar T>
T weight_B(const PrimeCoding<T>& c, long alpha, long k0, const T& k) {
    const T& xi = c.slope(alpha - k0 - 1);
    return T(T(1) / (xi * xi * (T(alpha) - k)));
}

template <Scalar T>
struct WeightBounds {
    long k0;
    T min_A;
    T max_A;
    T min_B;
    T max_B;
};

/// Extremes of A_{k0} and B_{k0} over [k0, k0+1] for k0 = 4..alpha/2-1, in
/// ascending k0. Both weights are monotone in k, so endpoints suffice.
/// Throws TheoremViolation unless
///     min_B4 < max_B4 < min_B5 < ... < max_B_{a/2-1} < min_A_{a/2-1} < ... < max_A4.
template <Scalar T>
std::vector<WeightBounds<T>> bounds_chain(const PrimeCoding<T>& c, long alpha) {
    if (alpha < 16 || alpha % 2 != 0) throw ArgumentError("bounds chain needs even alpha >= 16");
    if (c.last_index() < alpha - 5) throw RangeError("coding must be defined through index alpha-5");
    // Only slopes 4..alpha-5 enter the chain.
    for (long m = 4; m < alpha - 5; ++m)
        if (!(c.slope(m) < c.slope(m + 1)))
            throw ArgumentError("bounds chain needs a strict coding (xi_" + std::to_string(m) +
                                " >= xi_" + std::to_string(m + 1) + ")");

    std::vector<WeightBounds<T>> rows;
    for (long k0 = 4; k0 <= alpha / 2 - 1; ++k0) {
        rows.push_back({k0, weight_A(c, k0, T(k0 + 1)), weight_A(c, k0, T(k0)),
                        weight_B(c, alpha, k0, T(k0)), weight_B(c, alpha, k0, T(k0 + 1))});
    }

    std::vector<T> chain;
    for (const auto& r : rows) {
        chain.push_back(r.min_B);
        chain.push_back(r.max_B);
    }
    for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
        chain.push_back(it->min_A);
        chain.push_back(it->max_A);
    }
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
        if (!(chain[i] < chain[i + 1]))
            throw TheoremViolation("bounds chain broken at position " + std::to_string(i) + ": " +
                                   format_scalar(chain[i]) + " >= " + format_scalar(chain[i + 1]));
    return rows;
}

}  // namespace hyperclass
