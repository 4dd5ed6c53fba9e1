#pragma once

// Piecewise-affine coding functions of the non-negative reals.
//
// A coding with slopes xi_0..xi_N maps [0, N+1] onto [0, B_{N+1}] by
//
//     psi(x) = xi_m (x - m) + B_m,   m = floor(x),   B_m = xi_0 + ... + xi_{m-1}.
//
// It is a strictly increasing bijection, so the usual arithmetic of the reals
// can be transported onto its image. A coding whose slopes are strictly
// increasing is a "prime coding": its deformed hyperbolas are smooth exactly
// away from natural-coordinate points.

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hyperclass/errors.hpp"
#include "hyperclass/numeric.hpp"

namespace hyperclass {

/// Left and right derivative of the coding at a natural number k:
/// a_k = xi_{k-1}, b_k = xi_k.
template <Scalar T>
struct OneSidedSlopes {
    T left;
    T right;
};

template <Scalar T>
class PrimeCoding {
public:
    using value_type = T;

    PrimeCoding() = default;

    explicit PrimeCoding(std::vector<T> slopes) : slopes_(std::move(slopes)) {
        if (slopes_.empty()) throw ArgumentError("a coding needs at least one slope");
        breakpoints_.reserve(slopes_.size() + 1);
        breakpoints_.push_back(T(0));
        for (std::size_t m = 0; m < slopes_.size(); ++m) {
            if (!(slopes_[m] > 0))
                throw ArgumentError("slope xi_" + std::to_string(m) + " must be positive");
            breakpoints_.push_back(T(breakpoints_.back() + slopes_[m]));
        }
    }

    /// xi_m = 1 for m = 0..n: psi is the identity on [0, n+1].
    static PrimeCoding identity(std::size_t n) { return PrimeCoding(std::vector<T>(n + 1, T(1))); }

    /// xi_m = 1 + m/n for m = 0..n. Strictly increasing, rational.
    static PrimeCoding linear(std::size_t n) {
        if (n == 0) throw ArgumentError("linear coding needs n >= 1");
        std::vector<T> xi;
        xi.reserve(n + 1);
        for (std::size_t m = 0; m <= n; ++m) xi.push_back(T(1) + T(m) / T(n));
        return PrimeCoding(std::move(xi));
    }

    /// Index of the last slope (N). The domain is [0, N+1].
    long last_index() const { return static_cast<long>(slopes_.size()) - 1; }

    std::span<const T> slopes() const { return slopes_; }
    std::span<const T> breakpoints() const { return breakpoints_; }

    const T& slope(long m) const {
        if (m < 0 || m > last_index())
            throw RangeError("slope index " + std::to_string(m) + " outside 0.." +
                             std::to_string(last_index()));
        return slopes_[static_cast<std::size_t>(m)];
    }

    /// B_m for m = 0..N+1.
    const T& breakpoint(long m) const {
        if (m < 0 || m > last_index() + 1)
            throw RangeError("breakpoint index " + std::to_string(m) + " out of range");
        return breakpoints_[static_cast<std::size_t>(m)];
    }

    T domain_limit() const { return T(last_index() + 1); }
    const T& range_limit() const { return breakpoints_.back(); }

    bool is_strict() const {
        return std::adjacent_find(slopes_.begin(), slopes_.end(),
                                  [](const T& a, const T& b) { return !(a < b); }) ==
               slopes_.end();
    }

    /// Strictly increasing through index `last` (a coding "adapted" to
    /// alpha uses last = alpha/2 - 1).
    bool is_strict_through(long last) const {
        if (last > last_index()) return false;
        for (long m = 0; m < last; ++m)
            if (!(slopes_[m] < slopes_[m + 1])) return false;
        return true;
    }

    T psi(const T& x) const {
        if (x < 0 || x > domain_limit())
            throw DomainError("psi argument " + format_scalar(x) + " outside [0, " +
                              std::to_string(last_index() + 1) + "]");
        const long m = std::min(floor_long(x), last_index());
        return T(slopes_[m] * (x - T(m)) + breakpoints_[m]);
    }

    T psi_inv(const T& xh) const {
        if (xh < 0 || xh > range_limit())
            throw DomainError("psi^-1 argument " + format_scalar(xh) + " outside [0, B_{N+1}]");
        // First breakpoint strictly greater than xh bounds the piece from above.
        auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), xh);
        long m = static_cast<long>(it - breakpoints_.begin()) - 1;
        m = std::min(m, last_index());
        return T(T(m) + (xh - breakpoints_[m]) / slopes_[m]);
    }

    /// psi'_-(x) for x in (0, N+1].
    const T& left_derivative(const T& x) const {
        if (!(x > 0) || x > domain_limit()) throw DomainError("left derivative outside (0, N+1]");
        long m = floor_long(x);
        if (is_integral(x)) --m;
        return slopes_[std::min(m, last_index())];
    }

    /// psi'_+(x) for x in [0, N+1).
    const T& right_derivative(const T& x) const {
        if (x < 0 || !(x < domain_limit())) throw DomainError("right derivative outside [0, N+1)");
        return slopes_[floor_long(x)];
    }

    // Arithmetic transported through psi.

    T hat_add(const T& s, const T& t) const { return psi(T(psi_inv(s) + psi_inv(t))); }

    T hat_mul(const T& s, const T& t) const { return psi(T(psi_inv(s) * psi_inv(t))); }

    T hat_sub(const T& s, const T& t) const {
        const T a = psi_inv(s);
        const T b = psi_inv(t);
        if (a < b) throw DomainError("hat_sub needs psi^-1(s) >= psi^-1(t)");
        return psi(T(a - b));
    }

    T hat_div(const T& s, const T& t) const {
        const T b = psi_inv(t);
        if (b == 0) throw DomainError("hat_div by the image of zero");
        return psi(T(psi_inv(s) / b));
    }

    /// (a_k, b_k) for 1 <= k <= N.
    OneSidedSlopes<T> one_sided_slopes(long k) const {
        if (k < 1 || k > last_index())
            throw RangeError("one-sided slopes need 1 <= k <= N, got k = " + std::to_string(k));
        return {slopes_[k - 1], slopes_[k]};
    }

    /// xi_i xi_j != xi_{i+1} xi_{j+1} for every i, j < N. Exact for rationals.
    bool identifies_primes(double rel_tol = kDefaultRelativeTolerance) const {
        const long n = last_index();
        for (long i = 0; i < n; ++i)
            for (long j = i; j < n; ++j)
                if (nearly_equal(T(slopes_[i] * slopes_[j]), T(slopes_[i + 1] * slopes_[j + 1]),
                                 rel_tol))
                    return false;
        return true;
    }

    /// a_m a_{alpha-m} != b_m b_{alpha-m} for m = 1..alpha-1.
    bool identifies_naturals(long alpha, double rel_tol = kDefaultRelativeTolerance) const {
        if (alpha < 2 || alpha > last_index())
            throw RangeError("identifies_naturals needs 2 <= alpha <= N");
        for (long m = 1; m < alpha; ++m) {
            const auto [am, bm] = one_sided_slopes(m);
            const auto [ar, br] = one_sided_slopes(alpha - m);
            if (nearly_equal(T(am * ar), T(bm * br), rel_tol)) return false;
        }
        return true;
    }

    template <Scalar U>
    PrimeCoding<U> convert() const {
        std::vector<U> xi;
        xi.reserve(slopes_.size());
        for (const T& s : slopes_) xi.push_back(convert_scalar<U>(s));
        return PrimeCoding<U>(std::move(xi));
    }

    bool operator==(const PrimeCoding& other) const { return slopes_ == other.slopes_; }

private:
    std::vector<T> slopes_;
    std::vector<T> breakpoints_;
};

}  // namespace hyperclass
