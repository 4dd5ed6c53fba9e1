#pragma once

// Brute-force reference computations. Each one reaches its answer by a route
// that shares no code with the formula it is used to check: a sieve for
// primality, numerical quadrature for areas, edge intersection for region
// types, and finite differences for derivatives.

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hyperclass/coding.hpp"
#include "hyperclass/errors.hpp"
#include "hyperclass/numeric.hpp"
#include "hyperclass/regions.hpp"

namespace hyperclass {

// ---------------------------------------------------------------------------
// Primes

/// Sieve of Eratosthenes: table[i] is true iff i is prime, for i = 0..n.
inline std::vector<bool> sieve(long n) {
    if (n < 0) throw ArgumentError("sieve bound must be non-negative");
    std::vector<bool> table(static_cast<std::size_t>(n + 1), true);
    table[0] = false;
    if (n >= 1) table[1] = false;
    for (long p = 2; p * p <= n; ++p)
        if (table[p])
            for (long q = p * p; q <= n; q += p) table[q] = false;
    return table;
}

struct PartitionReport {
    long alpha;
    std::vector<long> all;             // k <= alpha/2 with k and alpha-k prime
    std::vector<long> inside_window;   // those in 5..alpha/2-1
    std::vector<long> outside_window;  // the rest
};

inline PartitionReport goldbach_partitions_oracle(long alpha) {
    if (alpha < 4 || alpha % 2 != 0) throw ArgumentError("alpha must be even and >= 4");
    const auto table = sieve(alpha);
    PartitionReport r{alpha, {}, {}, {}};
    for (long k = 2; k <= alpha / 2; ++k) {
        if (!table[k] || !table[alpha - k]) continue;
        r.all.push_back(k);
        (k >= 5 && k <= alpha / 2 - 1 ? r.inside_window : r.outside_window).push_back(k);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Finite differences

/// (f(x+h) - 2 f(x) + f(x-h)) / h^2. [x-h, x+h] must lie inside [lo, hi].
template <class F>
F finite_difference_d2(const std::function<F(const F&)>& f, const F& x, const F& h, const F& lo,
                       const F& hi) {
    if (!(h > 0)) throw ArgumentError("finite-difference step must be positive");
    if (x - h < lo || x + h > hi) throw DomainError("finite-difference step leaves the interval");
    return F((f(F(x + h)) - 2 * f(x) + f(F(x - h))) / (h * h));
}

/// (f(x+h) - f(x-h)) / (2h) under the same interval rule.
template <class F>
F finite_difference_d1(const std::function<F(const F&)>& f, const F& x, const F& h, const F& lo,
                       const F& hi) {
    if (!(h > 0)) throw ArgumentError("finite-difference step must be positive");
    if (x - h < lo || x + h > hi) throw DomainError("finite-difference step leaves the interval");
    return F((f(F(x + h)) - f(F(x - h))) / (2 * h));
}

// ---------------------------------------------------------------------------
// Quadrature

/// Adaptive Gauss-Kronrod over [a, b] after splitting at `breaks`. The
/// integrand must be smooth between consecutive breaks.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        std::vector<double> breaks = {}, double abs_tol = 1e-10) {
    using boost::math::quadrature::gauss_kronrod;
    if (!(a <= b)) throw ArgumentError("integration bounds out of order");
    breaks.push_back(a);
    breaks.push_back(b);
    std::sort(breaks.begin(), breaks.end());
    double total = 0;
    double total_error = 0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double lo = std::max(a, breaks[i]);
        const double hi = std::min(b, breaks[i + 1]);
        if (!(lo < hi)) continue;
        // Integrating over t in [0, 1] pins the error's reference scale: Boost
        // measures it on the [-1, 1] image, so the absolute error is half of it.
        const double width = hi - lo;
        auto unit = [&](double t) { return width * f(lo + width * t); };
        double error = 0;
        total += gauss_kronrod<double, 31>::integrate(unit, 0.0, 1.0, 15, 1e-11, &error);
        total_error += error / 2;
    }
    if (total_error > abs_tol)
        throw QuadratureError("quadrature error estimate " + format_scalar(total_error) + " exceeds " +
                              format_scalar(abs_tol));
    return total;
}

/// Area of the part of cell (n, n') under the curve xy = k, integrated by
/// vertical slices. For n = n' the cell is the triangle n <= x <= y <= n+1.
inline double area_quadrature_oracle(long n, long n_prime, double k, double abs_tol = 1e-10) {
    if (n < 1 || n_prime < n) throw ArgumentError("cell needs 1 <= n <= n'");
    const bool triangle = n == n_prime;
    const double top = static_cast<double>(n_prime + 1);
    auto height = [&](double x) {
        const double bottom = triangle ? x : static_cast<double>(n_prime);
        return std::max(0.0, std::min(k / x, top) - bottom);
    };
    return integrate(height, static_cast<double>(n), static_cast<double>(n + 1),
                     {k / top, k / static_cast<double>(n_prime), std::sqrt(k)}, abs_tol);
}

// ---------------------------------------------------------------------------
// Region geometry

/// Type of cell (n, n') for the curve xy = k, read off from the edges the
/// curve crosses. Nothing when the curve meets the cell in at most one point.
/// An edge pair matching none of the five types throws TheoremViolation.
inline std::optional<RegionType> geometric_region_oracle(double k, long n, long n_prime) {
    if (k == std::floor(k)) throw ArgumentError("geometric oracle needs non-integer k");
    if (n < 1 || n_prime < n) throw ArgumentError("cell needs 1 <= n <= n'");
    const double x0 = static_cast<double>(n);
    const double x1 = x0 + 1;
    const double y0 = static_cast<double>(n_prime);
    const double y1 = y0 + 1;
    auto inside = [](double v, double lo, double hi) { return lo < v && v < hi; };

    const bool left = inside(k / x0, y0, y1);
    const bool top = inside(k / y1, x0, x1);
    if (n == n_prime) {
        const bool diagonal = inside(std::sqrt(k), x0, x1);
        const int hits = left + top + diagonal;
        if (hits < 2) return std::nullopt;
        if (left && diagonal && !top) return RegionType::T7;
        if (top && diagonal && !left) return RegionType::T8;
        throw TheoremViolation("diagonal cell (" + std::to_string(n) + ", " + std::to_string(n) +
                               ") crossed on an unexpected edge pair");
    }
    const bool right = inside(k / x1, y0, y1);
    const bool bottom = inside(k / y0, x0, x1);
    const int hits = left + top + right + bottom;
    if (hits < 2) return std::nullopt;
    if (hits == 2) {
        if (left && bottom) return RegionType::T2;
        if (top && bottom) return RegionType::T3;
        if (top && right) return RegionType::T5;
    }
    throw TheoremViolation("cell (" + std::to_string(n) + ", " + std::to_string(n_prime) +
                           ") crossed on an edge pair with no region type");
}

/// All cells with n >= 2, n' >= n that the oracle types for k, sorted.
inline std::vector<RegionEntry> geometric_regions(double k) {
    std::vector<RegionEntry> out;
    const long n_max = static_cast<long>(std::sqrt(k)) + 1;
    for (long n = 2; n <= n_max; ++n)
        for (long np = n; np <= static_cast<long>(k / n) + 1; ++np)
            if (auto t = geometric_region_oracle(k, n, np)) out.push_back({{n, np}, *t});
    return out;
}

// ---------------------------------------------------------------------------
// Deformed-plane areas

/// Area of psi x psi applied to {x >= 2, y >= x, k_lo <= xy <= k_hi}:
///     int_2^sqrt(k_hi) psi'(x) [psi(k_hi/x) - psi(max(x, k_lo/x))]_+ dx.
inline double deformed_strip_area(const PrimeCoding<double>& c, double k_lo, double k_hi,
                                  double abs_tol = 1e-10) {
    if (!(4 <= k_lo && k_lo <= k_hi)) throw ArgumentError("strip needs 4 <= k_lo <= k_hi");
    const double end = std::sqrt(k_hi);
    auto integrand = [&](double x) {
        const double hi = c.psi(k_hi / x);
        const double lo = c.psi(std::max(x, k_lo / x));
        return c.right_derivative(x) * std::max(0.0, hi - lo);
    };
    // Kinks: integer x, x where k/x is an integer, and sqrt(k_lo).
    std::vector<double> breaks{std::sqrt(k_lo)};
    for (long m = 3; m <= static_cast<long>(end); ++m) breaks.push_back(static_cast<double>(m));
    for (double k : {k_lo, k_hi})
        for (long m = static_cast<long>(std::ceil(k / end)); m <= static_cast<long>(k / 2); ++m)
            breaks.push_back(k / static_cast<double>(m));
    return integrate(integrand, 2.0, end, std::move(breaks), abs_tol);
}

/// Deformed area of {x >= 2, y >= x, xy <= k}.
inline double hat_AI_quadrature(const PrimeCoding<double>& c, double k) {
    return deformed_strip_area(c, 4.0, k);
}

/// Deformed area of {x >= 2, y >= x, alpha - k <= xy <= alpha - 4}.
inline double hat_AS_quadrature(const PrimeCoding<double>& c, long alpha, double k) {
    return deformed_strip_area(c, static_cast<double>(alpha) - k, static_cast<double>(alpha - 4));
}

}  // namespace hyperclass
