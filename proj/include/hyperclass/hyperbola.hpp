#pragma once

// Transformed anti-diagonals and hyperbolas in the deformed plane, their
// one-sided derivatives, and the point/number classification built on the
// derivative jumps.

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "hyperclass/coding.hpp"
#include "hyperclass/errors.hpp"
#include "hyperclass/numeric.hpp"

namespace hyperclass {

template <Scalar T>
struct OneSidedDerivatives {
    T left;
    T right;

    bool differentiable(double rel_tol = kDefaultRelativeTolerance) const {
        return nearly_equal(left, right, rel_tol);
    }
};

/// A point of the deformed curve x^ (x) y^ = k^ together with its pre-image.
template <Scalar T>
struct CurvePoint {
    T u;  // deformed abscissa
    T v;  // deformed ordinate
    T x;
    T y;
    T k;
};

/// `crease` marks a jump at a point with exactly one natural coordinate. Such
/// points exist on every deformed hyperbola and witness nothing about k.
enum class PointKind { smooth, crease, semi_vortex, vortex };

enum class NumberClass { prime, composite_natural, non_natural };

inline std::string_view to_string(PointKind kind) {
    switch (kind) {
        case PointKind::smooth: return "smooth";
        case PointKind::crease: return "crease";
        case PointKind::semi_vortex: return "semi_vortex";
        case PointKind::vortex: return "vortex";
    }
    return "?";
}

inline std::string_view to_string(NumberClass cls) {
    switch (cls) {
        case NumberClass::prime: return "prime";
        case NumberClass::composite_natural: return "composite_natural";
        case NumberClass::non_natural: return "non_natural";
    }
    return "?";
}

namespace detail {

/// Natural-number test used by the classifier. Floats within the relative
/// tolerance of an integer are snapped to it.
template <Scalar T>
bool snap_natural(T& value, double rel_tol) {
    if constexpr (is_exact_v<T>) {
        return is_integral(value) && value > 0;
    } else {
        const T nearest = T(floor_long(T(value + T(0.5))));
        if (nearest < 1) return false;
        if (abs_value(T(value - nearest)) <= T(rel_tol) * nearest) {
            value = nearest;
            return true;
        }
        return false;
    }
}

inline long isqrt(long n) {
    if (n < 0) throw DomainError("isqrt of a negative number");
    long r = static_cast<long>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

template <Scalar T>
void require_identifies_primes(const PrimeCoding<T>& c) {
    if (!c.is_strict() && !c.identifies_primes())
        throw ArgumentError("classification needs a coding that identifies primes");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Anti-diagonal x + y = alpha

/// f^_alpha(u) = psi(alpha - psi^-1(u)) on [0, alpha^].
template <Scalar T>
T fhat_eval(const PrimeCoding<T>& c, long alpha, const T& u) {
    if (alpha < 1 || alpha > c.last_index() + 1) throw RangeError("alpha outside the coding domain");
    if (u < 0 || u > c.psi(T(alpha))) throw DomainError("f^ argument outside [0, alpha^]");
    return c.psi(T(T(alpha) - c.psi_inv(u)));
}

/// One-sided derivatives of f^_alpha at the natural abscissa m^:
/// left = -b_{alpha-m}/a_m, right = -a_{alpha-m}/b_m.
template <Scalar T>
OneSidedDerivatives<T> fhat_one_sided(const PrimeCoding<T>& c, long alpha, long m) {
    if (m < 1 || m > alpha - 1) throw RangeError("m must lie in 1..alpha-1");
    const auto [am, bm] = c.one_sided_slopes(m);
    const auto [ar, br] = c.one_sided_slopes(alpha - m);
    return {T(-br / am), T(-ar / bm)};
}

// ---------------------------------------------------------------------------
// Hyperbola x y = k

/// h^_k(u) = psi(k / psi^-1(u)).
template <Scalar T>
T hhat_eval(const PrimeCoding<T>& c, const T& k, const T& u) {
    if (!(k > 0)) throw DomainError("hyperbola parameter k must be positive");
    const T x = c.psi_inv(u);
    if (!(x > 0)) throw DomainError("h^ needs psi^-1(u) > 0");
    const T y = k / x;
    if (y > c.domain_limit()) throw DomainError("k / psi^-1(u) exceeds the coding domain");
    return c.psi(y);
}

/// One-sided derivatives of h^_k at u. Moving right in x moves y down, so
///     right = -(k/x^2) psi'_-(y) / psi'_+(x),
///     left  = -(k/x^2) psi'_+(y) / psi'_-(x),
/// which covers all four natural/non-natural coordinate cases at once.
template <Scalar T>
OneSidedDerivatives<T> hhat_one_sided(const PrimeCoding<T>& c, const T& k, const T& u,
                                      double rel_tol = kDefaultRelativeTolerance) {
    if (!(k > 0)) throw DomainError("hyperbola parameter k must be positive");
    T x = c.psi_inv(u);
    if (!(x > 0)) throw DomainError("h^ derivative needs psi^-1(u) > 0");
    detail::snap_natural(x, rel_tol);
    T y = k / x;
    detail::snap_natural(y, rel_tol);
    if (!(y < c.domain_limit()) || !(x < c.domain_limit()))
        throw DomainError("point too close to the end of the coding domain");
    const T scale = k / (x * x);
    return {T(-scale * c.right_derivative(y) / c.left_derivative(x)),
            T(-scale * c.left_derivative(y) / c.right_derivative(x))};
}

template <Scalar T>
CurvePoint<T> curve_point(const PrimeCoding<T>& c, const T& k, const T& x) {
    const T y = k / x;
    return {c.psi(x), c.psi(y), x, y, k};
}

/// Classifies the point of x^ (x) y^ = k^ above u^. The coding must identify
/// primes and the point must lie in the working quadrant 1 <= x <= y.
template <Scalar T>
PointKind classify_point(const PrimeCoding<T>& c, const T& k, const T& u,
                         double rel_tol = kDefaultRelativeTolerance) {
    detail::require_identifies_primes(c);
    T x = c.psi_inv(u);
    const bool x_natural = detail::snap_natural(x, rel_tol);
    T y = k / x;
    const bool y_natural = detail::snap_natural(y, rel_tol);
    if (x < 1 || y < x)
        throw DomainError("point outside the working quadrant 1 <= x <= y");

    const bool jump = !hhat_one_sided(c, k, u, rel_tol).differentiable(rel_tol);
    if (jump != (x_natural || y_natural))
        throw TheoremViolation("derivative jump at x = " + format_scalar(x) +
                               " disagrees with the natural-coordinate criterion");
    if (!jump) return PointKind::smooth;
    if (x_natural && y_natural) return x == 1 ? PointKind::semi_vortex : PointKind::vortex;
    return PointKind::crease;
}

template <Scalar T>
struct ClassifiedPoint {
    CurvePoint<T> point;
    PointKind kind;
};

template <Scalar T>
struct CurveScan {
    NumberClass number_class;
    std::vector<ClassifiedPoint<T>> jump_points;  // ascending in x
};

/// Scans x^ (x) y^ = k^ over 1 <= x <= sqrt(k) for derivative jumps. Jumps
/// only occur where a coordinate is natural, so the candidates are the
/// natural abscissae 1..floor(sqrt k) and the pre-images x = k/n' of the
/// natural ordinates n' = ceil(sqrt k)..floor(k).
template <Scalar T>
CurveScan<T> scan_curve(const PrimeCoding<T>& c, const T& k,
                        double rel_tol = kDefaultRelativeTolerance) {
    if (!(k > 1)) throw DomainError("classification needs k > 1");
    if (!(k < c.domain_limit())) throw DomainError("k must be below the coding domain limit N+1");
    detail::require_identifies_primes(c);

    const long k_floor = floor_long(k);
    const long root_floor = detail::isqrt(k_floor);
    const long root_ceil = (root_floor * root_floor == k_floor && is_integral(k)) ? root_floor
                                                                                 : root_floor + 1;
    std::vector<T> abscissae;
    for (long n = 1; n <= root_floor; ++n) abscissae.push_back(T(n));
    for (long np = k_floor; np >= root_ceil; --np) {
        T x = k / T(np);
        if (detail::snap_natural(x, rel_tol)) continue;  // already listed
        if (x * x > k) continue;
        abscissae.push_back(x);
    }
    std::sort(abscissae.begin(), abscissae.end());

    CurveScan<T> scan{NumberClass::non_natural, {}};
    int semi = 0;
    int vortices = 0;
    for (const T& x : abscissae) {
        const PointKind kind = classify_point(c, k, c.psi(x), rel_tol);
        if (kind == PointKind::smooth) continue;
        semi += kind == PointKind::semi_vortex;
        vortices += kind == PointKind::vortex;
        scan.jump_points.push_back({curve_point(c, k, x), kind});
    }
    if (semi > 1) throw TheoremViolation("more than one semi-vortex on a single curve");
    if (semi == 0 && vortices > 0) throw TheoremViolation("vortex without a semi-vortex");
    if (semi == 1) scan.number_class = vortices > 0 ? NumberClass::composite_natural : NumberClass::prime;
    return scan;
}

template <Scalar T>
NumberClass classify_number(const PrimeCoding<T>& c, const T& k,
                            double rel_tol = kDefaultRelativeTolerance) {
    return scan_curve(c, k, rel_tol).number_class;
}

}  // namespace hyperclass
