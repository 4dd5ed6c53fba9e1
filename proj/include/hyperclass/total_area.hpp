#pragma once

// Second derivative of the total deformed area A^_T = A^_I + A^_S on
// [4^, alpha^ / 2^]. On each piece [k0^, (k0+1)^]
//
//     A^_T''(k^) = A_{k0}(k) x_{k0} + B_{k0}(k) y_{k0},
//
// where the lower term is differentiated in k^ = psi(k) and the upper term in
// w^ = psi(alpha - k), the variable its own pieces are affine in.

#include <algorithm>
#include <string>

#include "hyperclass/areas.hpp"
#include "hyperclass/coding.hpp"
#include "hyperclass/errors.hpp"
#include "hyperclass/numeric.hpp"
#include "hyperclass/polynomial.hpp"
#include "hyperclass/regions.hpp"

namespace hyperclass {

/// Which piece to use when k is an integer. Non-integer k ignores it.
enum class Side { left, right };

/// Piece index k0 for k in [4, alpha/2], clamped to 4..alpha/2-1.
template <Scalar T>
long piece_of(long alpha, const T& k, Side side) {
    if (alpha < 16 || alpha % 2 != 0) throw DomainError("alpha must be even and >= 16");
    if (k < 4 || k > T(alpha / 2)) throw DomainError("k outside [4, alpha/2]");
    long k0 = floor_long(k);
    if (side == Side::left && is_integral(k)) --k0;
    return std::clamp(k0, 4L, alpha / 2 - 1);
}

template <Scalar T>
T hat_AT_second_derivative(const PrimeCoding<T>& c, long alpha, const T& k, Side side = Side::right) {
    const long k0 = piece_of(alpha, k, side);
    if (c.last_index() < alpha - 5) throw DomainError("coding must be defined through index alpha-5");
    const T x = lower_essential_poly(k0).evaluate(c);
    const T y = upper_essential_poly(alpha, k0).evaluate(c);
    return T(weight_A(c, k0, k) * x + weight_B(c, alpha, k0, k) * y);
}

/// Same quantity assembled region by region: each essential region of k0
/// contributes (xi_n xi_n' / xi_{k0}^2) A''(k), each of alpha-k0-1 contributes
/// -(xi_n xi_n' / xi_{alpha-k0-1}^2) A''(alpha-k).
template <Scalar T>
T hat_AT_second_derivative_termwise(const PrimeCoding<T>& c, long alpha, const T& k,
                                    Side side = Side::right) {
    const long k0 = piece_of(alpha, k, side);
    auto region_sum = [&](long kk0, const T& kk) {
        T sum(0);
        for (const auto& e : enumerate_regions(kk0).entries) {
            const int h = d2_halves(e.type);
            if (h == 0) continue;
            sum += c.slope(e.index.n) * c.slope(e.index.n_prime) * T(h) / (2 * kk);
        }
        return sum;
    };
    const T& lo = c.slope(k0);
    const T& hi = c.slope(alpha - k0 - 1);
    const T w = T(alpha) - k;
    return T(region_sum(k0, k) / (lo * lo) - region_sum(alpha - k0 - 1, w) / (hi * hi));
}

/// Sum of hat areas over the essential regions of k0 at curve parameter k.
/// Differs from A^_I(k) by a constant on [k0, k0+1].
template <class F, Scalar T>
F essential_hat_area_sum(const PrimeCoding<T>& c, long k0, const F& k) {
    F sum(0);
    for (const auto& e : enumerate_regions(k0).entries) {
        const F jac = convert_scalar<F>(c.slope(e.index.n)) * convert_scalar<F>(c.slope(e.index.n_prime));
        sum += jac * area_formula(e.type, e.index.n, e.index.n_prime, k).area;
    }
    return sum;
}

}  // namespace hyperclass
