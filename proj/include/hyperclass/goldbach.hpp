#pragma once

// Construction of a coding whose total-area second derivative is continuous
// on [4^, alpha^/2^], and the checks that come with it.
//
// Lower slopes (indices 2..alpha/2-1) are built upward: free indices
// (3, 4 and the primes 5..alpha/2-1) multiply the previous square by a factor
// lambda^2 > 1; composite indices i >= 6 use xi_i^2 = (x_i / x_{i-1}) xi_{i-1}^2.
// Upper slopes (alpha/2+1..alpha-5) are built downward from a free xi_{alpha/2}
// so that every junction k0 in 5..alpha/2-1 is continuous.
//
// Products xi_i xi_j of forced slopes are generally irrational, so everything
// here runs in Real.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "hyperclass/coding.hpp"
#include "hyperclass/errors.hpp"
#include "hyperclass/essential_points.hpp"
#include "hyperclass/numeric.hpp"
#include "hyperclass/polynomial.hpp"
#include "hyperclass/primes.hpp"
#include "hyperclass/total_area.hpp"

namespace hyperclass {

/// Even alpha >= 16 with alpha/2 and alpha-3 composite.
inline bool is_in_N(long alpha) {
    return alpha >= 16 && alpha % 2 == 0 && !is_prime(alpha / 2) && !is_prime(alpha - 3);
}

/// Indices whose lambda is free: 3, 4 and the primes 5..alpha/2-1.
inline std::vector<long> free_indices(long alpha) {
    std::vector<long> out{3, 4};
    for (long p : primes_between(5, alpha / 2 - 1)) out.push_back(p);
    return out;
}

struct GoldbachSpec {
    long alpha = 18;
    Real xi2_sq = 1;
    std::optional<Real> xi_half_sq;   // drawn when absent
    std::map<long, Real> lambda_sq;   // per free index; missing ones are drawn
    std::optional<Real> scalar_u;     // lambda_i = u for every free index
    std::uint64_t rng_seed = 0;
};

enum class SlopeOrigin {
    base,                   // xi_2
    random_choice,          // free lambda index, or xi_{alpha/2}
    forced_composite_ratio,
    forced_upper_ratio,
    forced_prime_junction,
    filler,                 // indices 0, 1 and above alpha-5
};

inline std::string_view to_string(SlopeOrigin o) {
    switch (o) {
        case SlopeOrigin::base: return "base";
        case SlopeOrigin::random_choice: return "random_choice";
        case SlopeOrigin::forced_composite_ratio: return "forced_composite_ratio";
        case SlopeOrigin::forced_upper_ratio: return "forced_upper_ratio";
        case SlopeOrigin::forced_prime_junction: return "forced_prime_junction";
        case SlopeOrigin::filler: return "filler";
    }
    return "?";
}

/// Result of the upward pass. xi_sq/xi hold indices 0..alpha/2-1 (0 and 1
/// are filler); x holds x_j for j = 4..alpha-5 (entries below 4 unused).
struct LowerState {
    long alpha = 0;
    std::map<long, Real> lambda_sq;  // resolved, one per free index
    std::vector<Real> xi_sq;
    std::vector<Real> xi;
    std::vector<Real> x;
    std::vector<SlopeOrigin> origin;

    const Real& x_at(long j) const {
        if (j < 4 || j >= static_cast<long>(x.size())) throw RangeError("x_" + std::to_string(j) + " not built");
        return x[static_cast<std::size_t>(j)];
    }
    /// |y_{k0}| = x_{alpha-k0-1}.
    const Real& abs_y(long k0) const { return x_at(alpha - k0 - 1); }
};

struct ConstructedCoding {
    long alpha = 0;
    std::uint64_t rng_seed = 0;
    Real xi2_sq;
    Real xi_half_sq;
    std::map<long, Real> lambda_sq;
    std::vector<Real> xi_sq;  // 0..alpha
    std::vector<SlopeOrigin> origin;
    std::vector<Real> x;      // x_j, j = 4..alpha-5 (lower entries unused)
    PrimeCoding<Real> coding;

    const Real& x_at(long j) const {
        if (j < 4 || j >= static_cast<long>(x.size())) throw RangeError("x_" + std::to_string(j) + " not built");
        return x[static_cast<std::size_t>(j)];
    }
    const Real& abs_y(long k0) const { return x_at(alpha - k0 - 1); }
};

namespace detail {

/// Uniform on (1, 4] from the top 53 bits of a 64-bit draw; platform
/// independent, unlike std::uniform_real_distribution.
inline Real draw_lambda_sq(std::mt19937_64& rng) {
    const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
    return Real(4.0 - 3.0 * unit);
}

/// Relative tolerance for identities that hold exactly in real arithmetic,
/// scaled to the working precision.
inline double working_tolerance() {
    return std::ldexp(1.0, -static_cast<int>(real_precision_bits() / 2));
}

inline void require_spec(const GoldbachSpec& spec) {
    if (!is_in_N(spec.alpha))
        throw ArgumentError("alpha = " + std::to_string(spec.alpha) +
                            " must be even, >= 16, with alpha/2 and alpha-3 composite");
    if (!(spec.xi2_sq > 0)) throw ArgumentError("xi_2^2 must be positive");
    if (spec.xi_half_sq && !(*spec.xi_half_sq > 0)) throw ArgumentError("xi_{alpha/2}^2 must be positive");
    if (spec.scalar_u && !(*spec.scalar_u > 1)) throw ArgumentError("scalar u must exceed 1");
    if (spec.scalar_u && !spec.lambda_sq.empty())
        throw ArgumentError("give either per-index lambdas or a scalar u, not both");
    const auto free = free_indices(spec.alpha);
    for (const auto& [i, l2] : spec.lambda_sq) {
        if (std::find(free.begin(), free.end(), i) == free.end())
            throw ArgumentError("index " + std::to_string(i) + " has no free lambda");
        if (!(l2 > 1)) throw ArgumentError("lambda_" + std::to_string(i) + "^2 must exceed 1");
    }
}

}  // namespace detail

/// Upward pass: slopes 2..alpha/2-1 and x_4..x_{alpha-5}.
inline LowerState build_lower(const GoldbachSpec& spec) {
    detail::require_spec(spec);
    const long alpha = spec.alpha;
    const long half = alpha / 2;
    std::mt19937_64 rng(spec.rng_seed);

    LowerState s;
    s.alpha = alpha;
    for (long i : free_indices(alpha)) {
        if (spec.scalar_u) {
            s.lambda_sq[i] = Real(*spec.scalar_u * *spec.scalar_u);
        } else if (auto it = spec.lambda_sq.find(i); it != spec.lambda_sq.end()) {
            s.lambda_sq[i] = it->second;
        } else {
            s.lambda_sq[i] = detail::draw_lambda_sq(rng);
        }
    }

    s.xi_sq.assign(static_cast<std::size_t>(half), Real(0));
    s.xi.assign(static_cast<std::size_t>(half), Real(0));
    s.origin.assign(static_cast<std::size_t>(half), SlopeOrigin::filler);
    s.x.assign(static_cast<std::size_t>(alpha - 4), Real(0));

    long known = 1;        // slopes 0..known are set
    long next_x = 4;       // first x not yet evaluated
    auto set_slope = [&](long i, const Real& sq, SlopeOrigin o) {
        if (i != known + 1) throw TheoremViolation("slope " + std::to_string(i) + " set out of order");
        s.xi_sq[i] = sq;
        s.xi[i] = sqrt(sq);
        s.origin[i] = o;
        known = i;
        // x_j references slopes up to floor(j/2).
        for (; next_x <= alpha - 5 && next_x / 2 <= known; ++next_x)
            s.x[next_x] = lower_essential_poly(next_x).evaluate(std::span<const Real>(s.xi.data(), known + 1));
    };
    auto x_of = [&](long j) -> const Real& {
        if (j >= next_x) throw TheoremViolation("x_" + std::to_string(j) + " needed before its slopes exist");
        return s.x[j];
    };

    set_slope(2, spec.xi2_sq, SlopeOrigin::base);
    for (long i = 3; i <= half - 1; ++i) {
        if (auto it = s.lambda_sq.find(i); it != s.lambda_sq.end()) {
            set_slope(i, Real(it->second * s.xi_sq[i - 1]), SlopeOrigin::random_choice);
        } else {
            set_slope(i, Real(x_of(i) / x_of(i - 1) * s.xi_sq[i - 1]), SlopeOrigin::forced_composite_ratio);
        }
        if (!(s.xi[i] > s.xi[i - 1]))
            throw TheoremViolation("lower slopes stopped increasing at index " + std::to_string(i));
    }
    if (next_x <= alpha - 5) throw TheoremViolation("lower pass left x values unevaluated");

    // Fillers below xi_2 keep 0 < xi_0 < xi_1 < xi_2.
    s.xi[0] = Real(s.xi[2] / 4);
    s.xi[1] = Real(s.xi[2] / 2);
    s.xi_sq[0] = Real(s.xi[0] * s.xi[0]);
    s.xi_sq[1] = Real(s.xi[1] * s.xi[1]);
    return s;
}

/// F_{r0} = ((alpha - r0)/r0) x_{r0-1} (1/xi_{r0-1}^2 - 1/xi_{r0}^2).
inline Real F_term(const LowerState& s, long r0) {
    if (r0 < 5 || r0 > s.alpha / 2 - 1) throw RangeError("F term index outside 5..alpha/2-1");
    const Real ratio = Real(s.alpha - r0) / Real(r0);
    return Real(ratio * s.x_at(r0 - 1) * (1 / s.xi_sq[r0 - 1] - 1 / s.xi_sq[r0]));
}

/// Downward pass: xi_{alpha/2}^2 from the spec (or drawn), then
/// alpha-k0 for k0 = alpha/2-1 down to 5. Indices above alpha-5 are fillers.
inline ConstructedCoding build_upper(const GoldbachSpec& spec, const LowerState& lower) {
    detail::require_spec(spec);
    const long alpha = spec.alpha;
    const long half = alpha / 2;
    if (lower.alpha != alpha) throw ArgumentError("lower state built for a different alpha");

    ConstructedCoding g;
    g.alpha = alpha;
    g.rng_seed = spec.rng_seed;
    g.xi2_sq = spec.xi2_sq;
    g.lambda_sq = lower.lambda_sq;
    g.x = lower.x;
    g.xi_sq = lower.xi_sq;
    g.origin = lower.origin;
    g.xi_sq.resize(static_cast<std::size_t>(alpha + 1), Real(0));
    g.origin.resize(static_cast<std::size_t>(alpha + 1), SlopeOrigin::filler);

    if (spec.xi_half_sq) {
        g.xi_half_sq = *spec.xi_half_sq;
    } else if (spec.scalar_u) {
        g.xi_half_sq = Real(*spec.scalar_u * *spec.scalar_u * lower.xi_sq[half - 1]);
    } else {
        // The draw sequence continues after the lambdas consumed by build_lower.
        std::mt19937_64 rng(spec.rng_seed);
        for (const auto& [i, l2] : lower.lambda_sq)
            if (!spec.lambda_sq.contains(i)) rng.discard(1);
        g.xi_half_sq = Real(detail::draw_lambda_sq(rng) * lower.xi_sq[half - 1]);
    }
    g.xi_sq[half] = g.xi_half_sq;
    g.origin[half] = SlopeOrigin::random_choice;

    const double tol = detail::working_tolerance();
    for (long k0 = half - 1; k0 >= 5; --k0) {
        const long idx = alpha - k0;
        const Real& prev = g.xi_sq[idx - 1];
        if (is_prime(k0)) {
            if (!nearly_equal(lower.x_at(k0 - 1), lower.x_at(k0), tol))
                throw TheoremViolation("x_{p-1} != x_p at prime p = " + std::to_string(k0));
            const Real denom = lower.abs_y(k0) / prev + F_term(lower, k0);
            if (!(denom > 0)) throw TheoremViolation("non-positive junction denominator at k0 = " + std::to_string(k0));
            g.xi_sq[idx] = Real(lower.abs_y(k0 - 1) / denom);
            g.origin[idx] = SlopeOrigin::forced_prime_junction;
        } else {
            g.xi_sq[idx] = Real(lower.abs_y(k0 - 1) / lower.abs_y(k0) * prev);
            g.origin[idx] = SlopeOrigin::forced_upper_ratio;
        }
    }

    std::vector<Real> xi(static_cast<std::size_t>(alpha + 1));
    for (long i = 0; i <= alpha - 5; ++i) xi[i] = sqrt(g.xi_sq[i]);
    for (long i = alpha - 4; i <= alpha; ++i) {
        xi[i] = Real(xi[i - 1] + 1);
        g.xi_sq[i] = Real(xi[i] * xi[i]);
    }
    g.coding = PrimeCoding<Real>(std::move(xi));
    if (!g.coding.is_strict_through(half - 1))
        throw TheoremViolation("constructed coding is not strictly increasing through alpha/2-1");
    return g;
}

inline ConstructedCoding build_goldbach(const GoldbachSpec& spec) { return build_upper(spec, build_lower(spec)); }

// ---------------------------------------------------------------------------
// Checks

struct JunctionGap {
    long k0;
    Real left;
    Real right;
    Real gap;  // relative
};

/// Left and right limits of the total second derivative at every junction
/// k0 = 5..alpha/2-1, recomputed from the coding's slopes alone.
inline std::vector<JunctionGap> junction_gaps(const PrimeCoding<Real>& c, long alpha) {
    std::vector<JunctionGap> out;
    for (long k0 = 5; k0 <= alpha / 2 - 1; ++k0) {
        const Real k(k0);
        const Real left = hat_AT_second_derivative(c, alpha, k, Side::left);
        const Real right = hat_AT_second_derivative(c, alpha, k, Side::right);
        out.push_back({k0, left, right, relative_gap(left, right)});
    }
    return out;
}

struct ContinuityReport {
    Real max_gap;
    long worst_k0;
};

/// Throws ConstructionFailure (with the offending k0) when any junction gap
/// exceeds rel_tol.
inline ContinuityReport verify_continuity(const PrimeCoding<Real>& c, long alpha,
                                          double rel_tol = kDefaultRelativeTolerance) {
    ContinuityReport r{Real(0), 0};
    for (const auto& j : junction_gaps(c, alpha))
        if (j.gap > r.max_gap || r.worst_k0 == 0) r = {j.gap, j.k0};
    if (r.max_gap > rel_tol)
        throw ConstructionFailure("junction gap " + format_scalar(r.max_gap) + " at k0 = " +
                                      std::to_string(r.worst_k0) + " exceeds tolerance",
                                  r.worst_k0);
    return r;
}

/// The continuous second derivative at a deformed abscissa k^ in
/// [4^, alpha^/2^]. Junctions use the right piece.
inline Real eval_G(const PrimeCoding<Real>& c, long alpha, const Real& k_hat, Side side = Side::right) {
    const Real k = c.psi_inv(k_hat);
    if (k < 4 || k > Real(alpha / 2)) throw DomainError("k^ outside [4^, alpha^/2^]");
    return hat_AT_second_derivative(c, alpha, k, side);
}

/// Closed-form identities that any construction must satisfy, as maximum
/// relative gaps against the recursively built values.
struct IdentityReport {
    Real last_upper_gap;     // xi_{alpha-5}^2 = |y_4| (|y_{a/2-1}|/xi_{a/2}^2 + sum F)^-1
    Real junction_ratio_gap; // x_p / xi_{p-1}^2 = prod of 1/lambda^2 over earlier free indices / 2
    Real f_term_gap;         // F_p in closed form
};

inline IdentityReport check_identities(const ConstructedCoding& g) {
    const long alpha = g.alpha;
    const long half = alpha / 2;
    const auto primes = primes_between(5, half - 1);
    LowerState s;
    s.alpha = alpha;
    s.xi_sq = g.xi_sq;
    s.x = g.x;

    IdentityReport r{Real(0), Real(0), Real(0)};
    Real f_sum(0);
    for (long p : primes) f_sum += F_term(s, p);
    const Real closed = g.abs_y(4) / (g.abs_y(half - 1) / g.xi_half_sq + f_sum);
    r.last_upper_gap = relative_gap(closed, g.xi_sq[alpha - 5]);

    const Real& l3 = g.lambda_sq.at(3);
    const Real& l4 = g.lambda_sq.at(4);
    Real running = 1 / (2 * l3 * l4);  // times prod 1/lambda_j^2 over primes j < p
    for (long p : primes) {
        const Real ratio = Real(alpha - p) / Real(p);
        const Real closed_f = ratio * running * (1 - 1 / g.lambda_sq.at(p));
        r.f_term_gap = std::max(r.f_term_gap, relative_gap(closed_f, F_term(s, p)));
        if (p != 5) {
            const Real lhs = g.x_at(p) / g.xi_sq[p - 1];
            r.junction_ratio_gap = std::max(r.junction_ratio_gap, relative_gap(lhs, running));
        }
        running /= g.lambda_sq.at(p);
    }
    return r;
}

struct ScalingReport {
    Real xi_sq_gap;   // max |xi_i^2(c) / (c xi_i^2) - 1|, i <= alpha/2-1
    Real x_gap;       // max |x_j(c) / (c x_j) - 1|
    Real ratio_gap;   // max change of x_{k0-1}/x_{k0} and |y_{k0-1}|/|y_{k0}|
};

/// Rebuilds with xi_2^2 scaled by `factor` (same lambdas and xi_{alpha/2}^2
/// scaled alike) and measures how far the result is from exact homogeneity.
/// Throws TheoremViolation("scaling_violation") beyond rel_tol.
inline ScalingReport reduced_form_check(const GoldbachSpec& spec, const Real& factor,
                                        double rel_tol = kDefaultRelativeTolerance) {
    if (!(factor > 0)) throw ArgumentError("scale factor must be positive");
    const ConstructedCoding base = build_goldbach(spec);
    GoldbachSpec scaled = spec;
    scaled.xi2_sq = Real(spec.xi2_sq * factor);
    scaled.xi_half_sq = Real(base.xi_half_sq * factor);
    scaled.scalar_u.reset();
    scaled.lambda_sq = base.lambda_sq;
    const ConstructedCoding other = build_goldbach(scaled);

    const long half = spec.alpha / 2;
    ScalingReport r{Real(0), Real(0), Real(0)};
    for (long i = 2; i <= half - 1; ++i)
        r.xi_sq_gap = std::max(r.xi_sq_gap, relative_gap(Real(base.xi_sq[i] * factor), other.xi_sq[i]));
    for (long j = 4; j <= spec.alpha - 5; ++j)
        r.x_gap = std::max(r.x_gap, relative_gap(Real(base.x_at(j) * factor), other.x_at(j)));
    for (long k0 = 5; k0 <= half - 1; ++k0) {
        r.ratio_gap = std::max(r.ratio_gap, relative_gap(Real(base.x_at(k0 - 1) / base.x_at(k0)),
                                                         Real(other.x_at(k0 - 1) / other.x_at(k0))));
        r.ratio_gap = std::max(r.ratio_gap, relative_gap(Real(base.abs_y(k0 - 1) / base.abs_y(k0)),
                                                         Real(other.abs_y(k0 - 1) / other.abs_y(k0))));
    }
    if (r.xi_sq_gap > rel_tol || r.x_gap > rel_tol || r.ratio_gap > rel_tol)
        throw TheoremViolation("scaling_violation", "rebuilt coding is not homogeneous in xi_2^2");
    return r;
}

struct ScalarLimitRow {
    Real u;
    long k0;
    Real x;
    Real abs_y;
};

struct ScalarLimitReport {
    std::vector<ScalarLimitRow> rows;
    std::vector<Real> max_deviation;  // per u, max over k0 of |x - xi2^2/2| and ||y| - xi2^2/2|
    bool monotone = true;             // deviations decrease along u_list
    bool converged = true;            // below 1e-4 xi2^2 wherever u - 1 <= 1e-6
};

/// Builds the scalar construction for each u (in the given order, normally
/// approaching 1 from above) and tabulates x_{k0}, |y_{k0}| for k0 = 4..alpha/2-1.
inline ScalarLimitReport scalar_limit_sweep(long alpha, const std::vector<Real>& u_list, const Real& xi2_sq) {
    ScalarLimitReport report;
    const Real target = xi2_sq / 2;
    for (const Real& u : u_list) {
        GoldbachSpec spec;
        spec.alpha = alpha;
        spec.xi2_sq = xi2_sq;
        spec.scalar_u = u;
        const LowerState s = build_lower(spec);
        Real worst(0);
        for (long k0 = 4; k0 <= alpha / 2 - 1; ++k0) {
            report.rows.push_back({u, k0, s.x_at(k0), s.abs_y(k0)});
            worst = std::max(worst, abs_value(Real(s.x_at(k0) - target)));
            worst = std::max(worst, abs_value(Real(s.abs_y(k0) - target)));
        }
        if (!report.max_deviation.empty() && !(worst < report.max_deviation.back())) report.monotone = false;
        if (u - 1 <= Real("1.000000001e-6") && !(worst <= Real(1e-4) * xi2_sq)) report.converged = false;
        report.max_deviation.push_back(worst);
    }
    return report;
}

}  // namespace hyperclass
