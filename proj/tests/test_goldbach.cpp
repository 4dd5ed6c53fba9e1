#include <gtest/gtest.h>

#include "hyperclass/essential_points.hpp"
#include "hyperclass/goldbach.hpp"
#include "hyperclass/oracles.hpp"
#include "support/example18.hpp"
#include "support/generators.hpp"

using namespace hyperclass;
using hyperclass::testing::Gen;

namespace {

constexpr double kTol = 1e-9;

GoldbachSpec spec_for(long alpha, std::uint64_t seed) {
    GoldbachSpec s;
    s.alpha = alpha;
    s.rng_seed = seed;
    return s;
}

class GoldbachTest : public ::testing::Test {
protected:
    void SetUp() override { set_real_precision_bits(128); }
};

}  // namespace

TEST(Membership, Examples) {
    EXPECT_TRUE(is_in_N(18));
    EXPECT_FALSE(is_in_N(16));
    EXPECT_TRUE(is_in_N(24));
    EXPECT_FALSE(is_in_N(20));  // 17 prime
    EXPECT_FALSE(is_in_N(19));
    EXPECT_FALSE(is_in_N(12));
}

TEST(Membership, MatchesDefinitionalSieve) {
    const auto table = sieve(10000);
    for (long a = 0; a <= 10000; ++a) {
        const bool want = a >= 16 && a % 2 == 0 && !table[a / 2] && !table[a - 3];
        EXPECT_EQ(is_in_N(a), want) << a;
    }
    for (long k = 2; k <= 50; ++k) EXPECT_TRUE(is_in_N(12 * k));
}

TEST(Membership, FreeIndices) {
    EXPECT_EQ(free_indices(18), (std::vector<long>{3, 4, 5, 7}));
    EXPECT_EQ(free_indices(36), (std::vector<long>{3, 4, 5, 7, 11, 13, 17}));
}

TEST_F(GoldbachTest, RejectsBadSpecs) {
    EXPECT_THROW(build_goldbach(spec_for(20, 0)), ArgumentError);
    auto s = spec_for(18, 0);
    s.lambda_sq[6] = 2;
    EXPECT_THROW(build_goldbach(s), ArgumentError);
    s = spec_for(18, 0);
    s.lambda_sq[3] = 1;
    EXPECT_THROW(build_goldbach(s), ArgumentError);
    s = spec_for(18, 0);
    s.scalar_u = Real(1);
    EXPECT_THROW(build_goldbach(s), ArgumentError);
    s = spec_for(18, 0);
    s.xi2_sq = 0;
    EXPECT_THROW(build_goldbach(s), ArgumentError);
}

TEST_F(GoldbachTest, WorkedExampleTable) {
    Gen gen(71);
    for (int trial = 0; trial < 5; ++trial) {
        GoldbachSpec s = spec_for(18, 0);
        for (long i : {3L, 4L, 5L, 7L}) s.lambda_sq[i] = Real(gen.uniform(1.1, 4.0));
        s.xi2_sq = Real(gen.uniform(0.5, 3.0));
        s.xi_half_sq = Real(gen.uniform(5.0, 30.0));
        const auto g = build_goldbach(s);
        const auto e = hyperclass::testing::example18(s.lambda_sq[3], s.lambda_sq[4], s.lambda_sq[5],
                                                      s.lambda_sq[7], s.xi2_sq, *s.xi_half_sq);
        for (const auto& [j, v] : e.x) EXPECT_LT(relative_gap(v, g.x_at(j)), kTol) << "x_" << j;
        for (const auto& [i, v] : e.xi_sq) EXPECT_LT(relative_gap(v, g.xi_sq[i]), kTol) << "xi_" << i << "^2";
        EXPECT_LT(relative_gap(Real(s.lambda_sq[7] * g.xi_sq[6]), g.xi_sq[7]), kTol);
        EXPECT_LT(relative_gap(Real(g.x_at(8) / g.x_at(7) * g.xi_sq[7]), g.xi_sq[8]), kTol);
    }
}

TEST_F(GoldbachTest, ScalarPolynomialForms) {
    for (const char* text : {"1.5", "1.1", "1.01", "2"}) {
        GoldbachSpec s = spec_for(24, 0);
        const Real u(text);
        s.scalar_u = u;
        const auto st = build_lower(s);
        EXPECT_LT(relative_gap(st.x_at(6), Real(u - 0.5)), kTol);
        EXPECT_LT(relative_gap(st.x_at(8), Real(u * u - 0.5)), kTol);
        EXPECT_LT(relative_gap(st.x_at(9), Real(1.5 * u * u - u)), kTol);
        EXPECT_LT(relative_gap(st.x_at(10), Real(u * u * u - u + 0.5 * u * u)), kTol);
    }
}

TEST_F(GoldbachTest, ContinuityAcrossSeeds) {
    for (long alpha : {18L, 24L, 36L, 48L, 120L}) {
        for (std::uint64_t seed = 1; seed <= 4; ++seed) {
            const auto g = build_goldbach(spec_for(alpha, seed));
            const auto rep = verify_continuity(g.coding, alpha, kTol);
            EXPECT_LE(rep.max_gap, kTol);
            const auto ids = check_identities(g);
            EXPECT_LT(ids.last_upper_gap, kTol);
            EXPECT_LT(ids.junction_ratio_gap, kTol);
            EXPECT_LT(ids.f_term_gap, kTol);
        }
    }
}

TEST_F(GoldbachTest, CompositeStepsAreRatioForced) {
    const auto g = build_goldbach(spec_for(48, 3));
    for (long i = 6; i <= 23; ++i) {
        if (is_prime(i)) {
            EXPECT_EQ(g.origin[i], SlopeOrigin::random_choice);
            continue;
        }
        EXPECT_EQ(g.origin[i], SlopeOrigin::forced_composite_ratio);
        EXPECT_LT(relative_gap(Real(g.xi_sq[i] * g.x_at(i - 1)), Real(g.xi_sq[i - 1] * g.x_at(i))), kTol);
    }
    EXPECT_EQ(g.origin[24], SlopeOrigin::random_choice);
    EXPECT_EQ(g.origin[48 - 5], SlopeOrigin::forced_prime_junction);
    EXPECT_EQ(g.origin[48 - 6], SlopeOrigin::forced_upper_ratio);
    EXPECT_EQ(g.origin[48], SlopeOrigin::filler);
}

TEST_F(GoldbachTest, CharacterizationSurvivesConstruction) {
    for (long alpha : {18L, 24L, 36L, 48L, 120L, 144L}) {
        const auto g = build_goldbach(spec_for(alpha, 7));
        EXPECT_EQ(goldbach_characterization(g.coding, alpha, kTol),
                  goldbach_partitions_oracle(alpha).inside_window);
    }
}

TEST_F(GoldbachTest, PerturbingAForcedSlopeOpensAJunction) {
    const long alpha = 36;
    const auto g = build_goldbach(spec_for(alpha, 5));
    for (long i : {6L, alpha - 6, alpha - 5}) {
        std::vector<Real> xi(g.coding.slopes().begin(), g.coding.slopes().end());
        xi[i] *= Real("1.01");
        const PrimeCoding<Real> bent(xi);
        Real worst(0);
        for (const auto& j : junction_gaps(bent, alpha)) worst = max(worst, j.gap);
        EXPECT_GT(worst, 1e-3) << "perturbed xi_" << i;
        EXPECT_THROW(verify_continuity(bent, alpha, kTol), ConstructionFailure);
    }
}

TEST_F(GoldbachTest, UnforcedCodingsJump) {
    const auto c = PrimeCoding<Real>::linear(36);
    Real worst(0);
    for (const auto& j : junction_gaps(c, 36)) worst = max(worst, j.gap);
    EXPECT_GT(worst, 1e-3);
    try {
        verify_continuity(c, 36, kTol);
        FAIL() << "expected a construction failure";
    } catch (const ConstructionFailure& e) {
        EXPECT_GE(e.k0(), 5);
        EXPECT_LE(e.k0(), 17);
        EXPECT_EQ(e.kind(), "construction_failure");
    }
}

TEST_F(GoldbachTest, EvalGIsContinuousAtJunctions) {
    const long alpha = 36;
    const auto g = build_goldbach(spec_for(alpha, 9));
    for (long k0 = 5; k0 <= 17; ++k0) {
        const Real kh = g.coding.psi(Real(k0));
        EXPECT_LT(relative_gap(eval_G(g.coding, alpha, kh, Side::left), eval_G(g.coding, alpha, kh, Side::right)),
                  kTol);
    }
    EXPECT_THROW(eval_G(g.coding, alpha, g.coding.psi(Real(3)), Side::right), DomainError);
}

TEST_F(GoldbachTest, SeedDeterminesTheCoding) {
    const auto a = build_goldbach(spec_for(36, 42));
    const auto b = build_goldbach(spec_for(36, 42));
    const auto c = build_goldbach(spec_for(36, 43));
    EXPECT_EQ(a.coding, b.coding);
    EXPECT_FALSE(a.coding == c.coding);
}

TEST_F(GoldbachTest, PinnedLambdasLeaveTheRestDrawn) {
    GoldbachSpec s = spec_for(36, 11);
    s.lambda_sq[3] = Real(2);
    s.lambda_sq[4] = Real(3);
    const auto g = build_goldbach(s);
    EXPECT_EQ(g.lambda_sq.at(3), 2);
    EXPECT_EQ(g.lambda_sq.at(4), 3);
    for (const auto& [i, l2] : g.lambda_sq) {
        EXPECT_GT(l2, 1);
        EXPECT_LE(l2, 4);
    }
}

TEST_F(GoldbachTest, ReducedForm) {
    const auto s = spec_for(36, 13);
    for (int factor : {1, 4, 9}) {
        const auto rep = reduced_form_check(s, Real(factor), kTol);
        EXPECT_LE(rep.xi_sq_gap, kTol);
        EXPECT_LE(rep.x_gap, kTol);
        EXPECT_LE(rep.ratio_gap, kTol);
    }
    const auto base = build_goldbach(s);
    GoldbachSpec same = s;
    same.xi_half_sq = base.xi_half_sq;
    EXPECT_EQ(build_goldbach(same).coding, base.coding);
}

TEST_F(GoldbachTest, FTermLimitForLargeLambda5) {
    GoldbachSpec s = spec_for(36, 0);
    s.lambda_sq = {{3, Real(2)}, {4, Real(3)}};
    Real prev(0);
    for (const char* l5 : {"2", "10", "1000", "1e9"}) {
        s.lambda_sq[5] = Real(l5);
        const Real f5 = F_term(build_lower(s), 5);
        EXPECT_GT(f5, prev);
        prev = f5;
    }
    const Real limit = Real(36 - 5) / (10 * 2 * 3);
    EXPECT_LT(relative_gap(prev, limit), 1e-8);
}

TEST_F(GoldbachTest, ScalarLimitConverges) {
    std::vector<Real> u;
    for (int m = 1; m <= 6; ++m) u.push_back(1 + pow(Real(10), -m));
    const auto rep = scalar_limit_sweep(24, u, Real(1));
    EXPECT_TRUE(rep.monotone);
    EXPECT_TRUE(rep.converged);
    // First-order approach: deviation / h stays bounded.
    for (std::size_t i = 0; i < u.size(); ++i) EXPECT_LT(Real(rep.max_deviation[i] / (u[i] - 1)), 50);
    // xi_6^2 -> xi_2^2
    GoldbachSpec s = spec_for(24, 0);
    s.scalar_u = u.back();
    EXPECT_LT(relative_gap(build_lower(s).xi_sq[6], Real(1)), 1e-5);
}

TEST_F(GoldbachTest, ScalarLimitFlagsAWrongDirection) {
    const std::vector<Real> u{Real("1.000001"), Real("1.1")};
    const auto rep = scalar_limit_sweep(24, u, Real(1));
    EXPECT_FALSE(rep.monotone);
}
