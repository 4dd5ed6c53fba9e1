#include <gtest/gtest.h>

#include "hyperclass/hyperbola.hpp"
#include "hyperclass/oracles.hpp"
#include "support/generators.hpp"

using namespace hyperclass;
using hyperclass::testing::Gen;

namespace {

PrimeCoding<Rational> doubling(long last) {
    std::vector<Rational> xi;
    for (long m = 0; m <= last; ++m) xi.push_back(Rational(Integer(1) << m));
    return PrimeCoding<Rational>(std::move(xi));
}

NumberClass sieve_class(long k, const std::vector<bool>& table) {
    return table[k] ? NumberClass::prime : NumberClass::composite_natural;
}

}  // namespace

TEST(AntiDiagonal, EvaluatesThroughTheCoding) {
    const auto c = doubling(4);
    EXPECT_EQ(fhat_eval(c, 2, Rational(1, 2)), 2);
    EXPECT_EQ(fhat_eval(c, 2, Rational(0)), c.psi(Rational(2)));
}

TEST(AntiDiagonal, OneSidedDerivativesAtNaturalAbscissa) {
    const auto d = fhat_one_sided(doubling(3), 4, 1);
    EXPECT_EQ(d.left, -8);
    EXPECT_EQ(d.right, -2);
    EXPECT_FALSE(d.differentiable());
}

TEST(AntiDiagonal, IdentityCodingIsDifferentiable) {
    const auto id = PrimeCoding<Rational>::identity(20);
    for (long m = 1; m < 20; ++m) EXPECT_TRUE(fhat_one_sided(id, 20, m).differentiable());
}

TEST(AntiDiagonalProperty, JumpIffSlopeProductsDiffer) {
    Gen gen(21);
    for (int trial = 0; trial < 10; ++trial) {
        const auto c = gen.strict_rational_coding(50);
        for (long alpha = 2; alpha <= 50; ++alpha) {
            for (long m = 1; m < alpha; ++m) {
                const auto [am, bm] = c.one_sided_slopes(m);
                const auto [ar, br] = c.one_sided_slopes(alpha - m);
                // Direct evaluation: difference quotients of f^ on either side.
                const Rational h(1, 1000);
                const Rational u = c.psi(Rational(m));
                const Rational left = (fhat_eval(c, alpha, u) - fhat_eval(c, alpha, Rational(u - h))) / h;
                const Rational right = (fhat_eval(c, alpha, Rational(u + h)) - fhat_eval(c, alpha, u)) / h;
                const auto d = fhat_one_sided(c, alpha, m);
                EXPECT_EQ(d.left, left);
                EXPECT_EQ(d.right, right);
                EXPECT_EQ(d.differentiable(), am * ar == bm * br);
            }
        }
    }
}

TEST(AntiDiagonalProperty, StrictlyDecreasing) {
    Gen gen(22);
    const auto c = gen.strict_double_coding(30);
    const double top = c.psi(30.0);
    double prev = fhat_eval(c, 30, 0.0);
    for (int i = 1; i <= 500; ++i) {
        const double v = fhat_eval(c, 30, top * i / 500);
        EXPECT_LT(v, prev);
        prev = v;
    }
}

TEST(Hyperbola, DiagonalLatticePointDerivatives) {
    const auto c = doubling(5);
    const auto d = hhat_one_sided(c, Rational(4), c.psi(Rational(2)));
    EXPECT_EQ(d.left, -2);
    EXPECT_EQ(d.right, Rational(-1, 2));
}

TEST(HyperbolaProperty, StrictlyDecreasing) {
    Gen gen(23);
    const auto c = gen.strict_double_coding(40);
    for (int trial = 0; trial < 10; ++trial) {
        const double k = gen.uniform(2, 30);
        const double lo = c.psi(k / 39.0);
        const double hi = c.psi(39.0);
        double prev = hhat_eval(c, k, lo);
        for (int i = 1; i <= 300; ++i) {
            const double v = hhat_eval(c, k, lo + (hi - lo) * i / 300);
            EXPECT_LT(v, prev);
            prev = v;
        }
    }
}

TEST(HyperbolaProperty, JumpIffSomeCoordinateIsNatural) {
    // 10^4 points split between lattice-adjacent and generic positions.
    Gen gen(24);
    const auto c = gen.strict_rational_coding(60);
    int jumps = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        const Rational k(gen.integer(2 * 12, 50 * 12), 12);
        Rational x;
        switch (trial % 3) {
            case 0: x = Rational(gen.integer(1, 7)); break;
            case 1: x = k / gen.integer(1, 50); break;
            default: x = Rational(gen.integer(12, 84), gen.integer(12, 13)); break;
        }
        const Rational y = k / x;
        if (x < 1 || y < x || y >= 60) continue;
        const auto d = hhat_one_sided(c, k, c.psi(x));
        const bool natural = is_integral(x) || is_integral(y);
        EXPECT_EQ(!d.differentiable(), natural) << "k=" << k << " x=" << x;
        jumps += natural;
    }
    EXPECT_GT(jumps, 1000);
}

TEST(HyperbolaProperty, FloatModeAgreesWithRational) {
    Gen gen(25);
    const auto c = gen.strict_rational_coding(40);
    const auto cd = c.convert<Real>();
    for (int trial = 0; trial < 500; ++trial) {
        const Rational k(gen.integer(4 * 7, 30 * 7), 7);
        const Rational x = trial % 2 ? Rational(gen.integer(1, 5)) : Rational(k / gen.integer(1, 30));
        if (x < 1 || k / x < x) continue;
        EXPECT_EQ(classify_point(c, k, c.psi(x)),
                  classify_point(cd, convert_scalar<Real>(k), cd.psi(convert_scalar<Real>(x))));
    }
}

TEST(Classify, WorkedExamples) {
    const auto c = PrimeCoding<Rational>::linear(30);
    EXPECT_EQ(classify_number(c, Rational(17)), NumberClass::prime);
    EXPECT_EQ(classify_number(c, Rational(12)), NumberClass::composite_natural);
    EXPECT_EQ(classify_number(c, Rational(15, 2)), NumberClass::non_natural);
}

TEST(Classify, TwelveHasVorticesAtItsDivisorPairs) {
    const auto scan = scan_curve(PrimeCoding<Rational>::linear(30), Rational(12));
    std::vector<std::pair<Rational, Rational>> vortices;
    int semi = 0;
    for (const auto& p : scan.jump_points) {
        if (p.kind == PointKind::vortex) vortices.emplace_back(p.point.x, p.point.y);
        semi += p.kind == PointKind::semi_vortex;
    }
    EXPECT_EQ(semi, 1);
    ASSERT_EQ(vortices.size(), 2u);
    EXPECT_EQ(vortices[0], std::make_pair(Rational(2), Rational(6)));
    EXPECT_EQ(vortices[1], std::make_pair(Rational(3), Rational(4)));
}

TEST(Classify, PerfectSquareDiagonalIsAVortex) {
    const auto scan = scan_curve(PrimeCoding<Rational>::linear(30), Rational(25));
    EXPECT_EQ(scan.number_class, NumberClass::composite_natural);
    EXPECT_EQ(scan.jump_points.back().kind, PointKind::vortex);
    EXPECT_EQ(scan.jump_points.back().point.x, 5);
}

TEST(Classify, RejectsNonIdentifyingCodings) {
    EXPECT_THROW(classify_number(PrimeCoding<Rational>::identity(30), Rational(12)), ArgumentError);
    EXPECT_THROW(classify_number(PrimeCoding<Rational>::linear(30), Rational(1)), DomainError);
    EXPECT_THROW(classify_number(PrimeCoding<Rational>::linear(10), Rational(12)), DomainError);
}

TEST(ClassifyProperty, AgreesWithSieveOnNaturals) {
    const auto table = sieve(200);
    Gen gen(26);
    for (int coding = 0; coding < 3; ++coding) {
        const auto c = gen.strict_rational_coding(201);
        for (long k = 2; k <= 200; ++k)
            EXPECT_EQ(classify_number(c, Rational(k)), sieve_class(k, table)) << "k=" << k;
    }
}

TEST(ClassifyProperty, NonIntegersAreNonNatural) {
    Gen gen(27);
    const auto c = gen.strict_rational_coding(201);
    const auto cf = c.convert<double>();
    for (int trial = 0; trial < 200; ++trial) {
        const double k = gen.non_integer(2, 200);
        EXPECT_EQ(classify_number(cf, k), NumberClass::non_natural) << "k=" << k;
        EXPECT_EQ(classify_number(c, Rational(k)), NumberClass::non_natural) << "k=" << k;
    }
}

TEST(ClassifyProperty, FloatModeMatchesSieve) {
    const auto table = sieve(120);
    const auto c = PrimeCoding<Real>::linear(130);
    for (long k = 2; k <= 120; ++k) EXPECT_EQ(classify_number(c, Real(k)), sieve_class(k, table));
}
