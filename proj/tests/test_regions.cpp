#include <gtest/gtest.h>

#include <algorithm>

#include "hyperclass/oracles.hpp"
#include "hyperclass/primes.hpp"
#include "hyperclass/regions.hpp"
#include "support/generators.hpp"

using namespace hyperclass;
using hyperclass::testing::Gen;

namespace {

std::vector<RegionEntry> entries(std::initializer_list<std::tuple<long, long, RegionType>> list) {
    std::vector<RegionEntry> out;
    for (const auto& [n, np, t] : list) out.push_back({{n, np}, t});
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.index < b.index; });
    return out;
}

}  // namespace

TEST(Regions, SeventeenHasSevenRegions) {
    const auto set = enumerate_regions(17);
    std::vector<RegionIndex> idx;
    for (const auto& e : set.entries) idx.push_back(e.index);
    const std::vector<RegionIndex> want{{2, 5}, {2, 6}, {2, 7}, {2, 8}, {3, 4}, {3, 5}, {4, 4}};
    EXPECT_EQ(idx, want);
}

TEST(Regions, EighteenTypedList) {
    using enum RegionType;
    const auto want = entries({{2, 9, T2}, {3, 6, T2}, {2, 8, T3}, {2, 7, T3}, {3, 5, T3}, {2, 6, T5},
                               {3, 4, T5}, {4, 4, T7}});
    EXPECT_EQ(enumerate_regions(18).entries, want);
}

TEST(Regions, FourIsASingleDiagonalTriangle) {
    const auto set = enumerate_regions(4);
    ASSERT_EQ(set.entries.size(), 1u);
    EXPECT_EQ(set.entries[0].index, (RegionIndex{2, 2}));
    EXPECT_EQ(set.entries[0].type, RegionType::T7);
}

TEST(Regions, EqualityFollowsPrimality) {
    EXPECT_TRUE(regions_equal(18, 19));
    EXPECT_FALSE(regions_equal(17, 18));
    EXPECT_TRUE(regions_equal(30, 30));
}

TEST(Regions, RejectsSmallK0) {
    EXPECT_THROW(enumerate_regions(3), ArgumentError);
    EXPECT_THROW(region_count(2), ArgumentError);
    EXPECT_THROW(region_type(3, 2, 2), ArgumentError);
}

TEST(Regions, TypeNamesRoundTrip) {
    for (auto t : {RegionType::T2, RegionType::T3, RegionType::T5, RegionType::T7, RegionType::T8})
        EXPECT_EQ(parse_region_type(to_string(t)), t);
    EXPECT_THROW(parse_region_type("T4"), ArgumentError);
}

TEST(GeometricOracle, WorkedCells) {
    EXPECT_EQ(geometric_region_oracle(18.5, 2, 9), RegionType::T2);
    EXPECT_EQ(geometric_region_oracle(18.5, 2, 6), RegionType::T5);
    EXPECT_EQ(geometric_region_oracle(18.5, 5, 5), std::nullopt);
    EXPECT_THROW(geometric_region_oracle(18.0, 2, 9), ArgumentError);
}

TEST(RegionsProperty, MatchGeometryAtRandomK) {
    Gen gen(31);
    for (long k0 = 4; k0 <= 500; ++k0) {
        const auto want = enumerate_regions(k0).entries;
        for (int s = 0; s < 5; ++s) {
            const double k = gen.non_integer(static_cast<double>(k0), static_cast<double>(k0 + 1));
            EXPECT_EQ(geometric_regions(k), want) << "k0=" << k0 << " k=" << k;
        }
    }
}

TEST(RegionsProperty, DiagonalTypesOnlyOnDiagonal) {
    for (long k0 = 4; k0 <= 500; ++k0)
        for (const auto& e : enumerate_regions(k0).entries)
            EXPECT_EQ(is_diagonal_type(e.type), e.index.n == e.index.n_prime);
}

TEST(RegionsProperty, StableAcrossPrimes) {
    for (long p : primes_between(5, 500)) EXPECT_TRUE(regions_equal(p - 1, p)) << "p=" << p;
}

TEST(RegionsProperty, ChangeAtComposites) {
    for (long k0 = 5; k0 <= 500; ++k0)
        if (!is_prime(k0)) {
            EXPECT_FALSE(regions_equal(k0 - 1, k0)) << "k0=" << k0;
        }
}

TEST(RegionsProperty, CountMatchesEnumeration) {
    for (long k0 = 4; k0 <= 2000; ++k0) {
        const long s = isqrt(k0);
        long direct = k0 / s - s + 1;
        for (long n = 2; n <= s - 1; ++n) direct += k0 / n - k0 / (n + 1) + 1;
        EXPECT_EQ(static_cast<long>(enumerate_regions(k0).entries.size()), direct);
        EXPECT_EQ(region_count(k0), direct);
    }
}

TEST(RegionsProperty, SortedAndUnique) {
    for (long k0 = 4; k0 <= 300; ++k0) {
        const auto e = enumerate_regions(k0).entries;
        for (std::size_t i = 1; i < e.size(); ++i) EXPECT_LT(e[i - 1].index, e[i].index);
    }
}
