#pragma once

// Essential regions of the hyperbola pencil xy = k, k0 < k < k0+1.
//
// A cell R(n, n') = [n, n+1] x [n', n'+1] (n < n') or the lower triangle of
// the diagonal cell R(n, n) is essential when the curve crosses it in more
// than one point. Every hyperbola with k in (k0, k0+1) has the same essential
// cells, each with one of five crossing patterns:
//
//     T2  enters left,  leaves bottom     d2 area =  1/k
//     T3  enters top,   leaves bottom     d2 area =  0
//     T5  enters top,   leaves right      d2 area = -1/k
//     T7  enters left,  leaves diagonal   d2 area =  1/(2k)
//     T8  enters top,   leaves diagonal   d2 area = -1/(2k)

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hyperclass/errors.hpp"
#include "hyperclass/hyperbola.hpp"

namespace hyperclass {

enum class RegionType { T2, T3, T5, T7, T8 };

inline std::string_view to_string(RegionType t) {
    switch (t) {
        case RegionType::T2: return "T2";
        case RegionType::T3: return "T3";
        case RegionType::T5: return "T5";
        case RegionType::T7: return "T7";
        case RegionType::T8: return "T8";
    }
    return "?";
}

inline RegionType parse_region_type(std::string_view s) {
    if (s == "T2") return RegionType::T2;
    if (s == "T3") return RegionType::T3;
    if (s == "T5") return RegionType::T5;
    if (s == "T7") return RegionType::T7;
    if (s == "T8") return RegionType::T8;
    throw ArgumentError("unknown region type '" + std::string(s) + "'");
}

inline bool is_diagonal_type(RegionType t) { return t == RegionType::T7 || t == RegionType::T8; }

struct RegionIndex {
    long n;
    long n_prime;

    auto operator<=>(const RegionIndex&) const = default;
};

struct RegionEntry {
    RegionIndex index;
    RegionType type;

    bool operator==(const RegionEntry&) const = default;
};

/// Entries are sorted lexicographically by (n, n') and unique.
struct EssentialRegionSet {
    long k0 = 0;
    std::vector<RegionEntry> entries;

    bool operator==(const EssentialRegionSet& other) const { return entries == other.entries; }
};

/// floor(sqrt(n)) for n >= 0.
inline long isqrt(long n) { return detail::isqrt(n); }

/// Type of the cell (n, n') in E_s(k0), or nothing if the cell is not
/// essential for k0. O(1).
inline std::optional<RegionType> region_type(long k0, long n, long n_prime) {
    if (k0 < 4) throw ArgumentError("essential regions need k0 >= 4");
    const long s = isqrt(k0);
    if (n < 2 || n > s || n_prime < n) return std::nullopt;
    const long top = k0 / n;
    if (n < s) {
        const long bottom = k0 / (n + 1);
        // A single cell crossed left to right would need k0 < n(n+1) <= k0.
        if (bottom == top) throw TheoremViolation("left-to-right crossing for n < floor(sqrt k0)");
        if (n_prime < bottom || n_prime > top) return std::nullopt;
        if (n_prime == top) return RegionType::T2;
        if (n_prime == bottom) return RegionType::T5;
        return RegionType::T3;
    }
    if (n_prime > top) return std::nullopt;
    if (n_prime == n) return top == s ? RegionType::T7 : RegionType::T8;
    if (n_prime == top) return RegionType::T2;
    return RegionType::T3;
}

inline EssentialRegionSet enumerate_regions(long k0) {
    if (k0 < 4) throw ArgumentError("essential regions need k0 >= 4, got " + std::to_string(k0));
    EssentialRegionSet set{k0, {}};
    const long s = isqrt(k0);
    for (long n = 2; n <= s; ++n) {
        const long lo = n < s ? k0 / (n + 1) : s;
        const long hi = k0 / n;
        for (long np = lo; np <= hi; ++np) set.entries.push_back({{n, np}, *region_type(k0, n, np)});
    }
    return set;
}

/// |E_s(k0)| from the counting formula, without enumerating.
inline long region_count(long k0) {
    if (k0 < 4) throw ArgumentError("essential regions need k0 >= 4");
    const long s = isqrt(k0);
    long count = k0 / s - s + 1;
    for (long n = 2; n < s; ++n) count += k0 / n - k0 / (n + 1) + 1;
    return count;
}

inline bool regions_equal(long k0a, long k0b) { return enumerate_regions(k0a) == enumerate_regions(k0b); }

}  // namespace hyperclass
