#pragma once

// Essential polynomials: homogeneous quadratic forms in the coding slopes
// that carry the second derivative of the deformed area below a hyperbola.

#include <algorithm>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hyperclass/areas.hpp"
#include "hyperclass/coding.hpp"
#include "hyperclass/errors.hpp"
#include "hyperclass/numeric.hpp"
#include "hyperclass/regions.hpp"

namespace hyperclass {

/// Sparse quadratic form sum c_ij x_i x_j over i <= j. Coefficients are
/// half-integers and are stored as integer multiples of 1/2; zero terms are
/// never stored.
class EssentialPolynomial {
public:
    using Key = std::pair<long, long>;

    /// Adds (halves/2) x_i x_j.
    void add(long i, long j, long halves) {
        if (i > j) std::swap(i, j);
        if (i < 0) throw RangeError("variable index must be non-negative");
        auto [it, inserted] = terms_.try_emplace({i, j}, 0);
        it->second += halves;
        if (it->second == 0) terms_.erase(it);
    }

    EssentialPolynomial operator-() const {
        EssentialPolynomial r = *this;
        for (auto& [key, h] : r.terms_) h = -h;
        return r;
    }

    bool operator==(const EssentialPolynomial&) const = default;

    const std::map<Key, long>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Twice the coefficient of x_i x_j.
    long halves(long i, long j) const {
        if (i > j) std::swap(i, j);
        auto it = terms_.find({i, j});
        return it == terms_.end() ? 0 : it->second;
    }

    Rational coefficient(long i, long j) const { return Rational(halves(i, j)) / 2; }

    long max_index() const {
        long m = -1;
        for (const auto& [key, h] : terms_) m = std::max(m, key.second);
        return m;
    }

    /// Substitutes x_i := xi_i. Exact for rational codings.
    template <Scalar T>
    T evaluate(const PrimeCoding<T>& c) const {
        return evaluate(c.slopes());
    }

    /// Same, from a bare slope list xi_0, xi_1, ...
    template <Scalar T>
    T evaluate(std::span<const T> xi) const {
        if (max_index() >= static_cast<long>(xi.size()))
            throw RangeError("polynomial references x_" + std::to_string(max_index()) +
                             " beyond the last available slope");
        T twice(0);
        for (const auto& [key, h] : terms_) twice += T(h) * xi[key.first] * xi[key.second];
        return T(twice / 2);
    }

    /// Human-readable form, e.g. "x2*x6 - x2*x4 + x3*x4 - 1/2*x3^2". Terms are
    /// ordered by first index, then by descending second index.
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        long current = -1;
        std::vector<std::pair<Key, long>> row;
        auto flush = [&] {
            for (auto it = row.rbegin(); it != row.rend(); ++it) append(out, it->first, it->second);
            row.clear();
        };
        for (const auto& term : terms_) {
            if (term.first.first != current) {
                flush();
                current = term.first.first;
            }
            row.push_back(term);
        }
        flush();
        return out;
    }

private:
    static void append(std::string& out, const Key& key, long h) {
        const bool negative = h < 0;
        const long mag = negative ? -h : h;
        if (out.empty()) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        if (mag % 2 == 0) {
            if (mag != 2) out += std::to_string(mag / 2) + "*";
        } else {
            out += std::to_string(mag) + "/2*";
        }
        if (key.first == key.second)
            out += "x" + std::to_string(key.first) + "^2";
        else
            out += "x" + std::to_string(key.first) + "*x" + std::to_string(key.second);
    }

    std::map<Key, long> terms_;
};

/// Lower essential polynomial of k0: T2 -> +x_n x_n', T5 -> -x_n x_n',
/// T7 -> +x_n^2/2, T8 -> -x_n^2/2, T3 -> nothing.
inline EssentialPolynomial lower_essential_poly(long k0) {
    EssentialPolynomial p;
    for (const auto& e : enumerate_regions(k0).entries)
        if (const int h = d2_halves(e.type); h != 0) p.add(e.index.n, e.index.n_prime, h);
    return p;
}

/// Upper essential polynomial: the negated lower polynomial of alpha-k0-1.
inline EssentialPolynomial upper_essential_poly(long alpha, long k0) {
    if (alpha < 16 || alpha % 2 != 0) throw RangeError("upper polynomials need even alpha >= 16");
    if (k0 < 4 || k0 > alpha / 2 - 1)
        throw RangeError("k0 = " + std::to_string(k0) + " outside 4..alpha/2-1");
    return -lower_essential_poly(alpha - k0 - 1);
}

template <Scalar T>
T eval_poly(const EssentialPolynomial& p, const PrimeCoding<T>& c) {
    return p.evaluate(c);
}

}  // namespace hyperclass
