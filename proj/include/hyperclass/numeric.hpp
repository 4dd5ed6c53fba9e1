#pragma once

// Numeric backends. Exact rationals (GMP) are used wherever the inputs are
// rational; variable-precision binary floats (MPFR) once square roots enter.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <concepts>
#include <ios>
#include <string>
#include <string_view>

#include "hyperclass/errors.hpp"

namespace hyperclass {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using Real = boost::multiprecision::mpfr_float;

inline constexpr unsigned kDefaultPrecisionBits = 128;
inline constexpr double kDefaultRelativeTolerance = 1e-9;

template <class T>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
    static constexpr bool exact = true;
    static constexpr const char* mode = "rational";
};

template <>
struct scalar_traits<Real> {
    static constexpr bool exact = false;
    static constexpr const char* mode = "float";
};

template <>
struct scalar_traits<double> {
    static constexpr bool exact = false;
    static constexpr const char* mode = "float";
};

template <class T>
concept Scalar = requires { scalar_traits<T>::exact; };

template <class T>
inline constexpr bool is_exact_v = scalar_traits<T>::exact;

/// Sets the working mantissa width of `Real` for values created afterwards.
/// MPFR precision is global: call once, before any worker threads start.
inline void set_real_precision_bits(unsigned bits) {
    if (bits < 53) throw ArgumentError("precision must be at least 53 bits");
    // digits10 -> bits conversion in Boost rounds up, so this yields >= bits.
    const auto digits10 = static_cast<unsigned>(std::ceil(bits * 0.30102999566398120));
    Real::default_precision(digits10);
}

inline unsigned real_precision_bits() {
    return boost::multiprecision::detail::digits10_2_2(Real::default_precision());
}

// ---------------------------------------------------------------------------
// Conversions

template <Scalar T>
double to_double(const T& x) {
    if constexpr (std::same_as<T, double>) {
        return x;
    } else {
        return x.template convert_to<double>();
    }
}

/// Floor of a non-huge value as a signed integer.
template <Scalar T>
long floor_long(const T& x) {
    if constexpr (std::same_as<T, Rational>) {
        Integer q;
        mpz_fdiv_q(q.backend().data(), numerator(x).backend().data(),
                   denominator(x).backend().data());
        return q.convert_to<long>();
    } else if constexpr (std::same_as<T, double>) {
        return static_cast<long>(std::floor(x));
    } else {
        return boost::multiprecision::floor(x).template convert_to<long>();
    }
}

template <Scalar T>
bool is_integral(const T& x) {
    if constexpr (std::same_as<T, Rational>) {
        return denominator(x) == 1;
    } else {
        return x == T(floor_long(x));
    }
}

template <Scalar T>
T abs_value(const T& x) {
    return x < 0 ? T(-x) : x;
}

/// Equality as used by the theorems: exact for rationals, relative tolerance
/// otherwise.
template <Scalar T>
bool nearly_equal(const T& a, const T& b, double rel_tol = kDefaultRelativeTolerance) {
    if constexpr (is_exact_v<T>) {
        return a == b;
    } else {
        const T aa = abs_value(a);
        const T bb = abs_value(b);
        const T scale = aa > bb ? aa : bb;
        if (scale == 0) return true;
        return abs_value(T(a - b)) <= T(rel_tol) * scale;
    }
}

inline double relative_gap(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0 ? 0.0 : std::abs(a - b) / scale;
}

template <Scalar T>
T relative_gap(const T& a, const T& b) {
    const T aa = abs_value(a);
    const T bb = abs_value(b);
    const T scale = aa > bb ? aa : bb;
    if (scale == 0) return T(0);
    return abs_value(T(a - b)) / scale;
}

// ---------------------------------------------------------------------------
// Parsing and formatting

namespace detail {

inline Integer pow10(unsigned e) {
    Integer r = 1;
    for (unsigned i = 0; i < e; ++i) r *= 10;
    return r;
}

inline bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

}  // namespace detail

/// Parses "p/q", an integer, or a decimal literal with optional exponent
/// ("1.25", "-3e-2") into an exact rational.
inline Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    if (s.empty()) throw ArgumentError("empty number");

    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        Rational num = parse_rational(s.substr(0, slash));
        Rational den = parse_rational(s.substr(slash + 1));
        if (den == 0) throw ArgumentError("zero denominator in '" + std::string(text) + "'");
        return num / den;
    }

    bool negative = false;
    if (s.front() == '+' || s.front() == '-') {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }

    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view exp_part = s.substr(e + 1);
        bool exp_negative = false;
        if (!exp_part.empty() && (exp_part.front() == '+' || exp_part.front() == '-')) {
            exp_negative = exp_part.front() == '-';
            exp_part.remove_prefix(1);
        }
        if (!detail::all_digits(exp_part) || exp_part.size() > 6)
            throw ArgumentError("bad exponent in '" + std::string(text) + "'");
        exponent = std::stol(std::string(exp_part));
        if (exp_negative) exponent = -exponent;
        s = s.substr(0, e);
    }

    std::string digits;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view int_part = s.substr(0, dot);
        std::string_view frac_part = s.substr(dot + 1);
        if ((!int_part.empty() && !detail::all_digits(int_part)) ||
            (!frac_part.empty() && !detail::all_digits(frac_part)) ||
            (int_part.empty() && frac_part.empty()))
            throw ArgumentError("bad number '" + std::string(text) + "'");
        digits = std::string(int_part) + std::string(frac_part);
        exponent -= static_cast<long>(frac_part.size());
    } else {
        if (!detail::all_digits(s)) throw ArgumentError("bad number '" + std::string(text) + "'");
        digits = std::string(s);
    }

    // A leading zero would make the string parser read octal.
    digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
    Rational value{Integer(digits)};
    if (exponent > 0) value *= Rational(detail::pow10(static_cast<unsigned>(exponent)));
    if (exponent < 0) value /= Rational(detail::pow10(static_cast<unsigned>(-exponent)));
    return negative ? Rational(-value) : value;
}

inline Real parse_real(std::string_view text) {
    if (text.find('/') != std::string_view::npos) {
        Rational q = parse_rational(text);
        return Real(numerator(q)) / Real(denominator(q));
    }
    try {
        return Real(std::string(text));
    } catch (const std::exception&) {
        throw ArgumentError("bad number '" + std::string(text) + "'");
    }
}

template <Scalar T>
T parse_scalar(std::string_view text) {
    if constexpr (std::same_as<T, Rational>) {
        return parse_rational(text);
    } else if constexpr (std::same_as<T, Real>) {
        return parse_real(text);
    } else {
        return to_double(parse_rational(text));
    }
}

/// Canonical text form: "p/q" (or "p") for rationals, round-trip scientific
/// notation for floats.
template <Scalar T>
std::string format_scalar(const T& x) {
    if constexpr (std::same_as<T, Rational>) {
        return x.str();
    } else if constexpr (std::same_as<T, Real>) {
        return x.str(static_cast<std::streamsize>(Real::default_precision() + 2),
                     std::ios_base::scientific);
    } else {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        return buf;
    }
}

template <Scalar To, Scalar From>
To convert_scalar(const From& x) {
    if constexpr (std::same_as<To, From>) {
        return x;
    } else if constexpr (std::same_as<To, double>) {
        return to_double(x);
    } else if constexpr (std::same_as<From, Rational> && std::same_as<To, Real>) {
        return Real(numerator(x)) / Real(denominator(x));
    } else {
        return To(x);
    }
}

}  // namespace hyperclass
