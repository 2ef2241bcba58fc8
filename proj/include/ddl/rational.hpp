#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ddl {

using Int = boost::multiprecision::cpp_int;

/// Exact rational; always stored reduced with positive denominator.
using Rational = boost::multiprecision::cpp_rational;

inline Int num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline Rational rat(long n, long d = 1) { return Rational(n, d); }

inline Int int_abs(const Int& a) { return a < 0 ? Int(-a) : a; }
inline Rational rat_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline int sign(const Rational& r) { return r < 0 ? -1 : (r > 0 ? 1 : 0); }

/// r^e for integer e (e may be negative; then r must be nonzero).
inline Rational rat_pow(const Rational& r, long e) {
    if (e == 0) return Rational(1);
    if (r == 0) {
        if (e < 0) throw std::domain_error("rat_pow: zero base with negative exponent");
        return Rational(0);
    }
    Rational base = e < 0 ? Rational(den(r), num(r)) : r;
    unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    Rational acc(1);
    while (k) {
        if (k & 1) acc *= base;
        base *= base;
        k >>= 1;
    }
    return acc;
}

/// Largest integer <= r.
inline Int rat_floor(const Rational& r) {
    Int q = num(r) / den(r);
    if (num(r) < 0 && q * den(r) != num(r)) --q;
    return q;
}

inline Int rat_ceil(const Rational& r) { return -rat_floor(-r); }

/// Nearest integer; halves round down (deterministic tie-break).
inline Int rat_round(const Rational& r) { return rat_floor(r + Rational(1, 2)); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Canonical text form: "p/q", or just "p" when q == 1.
inline std::string to_string(const Rational& r) {
    std::string s = num(r).str();
    if (den(r) != 1) s += "/" + den(r).str();
    return s;
}

/// Parses "p", "p/q", or "-p/q"; whitespace around tokens allowed.
inline std::optional<Rational> parse_rational(std::string_view text) {
    auto trim = [](std::string_view v) {
        while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.remove_prefix(1);
        while (!v.empty() && (v.back() == ' ' || v.back() == '\t')) v.remove_suffix(1);
        return v;
    };
    text = trim(text);
    if (text.empty()) return std::nullopt;
    auto slash = text.find('/');
    auto parse_int = [&](std::string_view v) -> std::optional<Int> {
        v = trim(v);
        if (v.empty()) return std::nullopt;
        std::size_t i = (v[0] == '-' || v[0] == '+') ? 1 : 0;
        if (i == v.size()) return std::nullopt;
        for (std::size_t j = i; j < v.size(); ++j)
            if (v[j] < '0' || v[j] > '9') return std::nullopt;
        return Int(std::string(v));
    };
    if (slash == std::string_view::npos) {
        auto n = parse_int(text);
        if (!n) return std::nullopt;
        return Rational(*n);
    }
    auto n = parse_int(text.substr(0, slash));
    auto d = parse_int(text.substr(slash + 1));
    if (!n || !d || *d == 0) return std::nullopt;
    return Rational(*n, *d);
}

}  // namespace ddl
