#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace egnp {

using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rat& r) { return static_cast<double>(r); }

// Exact value of a finite double (mantissa * 2^exponent).
inline Rat rat_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("rat_from_double: non-finite value");
    if (x == 0.0) return Rat(0);
    int exp = 0;
    double m = std::frexp(x, &exp);  // x = m * 2^exp, 0.5 <= |m| < 1
    auto mant = static_cast<std::int64_t>(std::ldexp(m, 53));
    exp -= 53;
    Rat r(mant);
    if (exp >= 0) {
        r *= Rat(BigInt(1) << exp);
    } else {
        r /= Rat(BigInt(1) << -exp);
    }
    return r;
}

// Accepts "num/den", integers, and plain decimals ("0.5", "-1.25e2" is not supported).
inline Rat rat_parse(const std::string& text) {
    auto bad = [&] { return std::invalid_argument("not a rational: '" + text + "'"); };
    if (text.empty()) throw bad();
    auto slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            BigInt num(text.substr(0, slash));
            BigInt den(text.substr(slash + 1));
            if (den == 0) throw bad();
            return Rat(num, den);
        }
        auto dot = text.find('.');
        if (dot == std::string::npos) return Rat(BigInt(text));
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        if (digits.empty() || digits == "-" || digits == "+") throw bad();
        std::size_t frac_len = text.size() - dot - 1;
        BigInt den = 1;
        for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
        return Rat(BigInt(digits), den);
    } catch (const std::runtime_error&) {
        throw bad();
    }
}

inline std::string rat_str(const Rat& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

// Exact decimal expansion when the denominator is of the form 2^a*5^b,
// otherwise falls back to "num/den".
inline std::string rat_decimal(const Rat& r) {
    BigInt num = numerator(r), den = denominator(r);
    int twos = 0, fives = 0;
    BigInt d = den;
    while (d % 2 == 0) { d /= 2; ++twos; }
    while (d % 5 == 0) { d /= 5; ++fives; }
    if (d != 1) return rat_str(r);
    int digits = std::max(twos, fives);
    BigInt scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    BigInt scaled = num * scale / den;
    bool neg = scaled < 0;
    std::string s = (neg ? -scaled : scaled).str();
    if (digits == 0) return (neg ? "-" : "") + s;
    if (static_cast<int>(s.size()) <= digits) s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, ".");
    while (s.back() == '0' && s[s.size() - 2] != '.') s.pop_back();
    return (neg ? "-" : "") + s;
}

// Nonnegative rational extended with +infinity; the loss-value domain.
struct Ext {
    Rat v{0};
    bool inf = false;

    Ext() = default;
    Ext(Rat value) : v(std::move(value)) {}  // NOLINT(google-explicit-constructor)
    static Ext infinity() { Ext e; e.inf = true; return e; }

    bool operator==(const Ext& o) const { return inf == o.inf && (inf || v == o.v); }
    bool operator!=(const Ext& o) const { return !(*this == o); }
    bool operator<(const Ext& o) const {
        if (inf) return false;
        if (o.inf) return true;
        return v < o.v;
    }
    bool operator<=(const Ext& o) const { return *this < o || *this == o; }
    bool operator>(const Ext& o) const { return o < *this; }
    bool operator>=(const Ext& o) const { return o <= *this; }

    double as_double() const { return inf ? INFINITY : to_double(v); }
    std::string str() const { return inf ? "inf" : rat_str(v); }
};

}  // namespace egnp
