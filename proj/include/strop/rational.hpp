#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <string>

#include "strop/errors.hpp"

namespace strop {

/// Exact rational arithmetic for positions on edges. Values stay tiny
/// (subdivision points of [0,1]) so int64 never overflows in practice.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d = 1) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) fail("BadRational", "zero denominator");
        if (den < 0) { num = -num; den = -den; }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
        if (num == 0) den = 1;
    }

    friend Rational operator+(Rational a, Rational b) {
        return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend Rational operator-(Rational a, Rational b) {
        return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend Rational operator*(Rational a, Rational b) {
        return Rational(a.num * b.num, a.den * b.den);
    }
    friend Rational operator/(Rational a, Rational b) {
        if (b.num == 0) fail("BadRational", "division by zero");
        return Rational(a.num * b.den, a.den * b.num);
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        return a.num * b.den <=> b.num * a.den;
    }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }

    /// Parses "p/q" or "p". Lowest-terms output is guaranteed by normalize().
    static Rational parse(const std::string& s) {
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return Rational(std::stoll(s));
            std::int64_t p = std::stoll(s.substr(0, slash));
            std::int64_t q = std::stoll(s.substr(slash + 1));
            return Rational(p, q);
        } catch (const Error&) {
            throw;
        } catch (const std::exception&) {
            fail("BadRational", "cannot parse rational '" + s + "'");
        }
    }
};

inline const Rational kZero{0, 1};
inline const Rational kOne{1, 1};

}  // namespace strop
