#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>

#include "errors.hpp"

namespace bonfbounds {

using wide_int = __int128;

namespace detail {

inline wide_int abs_wide(wide_int x) noexcept { return x < 0 ? -x : x; }

inline wide_int gcd_wide(wide_int a, wide_int b) noexcept {
    a = abs_wide(a);
    b = abs_wide(b);
    while (b != 0) {
        const wide_int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline std::int64_t narrow_checked(wide_int x, const char* what) {
    if (x > std::numeric_limits<std::int64_t>::max() ||
        x < std::numeric_limits<std::int64_t>::min()) {
        throw overflow_error(std::string(what) + ": value exceeds 64-bit range");
    }
    return static_cast<std::int64_t>(x);
}

inline wide_int mul_checked(wide_int a, wide_int b, const char* what) {
    wide_int out;
    if (__builtin_mul_overflow(a, b, &out)) {
        throw overflow_error(std::string(what) + ": 128-bit multiplication overflow");
    }
    return out;
}

inline wide_int add_checked(wide_int a, wide_int b, const char* what) {
    wide_int out;
    if (__builtin_add_overflow(a, b, &out)) {
        throw overflow_error(std::string(what) + ": 128-bit addition overflow");
    }
    return out;
}

inline std::string to_string(wide_int x) {
    if (x == 0) return "0";
    const bool neg = x < 0;
    // Work in the negative range so the minimum value does not overflow.
    std::string digits;
    wide_int v = neg ? x : -x;
    while (v != 0) {
        digits.insert(digits.begin(), static_cast<char>('0' - static_cast<int>(v % 10)));
        v /= 10;
    }
    return neg ? "-" + digits : digits;
}

}  // namespace detail

/// Exact fraction, always reduced with a positive denominator.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT: implicit from integer
    Rational(wide_int num, wide_int den) { assign(num, den); }

    [[nodiscard]] std::int64_t numerator() const noexcept { return num_; }
    [[nodiscard]] std::int64_t denominator() const noexcept { return den_; }
    [[nodiscard]] double to_double() const noexcept {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        const char* what = "Rational addition";
        const wide_int g = detail::gcd_wide(a.den_, b.den_);
        const wide_int lhs = detail::mul_checked(a.num_, b.den_ / g, what);
        const wide_int rhs = detail::mul_checked(b.num_, a.den_ / g, what);
        return {detail::add_checked(lhs, rhs, what),
                detail::mul_checked(a.den_ / g, b.den_, what)};
    }
    friend Rational operator-(const Rational& a) {
        return {-static_cast<wide_int>(a.num_), static_cast<wide_int>(a.den_)};
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        const char* what = "Rational multiplication";
        const wide_int g1 = detail::gcd_wide(a.num_, b.den_);
        const wide_int g2 = detail::gcd_wide(b.num_, a.den_);
        const wide_int d1 = g1 == 0 ? 1 : g1;
        const wide_int d2 = g2 == 0 ? 1 : g2;
        return {detail::mul_checked(a.num_ / d1, b.num_ / d2, what),
                detail::mul_checked(a.den_ / d2, b.den_ / d1, what)};
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw domain_error("Rational division by zero");
        return a * Rational(static_cast<wide_int>(b.den_), static_cast<wide_int>(b.num_));
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }

    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const wide_int lhs = static_cast<wide_int>(a.num_) * b.den_;
        const wide_int rhs = static_cast<wide_int>(b.num_) * a.den_;
        return lhs <=> rhs;
    }

    [[nodiscard]] std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }
    friend std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

private:
    void assign(wide_int num, wide_int den) {
        if (den == 0) throw domain_error("Rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const wide_int g = detail::gcd_wide(num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        num_ = detail::narrow_checked(num, "Rational numerator");
        den_ = detail::narrow_checked(den, "Rational denominator");
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

}  // namespace bonfbounds
