#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace hkm2 {

using Int = boost::multiprecision::cpp_int;

inline Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

/// Floor of sqrt(x) for x >= 0.
inline Int isqrt(const Int& x) {
    if (x < 0) throw std::domain_error("isqrt of negative integer");
    return boost::multiprecision::sqrt(x);
}

inline Int pow10(unsigned d) {
    Int p = 1;
    for (unsigned i = 0; i < d; ++i) p *= 10;
    return p;
}

/// Exact rational over arbitrary-precision integers.
/// Always reduced (gcd(num, den) = 1) with den > 0; zero is 0/1.
class Rational {
    Int num_;
    Int den_;

    void reduce() {
        if (den_ == 0) throw std::domain_error("Rational with zero denominator");
        if (num_ == 0) {
            den_ = 1;
            return;
        }
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        Int g = boost::multiprecision::gcd(abs_int(num_), den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

public:
    Rational() : num_(0), den_(1) {}
    Rational(long n) : num_(n), den_(1) {}           // NOLINT(google-explicit-constructor)
    Rational(const Int& n) : num_(n), den_(1) {}     // NOLINT(google-explicit-constructor)
    Rational(Int n, Int d) : num_(std::move(n)), den_(std::move(d)) { reduce(); }

    const Int& num() const { return num_; }
    const Int& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ == 0 ? 0 : (num_ < 0 ? -1 : 1); }

    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("Rational division by zero");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }

    Rational& operator+=(const Rational& b) { return *this = *this + b; }
    Rational& operator-=(const Rational& b) { return *this = *this - b; }
    Rational& operator*=(const Rational& b) { return *this = *this * b; }
    Rational& operator/=(const Rational& b) { return *this = *this / b; }

    Rational reciprocal() const {
        if (num_ == 0) throw std::domain_error("reciprocal of zero");
        return Rational(den_, num_);
    }

    // Reduced canonical form makes fieldwise equality exact equality.
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num_ * b.den_ < b.num_ * a.den_;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    /// "n" when integral, "n/d" otherwise.
    std::string str() const {
        std::string s = num_.str();
        if (den_ != 1) s += "/" + den_.str();
        return s;
    }

    /// Correctly rounded fixed-point rendering with `digits` places after the
    /// point; ties round away from zero. digits >= 1.
    std::string to_decimal(unsigned digits) const {
        if (digits < 1) throw std::invalid_argument("to_decimal requires digits >= 1");
        Int scale = pow10(digits);
        Int scaled_num = abs_int(num_) * scale;
        Int q = scaled_num / den_;
        Int r = scaled_num % den_;
        if (2 * r >= den_) ++q;
        Int ip = q / scale;
        Int fp = q % scale;
        std::string frac = fp.str();
        if (frac.size() < digits) frac.insert(0, digits - frac.size(), '0');
        std::string out;
        if (num_ < 0) out += "-";
        out += ip.str() + "." + frac;
        return out;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        return os << r.str();
    }
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

/// Exact square root when `r` is a perfect square of a rational
/// (both reduced parts perfect squares); nullopt otherwise. r >= 0.
inline std::optional<Rational> rational_sqrt(const Rational& r) {
    if (r.sign() < 0) throw std::domain_error("rational_sqrt of negative value");
    Int sn = isqrt(r.num()), sd = isqrt(r.den());
    if (sn * sn == r.num() && sd * sd == r.den()) return Rational(sn, sd);
    return std::nullopt;
}

} // namespace hkm2
