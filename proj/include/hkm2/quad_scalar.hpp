#pragma once

#include "hkm2/errors.hpp"
#include "hkm2/rational.hpp"

#include <ostream>
#include <string>

namespace hkm2 {

/// Element p + q*sqrt(r) of the real quadratic field Q(sqrt(r)), with
/// rational p, q and a fixed rational radicand r >= 0.
///
/// Canonical form: if q = 0, or r is a perfect square of a rational, the
/// value is folded into the rational part and the radicand is cleared to 0.
/// A value with q = 0 is "pure rational" and combines with any radicand;
/// two values with q != 0 combine only when their radicands agree.
///
/// All triple coefficients in this library are real, so complex conjugation
/// is the identity on this type; `galois_conj` flips the sign of q.
class QuadScalar {
    Rational rat_;
    Rational rad_coef_;
    Rational radicand_;

    void normalize() {
        if (radicand_.sign() < 0)
            throw std::domain_error("QuadScalar radicand must be nonnegative");
        if (!rad_coef_.is_zero()) {
            if (auto root = rational_sqrt(radicand_)) {
                rat_ += rad_coef_ * *root;
                rad_coef_ = Rational(0);
            }
        }
        if (rad_coef_.is_zero()) radicand_ = Rational(0);
    }

    // Radicand of the combined field, or throws.
    static Rational joint_radicand(const QuadScalar& a, const QuadScalar& b) {
        if (a.rad_coef_.is_zero()) return b.radicand_;
        if (b.rad_coef_.is_zero()) return a.radicand_;
        if (a.radicand_ != b.radicand_)
            throw RadicandMismatch("QuadScalar radicands differ: sqrt(" +
                                   a.radicand_.str() + ") vs sqrt(" + b.radicand_.str() + ")");
        return a.radicand_;
    }

public:
    QuadScalar() = default;
    QuadScalar(const Rational& r) : rat_(r) {}  // NOLINT(google-explicit-constructor)
    QuadScalar(long n) : rat_(n) {}             // NOLINT(google-explicit-constructor)
    QuadScalar(Rational rat, Rational rad_coef, Rational radicand)
        : rat_(std::move(rat)), rad_coef_(std::move(rad_coef)), radicand_(std::move(radicand)) {
        normalize();
    }

    /// sqrt(r) itself, for nonnegative rational r.
    static QuadScalar sqrt_of(const Rational& r) {
        return QuadScalar(Rational(0), Rational(1), r);
    }

    const Rational& rat_part() const { return rat_; }
    const Rational& rad_part() const { return rad_coef_; }
    const Rational& radicand() const { return radicand_; }

    bool is_rational() const { return rad_coef_.is_zero(); }
    bool is_zero() const { return rat_.is_zero() && rad_coef_.is_zero(); }

    /// Exact rational value; throws when the value is irrational.
    const Rational& as_rational() const {
        if (!is_rational()) throw std::domain_error("QuadScalar is irrational");
        return rat_;
    }

    QuadScalar operator-() const {
        QuadScalar x = *this;
        x.rat_ = -x.rat_;
        x.rad_coef_ = -x.rad_coef_;
        return x;
    }

    /// Galois conjugate p - q*sqrt(r).
    QuadScalar galois_conj() const {
        QuadScalar x = *this;
        x.rad_coef_ = -x.rad_coef_;
        return x;
    }

    friend QuadScalar operator+(const QuadScalar& a, const QuadScalar& b) {
        Rational r = joint_radicand(a, b);
        return QuadScalar(a.rat_ + b.rat_, a.rad_coef_ + b.rad_coef_, r);
    }
    friend QuadScalar operator-(const QuadScalar& a, const QuadScalar& b) {
        Rational r = joint_radicand(a, b);
        return QuadScalar(a.rat_ - b.rat_, a.rad_coef_ - b.rad_coef_, r);
    }
    friend QuadScalar operator*(const QuadScalar& a, const QuadScalar& b) {
        Rational r = joint_radicand(a, b);
        return QuadScalar(a.rat_ * b.rat_ + a.rad_coef_ * b.rad_coef_ * r,
                          a.rat_ * b.rad_coef_ + a.rad_coef_ * b.rat_, r);
    }
    friend QuadScalar operator/(const QuadScalar& a, const QuadScalar& b) {
        if (b.is_zero()) throw std::domain_error("QuadScalar division by zero");
        Rational r = joint_radicand(a, b);
        // 1/(p + q*sqrt(r)) = (p - q*sqrt(r)) / (p^2 - q^2 r); the norm is
        // nonzero because nonsquare r forces p^2 != q^2 r unless p = q = 0.
        Rational norm = b.rat_ * b.rat_ - b.rad_coef_ * b.rad_coef_ * r;
        QuadScalar num = a * b.galois_conj();
        return QuadScalar(num.rat_ / norm, num.rad_coef_ / norm, r);
    }

    QuadScalar& operator+=(const QuadScalar& b) { return *this = *this + b; }
    QuadScalar& operator-=(const QuadScalar& b) { return *this = *this - b; }
    QuadScalar& operator*=(const QuadScalar& b) { return *this = *this * b; }
    QuadScalar& operator/=(const QuadScalar& b) { return *this = *this / b; }

    friend bool operator==(const QuadScalar& a, const QuadScalar& b) {
        if (a.rad_coef_.is_zero() && b.rad_coef_.is_zero()) return a.rat_ == b.rat_;
        return a.rat_ == b.rat_ && a.rad_coef_ == b.rad_coef_ && a.radicand_ == b.radicand_;
    }
    friend bool operator!=(const QuadScalar& a, const QuadScalar& b) { return !(a == b); }

    /// Exact sign of p + q*sqrt(r) in the real embedding with sqrt(r) >= 0.
    int sign() const {
        int sp = rat_.sign(), sq = rad_coef_.sign();
        if (sq == 0) return sp;
        if (sp == 0) return sq;
        if (sp == sq) return sp;
        // Opposite signs: compare p^2 against q^2 r.
        Rational p2 = rat_ * rat_;
        Rational q2r = rad_coef_ * rad_coef_ * radicand_;
        if (p2 == q2r) return 0;  // unreachable for irrational values
        return p2 > q2r ? sp : sq;
    }

    friend bool operator<(const QuadScalar& a, const QuadScalar& b) {
        return (a - b).sign() < 0;
    }
    friend bool operator>(const QuadScalar& a, const QuadScalar& b) { return b < a; }
    friend bool operator<=(const QuadScalar& a, const QuadScalar& b) { return !(b < a); }
    friend bool operator>=(const QuadScalar& a, const QuadScalar& b) { return !(a < b); }

    /// "p", "q*sqrt(r)", or "p + q*sqrt(r)".
    std::string str() const {
        if (is_rational()) return rat_.str();
        std::string radical = "sqrt(" + radicand_.str() + ")";
        std::string tail = (rad_coef_ == Rational(1))    ? radical
                           : (rad_coef_ == Rational(-1)) ? "-" + radical
                                                         : rad_coef_.str() + "*" + radical;
        if (rat_.is_zero()) return tail;
        if (tail[0] == '-') return rat_.str() + " - " + tail.substr(1);
        return rat_.str() + " + " + tail;
    }

    /// Correctly rounded decimal rendering (ties away from zero). For
    /// irrational values the rounding is decided from exact rational
    /// brackets around sqrt(r), sharpened until they agree.
    std::string to_decimal(unsigned digits) const {
        if (is_rational()) return rat_.to_decimal(digits);
        for (unsigned guard = digits + 8;; guard *= 2) {
            // sqrt(n/d) = sqrt(n*d)/d; bracket sqrt(n*d) between s and s+1
            // at 10^-guard resolution.
            Int nd = radicand_.num() * radicand_.den();
            Int s = isqrt(nd * pow10(2 * guard));
            Rational lo_root(s, radicand_.den() * pow10(guard));
            Rational hi_root(s + 1, radicand_.den() * pow10(guard));
            Rational lo, hi;
            if (rad_coef_.sign() > 0) {
                lo = rat_ + rad_coef_ * lo_root;
                hi = rat_ + rad_coef_ * hi_root;
            } else {
                lo = rat_ + rad_coef_ * hi_root;
                hi = rat_ + rad_coef_ * lo_root;
            }
            std::string a = lo.to_decimal(digits), b = hi.to_decimal(digits);
            if (a == b) return a;
            if (guard > 16 * (digits + 8))
                throw std::logic_error("QuadScalar::to_decimal failed to converge");
        }
    }

    friend std::ostream& operator<<(std::ostream& os, const QuadScalar& q) {
        return os << q.str();
    }
};

} // namespace hkm2
