#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace maxmin {

/// Exact rational number. Always reduced to lowest terms with a positive
/// denominator; every operation is exact. Backed by GMP.
class Rational {
public:
    Rational() : q_(0) {}
    Rational(long n) : q_(n) {}  // NOLINT: implicit by design, mirrors integer literals
    Rational(long num, long den);
    explicit Rational(const mpz_class& n) : q_(n) {}
    Rational(const mpz_class& num, const mpz_class& den);
    explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

    /// Underlying canonical mpq; for numeric kernels that work on raw GMP.
    const mpq_class& raw() const { return q_; }

    /// Parses "p", "-p", "p/q" (optional sign on p; q > 0 after reduction).
    /// Throws std::invalid_argument on anything else.
    static Rational parse(std::string_view text);

    const mpz_class& num() const { return q_.get_num(); }
    const mpz_class& den() const { return q_.get_den(); }
    int sign() const { return sgn(q_); }
    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }

    /// Exact rendering: "p" when integral, else "p/q".
    std::string str() const;
    /// Rounded decimal rendering (informative only, never used in checks).
    std::string decimal(int digits = 6) const;
    double to_double() const { return q_.get_d(); }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
    friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
    friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }
    friend Rational operator/(Rational a, const Rational& b) { a /= b; return a; }
    friend Rational operator-(const Rational& a) { Rational r; r.q_ = -a.q_; return r; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

private:
    mpq_class q_;  // invariant: canonical (reduced, positive denominator)
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

/// num / den^exp, exact. den > 0.
Rational rational_power_fraction(long num_scale, long base, unsigned long exp);

}  // namespace maxmin
