#include "maxmin/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace maxmin {

Rational::Rational(long num, long den) : q_(num, den) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    q_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den) : q_(num, den) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::invalid_argument("rational: division by zero");
    q_ /= o.q_;
    return *this;
}

Rational Rational::parse(std::string_view text) {
    auto fail = [&] {
        throw std::invalid_argument("rational: cannot parse '" + std::string(text) + "'");
    };
    if (text.empty()) fail();
    auto is_int = [&](std::string_view s, bool allow_sign) {
        if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) s.remove_prefix(1);
        if (s.empty()) return false;
        for (char ch : s)
            if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
        return true;
    };
    std::string_view num = text, den = "1";
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        num = text.substr(0, slash);
        den = text.substr(slash + 1);
    }
    if (!is_int(num, true) || !is_int(den, false)) fail();  // denominators are unsigned
    mpz_class n(std::string(num), 10), d(std::string(den), 10);
    if (d == 0) fail();
    Rational r;
    r.q_ = mpq_class(n, d);
    r.q_.canonicalize();
    return r;
}

std::string Rational::str() const {
    if (is_integer()) return num().get_str();
    return num().get_str() + "/" + den().get_str();
}

std::string Rational::decimal(int digits) const {
    // round-half-away scaled integer rendering
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    mpz_class twice = 2 * num() * scale;
    mpz_class q = (twice + (sign() < 0 ? -den() : den())) / (2 * den());
    bool neg = q < 0;
    mpz_class a = neg ? mpz_class(-q) : q;
    std::string ds = a.get_str();
    if (static_cast<int>(ds.size()) <= digits)
        ds.insert(0, std::string(static_cast<size_t>(digits) + 1 - ds.size(), '0'));
    ds.insert(ds.size() - static_cast<size_t>(digits), ".");
    return (neg ? "-" : "") + ds;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational rational_power_fraction(long num_scale, long base, unsigned long exp) {
    if (base <= 0) throw std::invalid_argument("rational_power_fraction: base must be positive");
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(base), exp);
    return Rational(mpz_class(num_scale), p);
}

}  // namespace maxmin
