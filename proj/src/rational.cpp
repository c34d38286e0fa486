#include "orbsieve/rational.hpp"

#include <cmath>

namespace orbsieve {

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
    normalize();
}

void Rational::normalize() {
    if (den_.is_negative()) {
        num_ = num_.negated();
        den_ = den_.negated();
    }
    if (num_.is_zero()) {
        den_ = BigInt(1);
        return;
    }
    BigInt g = BigInt::gcd(num_, den_);
    if (g != BigInt(1)) {
        num_ = num_ / g;
        den_ = den_ / g;
    }
}

Rational& Rational::operator+=(const Rational& o) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
    normalize();
    return *this;
}

Rational& Rational::operator-=(const Rational& o) {
    num_ = num_ * o.den_ - o.num_ * den_;
    den_ *= o.den_;
    normalize();
    return *this;
}

Rational& Rational::operator*=(const Rational& o) {
    num_ *= o.num_;
    den_ *= o.den_;
    normalize();
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.num_.is_zero()) throw std::domain_error("Rational: division by zero");
    num_ *= o.den_;
    den_ *= o.num_;
    normalize();
    return *this;
}

Rational Rational::operator-() const {
    Rational r = *this;
    r.num_ = r.num_.negated();
    return r;
}

std::strong_ordering Rational::operator<=>(const Rational& o) const {
    return (num_ * o.den_) <=> (o.num_ * den_);
}

std::string Rational::to_string() const {
    if (is_integer()) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
}

double Rational::to_double() const {
    // scale both sides down so the division stays in range
    BigInt n = num_.abs(), d = den_;
    std::size_t nb = n.bit_length(), db = d.bit_length();
    if (nb > 900) {
        n = n.shifted_right(nb - 900);
        d = d.shifted_right(nb - 900);
        if (d.is_zero()) return num_.is_negative() ? -HUGE_VAL : HUGE_VAL;
    } else if (db > 900) {
        d = d.shifted_right(db - 900);
        n = n.shifted_right(db - 900);
        if (d.is_zero()) return num_.is_negative() ? -HUGE_VAL : HUGE_VAL;
    }
    double v = n.to_double() / d.to_double();
    return num_.is_negative() ? -v : v;
}

}  // namespace orbsieve
