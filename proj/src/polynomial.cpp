#include "orbsieve/polynomial.hpp"

#include <stdexcept>

namespace orbsieve {

Polynomial::Polynomial(std::size_t nvars, std::vector<Term> terms) : nvars_(nvars), terms_(std::move(terms)) {
    for (const auto& t : terms_)
        if (t.exponents.size() != nvars_) throw std::invalid_argument("Polynomial: term arity mismatch");
}

Polynomial Polynomial::constant(std::size_t nvars, BigInt c) {
    if (c.is_zero()) return Polynomial(nvars, {});
    return Polynomial(nvars, {Term{std::move(c), std::vector<unsigned>(nvars, 0)}});
}

Polynomial Polynomial::coordinate(std::size_t nvars, std::size_t index) {
    if (index >= nvars) throw std::invalid_argument("Polynomial: coordinate index out of range");
    std::vector<unsigned> e(nvars, 0);
    e[index] = 1;
    return Polynomial(nvars, {Term{BigInt(1), std::move(e)}});
}

Polynomial Polynomial::coordinate_product(std::size_t nvars) {
    return Polynomial(nvars, {Term{BigInt(1), std::vector<unsigned>(nvars, 1)}});
}

BigInt Polynomial::evaluate(const std::vector<BigInt>& point) const {
    if (point.size() != nvars_) throw std::invalid_argument("Polynomial: evaluation point dimension mismatch");
    BigInt acc(0);
    for (const auto& t : terms_) {
        BigInt term = t.coeff;
        for (std::size_t i = 0; i < nvars_; ++i)
            if (t.exponents[i]) term *= BigInt::pow(point[i], t.exponents[i]);
        acc += term;
    }
    return acc;
}

IntPolynomial::IntPolynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

IntPolynomial::IntPolynomial(std::initializer_list<std::int64_t> coeffs) {
    for (auto c : coeffs) coeffs_.emplace_back(c);
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

BigInt IntPolynomial::evaluate(const BigInt& x) const {
    BigInt acc(0);
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
    return acc;
}

std::uint32_t IntPolynomial::evaluate_mod(std::uint32_t x, std::uint32_t m) const {
    if (m == 0) throw std::domain_error("IntPolynomial: zero modulus");
    std::uint64_t acc = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        std::uint32_t c = coeffs_[i].mod_u32(m);
        if (coeffs_[i].is_negative() && c) c = m - c;
        acc = (acc * x + c) % m;
    }
    return static_cast<std::uint32_t>(acc);
}

bool IntPolynomial::vanishes_identically_mod(std::uint32_t p) const {
    for (const auto& c : coeffs_)
        if (c.mod_u32(p) != 0) return false;
    return true;
}

}  // namespace orbsieve
