#pragma once

#include "orbsieve/bigint.hpp"

namespace orbsieve {

// Sparse multivariate polynomial with integer coefficients, one exponent per
// variable. Used for orbit values f(gamma * x0).
class Polynomial {
public:
    struct Term {
        BigInt coeff;
        std::vector<unsigned> exponents;  // size == nvars
    };

    Polynomial(std::size_t nvars, std::vector<Term> terms);

    static Polynomial constant(std::size_t nvars, BigInt c);
    static Polynomial coordinate(std::size_t nvars, std::size_t index);
    static Polynomial coordinate_product(std::size_t nvars);

    std::size_t nvars() const { return nvars_; }
    const std::vector<Term>& terms() const { return terms_; }

    BigInt evaluate(const std::vector<BigInt>& point) const;

private:
    std::size_t nvars_;
    std::vector<Term> terms_;
};

// Dense univariate integer polynomial, coefficients low degree first.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<BigInt> coeffs);
    IntPolynomial(std::initializer_list<std::int64_t> coeffs);

    std::size_t degree() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<BigInt>& coeffs() const { return coeffs_; }

    BigInt evaluate(const BigInt& x) const;
    // Horner evaluation of f(x) mod m, m < 2^32.
    std::uint32_t evaluate_mod(std::uint32_t x, std::uint32_t m) const;
    bool vanishes_identically_mod(std::uint32_t p) const;  // all coefficients == 0 mod p

private:
    std::vector<BigInt> coeffs_;
};

}  // namespace orbsieve
