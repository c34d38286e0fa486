#pragma once

#include <cstdint>
#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace orbsieve {

// Arbitrary-precision signed integer, sign-magnitude over 32-bit limbs
// (little-endian, no leading zero limbs; zero has empty limbs and sign 0).
// All arithmetic is exact; decimal round-trip is exact.
class BigInt {
public:
    BigInt() = default;
    BigInt(std::int64_t v);
    static BigInt from_u64(std::uint64_t v);
    static BigInt from_string(std::string_view dec);

    std::string to_string() const;

    bool is_zero() const { return sign_ == 0; }
    bool is_negative() const { return sign_ < 0; }
    bool is_even() const { return limbs_.empty() || (limbs_[0] & 1u) == 0; }
    bool is_odd() const { return !is_even(); }
    int signum() const { return sign_; }

    // Number of significant bits of |x|; 0 for x = 0.
    std::size_t bit_length() const;
    bool bit(std::size_t i) const;

    bool fits_u64() const;
    bool fits_i64() const;
    std::uint64_t to_u64() const;   // requires fits_u64() and x >= 0
    std::int64_t to_i64() const;    // requires fits_i64()
    double to_double() const;       // may overflow to +/-inf for huge values

    BigInt abs() const;
    BigInt negated() const;

    BigInt operator-() const { return negated(); }
    BigInt& operator+=(const BigInt& o);
    BigInt& operator-=(const BigInt& o);
    BigInt& operator*=(const BigInt& o);

    friend BigInt operator+(BigInt a, const BigInt& b) { return a += b; }
    friend BigInt operator-(BigInt a, const BigInt& b) { return a -= b; }
    friend BigInt operator*(BigInt a, const BigInt& b) { return a *= b; }

    // Truncated division: q = trunc(a/b), r = a - q*b (sign of r follows a).
    struct DivResult;
    static DivResult divmod(const BigInt& a, const BigInt& b);

    bool divisible_by(const BigInt& d) const;
    std::uint32_t mod_u32(std::uint32_t m) const;   // |x| mod m
    BigInt shifted_left(std::size_t bits) const;
    BigInt shifted_right(std::size_t bits) const;

    std::strong_ordering operator<=>(const BigInt& o) const;
    bool operator==(const BigInt& o) const = default;

    std::uint64_t hash64() const;

    static BigInt gcd(BigInt a, BigInt b);
    static BigInt pow(const BigInt& base, std::uint64_t e);
    // (base^e) mod m, m >= 1
    static BigInt pow_mod(const BigInt& base, const BigInt& e, const BigInt& m);

private:
    int sign_ = 0;
    std::vector<std::uint32_t> limbs_;

    void trim();
    static int cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b);
    static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b);
    // requires |a| >= |b|
    static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b);
    static std::vector<std::uint32_t> mul_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b);
    static void divmod_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                           std::vector<std::uint32_t>& q, std::vector<std::uint32_t>& r);
};

struct BigInt::DivResult {
    BigInt quot, rem;
};

inline BigInt operator/(const BigInt& a, const BigInt& b) { return BigInt::divmod(a, b).quot; }
inline BigInt operator%(const BigInt& a, const BigInt& b) { return BigInt::divmod(a, b).rem; }

inline BigInt operator""_bi(const char* s) { return BigInt::from_string(s); }

struct BigIntHash {
    std::size_t operator()(const BigInt& x) const { return static_cast<std::size_t>(x.hash64()); }
};

}  // namespace orbsieve
