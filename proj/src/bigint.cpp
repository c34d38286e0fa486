#include "orbsieve/bigint.hpp"

#include <algorithm>
#include <cmath>

namespace orbsieve {

namespace {
constexpr std::uint64_t kBase = 1ull << 32;
}

BigInt::BigInt(std::int64_t v) {
    if (v == 0) return;
    sign_ = v < 0 ? -1 : 1;
    std::uint64_t m = v < 0 ? ~static_cast<std::uint64_t>(v) + 1 : static_cast<std::uint64_t>(v);
    limbs_.push_back(static_cast<std::uint32_t>(m));
    if (m >> 32) limbs_.push_back(static_cast<std::uint32_t>(m >> 32));
}

BigInt BigInt::from_u64(std::uint64_t v) {
    BigInt r;
    if (v == 0) return r;
    r.sign_ = 1;
    r.limbs_.push_back(static_cast<std::uint32_t>(v));
    if (v >> 32) r.limbs_.push_back(static_cast<std::uint32_t>(v >> 32));
    return r;
}

void BigInt::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    if (limbs_.empty()) sign_ = 0;
}

BigInt BigInt::from_string(std::string_view dec) {
    std::size_t i = 0;
    int sign = 1;
    if (i < dec.size() && (dec[i] == '+' || dec[i] == '-')) {
        if (dec[i] == '-') sign = -1;
        ++i;
    }
    if (i == dec.size()) throw std::invalid_argument("BigInt: empty numeral");
    BigInt r;
    for (; i < dec.size(); ++i) {
        char c = dec[i];
        if (c < '0' || c > '9') throw std::invalid_argument("BigInt: bad digit in numeral");
        // r = r*10 + digit, in place over limbs
        std::uint64_t carry = static_cast<std::uint64_t>(c - '0');
        for (auto& limb : r.limbs_) {
            std::uint64_t t = static_cast<std::uint64_t>(limb) * 10 + carry;
            limb = static_cast<std::uint32_t>(t);
            carry = t >> 32;
        }
        if (carry) r.limbs_.push_back(static_cast<std::uint32_t>(carry));
    }
    r.sign_ = r.limbs_.empty() ? 0 : sign;
    r.trim();
    return r;
}

std::string BigInt::to_string() const {
    if (sign_ == 0) return "0";
    std::vector<std::uint32_t> tmp = limbs_;
    std::string digits;
    while (!tmp.empty()) {
        // divide by 1e9, collect remainder
        std::uint64_t rem = 0;
        for (std::size_t i = tmp.size(); i-- > 0;) {
            std::uint64_t cur = (rem << 32) | tmp[i];
            tmp[i] = static_cast<std::uint32_t>(cur / 1000000000ull);
            rem = cur % 1000000000ull;
        }
        while (!tmp.empty() && tmp.back() == 0) tmp.pop_back();
        for (int k = 0; k < 9; ++k) {
            digits.push_back(static_cast<char>('0' + rem % 10));
            rem /= 10;
        }
    }
    while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
    if (sign_ < 0) digits.push_back('-');
    std::reverse(digits.begin(), digits.end());
    return digits;
}

std::size_t BigInt::bit_length() const {
    if (limbs_.empty()) return 0;
    std::uint32_t top = limbs_.back();
    std::size_t bits = (limbs_.size() - 1) * 32;
    while (top) {
        ++bits;
        top >>= 1;
    }
    return bits;
}

bool BigInt::bit(std::size_t i) const {
    std::size_t limb = i / 32;
    if (limb >= limbs_.size()) return false;
    return (limbs_[limb] >> (i % 32)) & 1u;
}

bool BigInt::fits_u64() const { return sign_ >= 0 && limbs_.size() <= 2; }

bool BigInt::fits_i64() const {
    if (limbs_.size() > 2) return false;
    if (limbs_.empty()) return true;
    std::uint64_t m = limbs_[0];
    if (limbs_.size() == 2) m |= static_cast<std::uint64_t>(limbs_[1]) << 32;
    if (sign_ > 0) return m <= static_cast<std::uint64_t>(INT64_MAX);
    return m <= static_cast<std::uint64_t>(INT64_MAX) + 1;
}

std::uint64_t BigInt::to_u64() const {
    if (!fits_u64()) throw std::overflow_error("BigInt: does not fit u64");
    std::uint64_t m = limbs_.empty() ? 0 : limbs_[0];
    if (limbs_.size() == 2) m |= static_cast<std::uint64_t>(limbs_[1]) << 32;
    return m;
}

std::int64_t BigInt::to_i64() const {
    if (!fits_i64()) throw std::overflow_error("BigInt: does not fit i64");
    std::uint64_t m = limbs_.empty() ? 0 : limbs_[0];
    if (limbs_.size() == 2) m |= static_cast<std::uint64_t>(limbs_[1]) << 32;
    return sign_ < 0 ? -static_cast<std::int64_t>(m) : static_cast<std::int64_t>(m);
}

double BigInt::to_double() const {
    double v = 0.0;
    for (std::size_t i = limbs_.size(); i-- > 0;) v = v * 4294967296.0 + limbs_[i];
    return sign_ < 0 ? -v : v;
}

BigInt BigInt::abs() const {
    BigInt r = *this;
    if (r.sign_ < 0) r.sign_ = 1;
    return r;
}

BigInt BigInt::negated() const {
    BigInt r = *this;
    r.sign_ = -r.sign_;
    return r;
}

int BigInt::cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

std::vector<std::uint32_t> BigInt::add_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    const auto& lo = a.size() >= b.size() ? b : a;
    const auto& hi = a.size() >= b.size() ? a : b;
    std::vector<std::uint32_t> r(hi.size() + 1, 0);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < hi.size(); ++i) {
        std::uint64_t t = carry + hi[i] + (i < lo.size() ? lo[i] : 0u);
        r[i] = static_cast<std::uint32_t>(t);
        carry = t >> 32;
    }
    r[hi.size()] = static_cast<std::uint32_t>(carry);
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

std::vector<std::uint32_t> BigInt::sub_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> r(a.size(), 0);
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::int64_t t = static_cast<std::int64_t>(a[i]) - borrow - (i < b.size() ? b[i] : 0u);
        if (t < 0) {
            t += static_cast<std::int64_t>(kBase);
            borrow = 1;
        } else {
            borrow = 0;
        }
        r[i] = static_cast<std::uint32_t>(t);
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

std::vector<std::uint32_t> BigInt::mul_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::uint32_t> r(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::uint64_t carry = 0;
        std::uint64_t ai = a[i];
        for (std::size_t j = 0; j < b.size(); ++j) {
            std::uint64_t t = static_cast<std::uint64_t>(r[i + j]) + ai * b[j] + carry;
            r[i + j] = static_cast<std::uint32_t>(t);
            carry = t >> 32;
        }
        std::size_t k = i + b.size();
        while (carry) {
            std::uint64_t t = static_cast<std::uint64_t>(r[k]) + carry;
            r[k] = static_cast<std::uint32_t>(t);
            carry = t >> 32;
            ++k;
        }
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

BigInt& BigInt::operator+=(const BigInt& o) {
    if (o.sign_ == 0) return *this;
    if (sign_ == 0) {
        *this = o;
        return *this;
    }
    if (sign_ == o.sign_) {
        limbs_ = add_mag(limbs_, o.limbs_);
    } else {
        int c = cmp_mag(limbs_, o.limbs_);
        if (c == 0) {
            sign_ = 0;
            limbs_.clear();
        } else if (c > 0) {
            limbs_ = sub_mag(limbs_, o.limbs_);
        } else {
            limbs_ = sub_mag(o.limbs_, limbs_);
            sign_ = o.sign_;
        }
    }
    trim();
    return *this;
}

BigInt& BigInt::operator-=(const BigInt& o) { return *this += o.negated(); }

BigInt& BigInt::operator*=(const BigInt& o) {
    if (sign_ == 0 || o.sign_ == 0) {
        sign_ = 0;
        limbs_.clear();
        return *this;
    }
    limbs_ = mul_mag(limbs_, o.limbs_);
    sign_ = sign_ * o.sign_;
    trim();
    return *this;
}

// Knuth algorithm D on 32-bit limbs with 64-bit intermediates.
void BigInt::divmod_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                        std::vector<std::uint32_t>& q, std::vector<std::uint32_t>& r) {
    q.clear();
    r.clear();
    if (b.empty()) throw std::domain_error("BigInt: division by zero");
    if (cmp_mag(a, b) < 0) {
        r = a;
        return;
    }
    if (b.size() == 1) {
        std::uint64_t d = b[0];
        q.assign(a.size(), 0);
        std::uint64_t rem = 0;
        for (std::size_t i = a.size(); i-- > 0;) {
            std::uint64_t cur = (rem << 32) | a[i];
            q[i] = static_cast<std::uint32_t>(cur / d);
            rem = cur % d;
        }
        while (!q.empty() && q.back() == 0) q.pop_back();
        if (rem) r.push_back(static_cast<std::uint32_t>(rem));
        return;
    }
    // normalize so the top limb of v has its high bit set
    int shift = 0;
    for (std::uint32_t top = b.back(); (top & 0x80000000u) == 0; top <<= 1) ++shift;
    auto shl = [&](const std::vector<std::uint32_t>& x) {
        std::vector<std::uint32_t> y(x.size() + 1, 0);
        for (std::size_t i = 0; i < x.size(); ++i) {
            y[i] |= x[i] << shift;
            if (shift) y[i + 1] |= static_cast<std::uint32_t>(static_cast<std::uint64_t>(x[i]) >> (32 - shift));
        }
        while (!y.empty() && y.back() == 0) y.pop_back();
        return y;
    };
    std::vector<std::uint32_t> u = shl(a);
    std::vector<std::uint32_t> v = shl(b);
    const std::size_t n = v.size();
    const std::size_t m = u.size() - n;
    u.resize(u.size() + 1, 0);
    q.assign(m + 1, 0);
    const std::uint64_t vtop = v[n - 1];
    const std::uint64_t vnext = v[n - 2];
    for (std::size_t j = m + 1; j-- > 0;) {
        std::uint64_t num = (static_cast<std::uint64_t>(u[j + n]) << 32) | u[j + n - 1];
        std::uint64_t qhat = num / vtop;
        std::uint64_t rhat = num % vtop;
        if (qhat > 0xFFFFFFFFull) {
            qhat = 0xFFFFFFFFull;
            rhat = num - qhat * vtop;
        }
        while (rhat <= 0xFFFFFFFFull && qhat * vnext > ((rhat << 32) | u[j + n - 2])) {
            --qhat;
            rhat += vtop;
        }
        // u[j .. j+n] -= qhat * v
        std::int64_t borrow = 0;
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < n; ++i) {
            std::uint64_t p = qhat * v[i] + carry;
            carry = p >> 32;
            std::int64_t t = static_cast<std::int64_t>(u[j + i]) - borrow - static_cast<std::int64_t>(p & 0xFFFFFFFFull);
            if (t < 0) {
                t += static_cast<std::int64_t>(kBase);
                borrow = 1;
            } else {
                borrow = 0;
            }
            u[j + i] = static_cast<std::uint32_t>(t);
        }
        std::int64_t t = static_cast<std::int64_t>(u[j + n]) - borrow - static_cast<std::int64_t>(carry);
        if (t < 0) {
            // qhat was one too large: add v back
            t += static_cast<std::int64_t>(kBase);
            --qhat;
            std::uint64_t c2 = 0;
            for (std::size_t i = 0; i < n; ++i) {
                std::uint64_t s = static_cast<std::uint64_t>(u[j + i]) + v[i] + c2;
                u[j + i] = static_cast<std::uint32_t>(s);
                c2 = s >> 32;
            }
            t += static_cast<std::int64_t>(c2);
            t &= 0xFFFFFFFFll;
        }
        u[j + n] = static_cast<std::uint32_t>(t);
        q[j] = static_cast<std::uint32_t>(qhat);
    }
    while (!q.empty() && q.back() == 0) q.pop_back();
    // denormalize remainder
    u.resize(n);
    r.assign(n, 0);
    std::uint32_t carry_bits = 0;
    for (std::size_t i = n; i-- > 0;) {
        std::uint32_t cur = u[i];
        r[i] = (cur >> shift) | carry_bits;
        carry_bits = shift ? cur << (32 - shift) : 0;
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
}

BigInt::DivResult BigInt::divmod(const BigInt& a, const BigInt& b) {
    if (b.sign_ == 0) throw std::domain_error("BigInt: division by zero");
    DivResult out;
    if (a.sign_ == 0) return out;
    std::vector<std::uint32_t> q, r;
    divmod_mag(a.limbs_, b.limbs_, q, r);
    out.quot.limbs_ = std::move(q);
    out.quot.sign_ = out.quot.limbs_.empty() ? 0 : a.sign_ * b.sign_;
    out.rem.limbs_ = std::move(r);
    out.rem.sign_ = out.rem.limbs_.empty() ? 0 : a.sign_;
    return out;
}

bool BigInt::divisible_by(const BigInt& d) const {
    if (d.sign_ == 0) throw std::domain_error("BigInt: divisibility by zero");
    if (sign_ == 0) return true;
    if (d.limbs_.size() == 1) return mod_u32(d.limbs_[0]) == 0;
    return divmod(*this, d).rem.is_zero();
}

std::uint32_t BigInt::mod_u32(std::uint32_t m) const {
    if (m == 0) throw std::domain_error("BigInt: mod by zero");
    std::uint64_t rem = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) rem = ((rem << 32) | limbs_[i]) % m;
    return static_cast<std::uint32_t>(rem);
}

BigInt BigInt::shifted_left(std::size_t bits) const {
    if (sign_ == 0 || bits == 0) return *this;
    BigInt r;
    r.sign_ = sign_;
    std::size_t limb_shift = bits / 32;
    int s = static_cast<int>(bits % 32);
    r.limbs_.assign(limbs_.size() + limb_shift + 1, 0);
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        r.limbs_[i + limb_shift] |= limbs_[i] << s;
        if (s) r.limbs_[i + limb_shift + 1] |= static_cast<std::uint32_t>(static_cast<std::uint64_t>(limbs_[i]) >> (32 - s));
    }
    r.trim();
    return r;
}

BigInt BigInt::shifted_right(std::size_t bits) const {
    if (sign_ == 0) return *this;
    std::size_t limb_shift = bits / 32;
    if (limb_shift >= limbs_.size()) return BigInt();
    int s = static_cast<int>(bits % 32);
    BigInt r;
    r.sign_ = sign_;
    r.limbs_.assign(limbs_.size() - limb_shift, 0);
    for (std::size_t i = 0; i < r.limbs_.size(); ++i) {
        r.limbs_[i] = limbs_[i + limb_shift] >> s;
        if (s && i + limb_shift + 1 < limbs_.size())
            r.limbs_[i] |= static_cast<std::uint32_t>(static_cast<std::uint64_t>(limbs_[i + limb_shift + 1]) << (32 - s));
    }
    r.trim();
    return r;
}

std::strong_ordering BigInt::operator<=>(const BigInt& o) const {
    if (sign_ != o.sign_) return sign_ <=> o.sign_;
    int c = cmp_mag(limbs_, o.limbs_);
    if (sign_ < 0) c = -c;
    return c <=> 0;
}

std::uint64_t BigInt::hash64() const {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](std::uint64_t v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    mix(static_cast<std::uint64_t>(static_cast<std::int64_t>(sign_)));
    for (auto limb : limbs_) mix(limb);
    return h;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
    a = a.abs();
    b = b.abs();
    while (!b.is_zero()) {
        BigInt r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

BigInt BigInt::pow(const BigInt& base, std::uint64_t e) {
    BigInt result(1);
    BigInt acc = base;
    while (e) {
        if (e & 1) result *= acc;
        e >>= 1;
        if (e) acc *= acc;
    }
    return result;
}

BigInt BigInt::pow_mod(const BigInt& base, const BigInt& e, const BigInt& m) {
    if (m.sign_ <= 0) throw std::domain_error("BigInt: pow_mod needs positive modulus");
    if (e.sign_ < 0) throw std::domain_error("BigInt: negative exponent");
    BigInt result(1);
    BigInt acc = base % m;
    if (acc.sign_ < 0) acc += m;
    const std::size_t nbits = e.bit_length();
    for (std::size_t i = 0; i < nbits; ++i) {
        if (e.bit(i)) result = (result * acc) % m;
        acc = (acc * acc) % m;
    }
    return result;
}

}  // namespace orbsieve
