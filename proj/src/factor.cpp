#include "orbsieve/factor.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace orbsieve {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod_u64(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod_u64(u64 b, u64 e, u64 m) {
    u64 r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, b, m);
        b = mulmod_u64(b, b, m);
        e >>= 1;
    }
    return r;
}

u64 gcd_u64(u64 a, u64 b) {
    while (b) {
        u64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

constexpr u64 kMrBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

bool miller_rabin_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : kMrBases) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : kMrBases) {
        u64 x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

// Brent's cycle variant; returns a nontrivial factor of composite odd n, or 0
// if the iteration budget ran out. Deterministic (fixed parameter schedule).
u64 brent_rho_u64(u64 n, u64& budget) {
    if ((n & 1) == 0) return 2;
    for (u64 c = 1; budget > 0; ++c) {
        u64 x = 2, y = 2, d = 1;
        u64 q = 1;
        const u64 m = 128;
        u64 r = 1;
        u64 ys = y;
        while (d == 1 && budget > 0) {
            x = y;
            for (u64 i = 0; i < r && budget > 0; ++i) {
                y = (mulmod_u64(y, y, n) + c) % n;
                --budget;
            }
            u64 k = 0;
            while (k < r && d == 1 && budget > 0) {
                ys = y;
                u64 lim = std::min(m, r - k);
                for (u64 i = 0; i < lim && budget > 0; ++i) {
                    y = (mulmod_u64(y, y, n) + c) % n;
                    q = mulmod_u64(q, x > y ? x - y : y - x, n);
                    --budget;
                }
                d = gcd_u64(q, n);
                k += lim;
            }
            r <<= 1;
        }
        if (d == n) {
            // backtrack a step at a time
            d = 1;
            while (d == 1) {
                ys = (mulmod_u64(ys, ys, n) + c) % n;
                d = gcd_u64(x > ys ? x - ys : ys - x, n);
            }
        }
        if (d != n && d != 1) return d;
        // d == n: retry with the next polynomial constant
    }
    return 0;
}

// ---- BigInt primality: deterministic MR bases + strong Lucas ----

int jacobi_impl(BigInt a, BigInt n) {
    a = a % n;
    if (a.is_negative()) a += n;
    int result = 1;
    while (!a.is_zero()) {
        std::size_t twos = 0;
        while (a.is_even()) {
            a = a.shifted_right(1);
            ++twos;
        }
        if (twos & 1) {
            std::uint32_t nm8 = n.mod_u32(8);
            if (nm8 == 3 || nm8 == 5) result = -result;
        }
        if (a.mod_u32(4) == 3 && n.mod_u32(4) == 3) result = -result;
        std::swap(a, n);
        a = a % n;
    }
    return n == BigInt(1) ? result : 0;
}

bool miller_rabin_big(const BigInt& n) {
    BigInt n1 = n - BigInt(1);
    BigInt d = n1;
    std::size_t s = 0;
    while (d.is_even()) {
        d = d.shifted_right(1);
        ++s;
    }
    for (u64 a : kMrBases) {
        BigInt x = BigInt::pow_mod(BigInt(static_cast<std::int64_t>(a)), d, n);
        if (x == BigInt(1) || x == n1) continue;
        bool witness = true;
        for (std::size_t r = 1; r < s; ++r) {
            x = (x * x) % n;
            if (x == n1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

bool strong_lucas_big(const BigInt& n) {
    // Selfridge parameter search: D = 5, -7, 9, -11, ... with (D|n) = -1
    BigInt d_param;
    std::int64_t dmag = 5;
    int sign = 1;
    for (;;) {
        BigInt cand(sign > 0 ? dmag : -dmag);
        int j = jacobi_impl(cand, n);
        if (j == -1) {
            d_param = cand;
            break;
        }
        if (j == 0) return cand.abs() == n;  // shares a factor with n
        dmag += 2;
        sign = -sign;
        if (dmag > 1000) {
            // (D|n) never hit -1: n is a perfect square (composite) at this point
            BigInt r = isqrt(n);
            if (r * r == n) return false;
        }
    }
    // P = 1, Q = (1 - D) / 4
    BigInt q_param = (BigInt(1) - d_param) / BigInt(4);
    BigInt m = n + BigInt(1);
    std::size_t s = 0;
    while (m.is_even()) {
        m = m.shifted_right(1);
        ++s;
    }
    auto half_mod = [&](BigInt x) {
        x = x % n;
        if (x.is_negative()) x += n;
        if (x.is_odd()) x += n;
        return (x.shifted_right(1)) % n;
    };
    // binary ladder from the top bit of m computing (U_k, V_k, Q^k)
    BigInt u(1), v(1), qk = q_param % n;
    if (qk.is_negative()) qk += n;
    for (std::size_t i = m.bit_length() - 1; i-- > 0;) {
        // double: k -> 2k
        u = (u * v) % n;
        v = (v * v - qk - qk) % n;
        if (v.is_negative()) v += n;
        qk = (qk * qk) % n;
        if (m.bit(i)) {
            // increment: 2k -> 2k+1 (P = 1)
            BigInt u_next = half_mod(u + v);
            BigInt v_next = half_mod(d_param * u + v);
            u = u_next;
            v = v_next;
            qk = (qk * q_param) % n;
            if (qk.is_negative()) qk += n;
        }
    }
    // strong test on U_m, V_{m * 2^r}
    if (u.is_zero() || v.is_zero()) return true;
    for (std::size_t r = 1; r < s; ++r) {
        v = (v * v - qk - qk) % n;
        if (v.is_negative()) v += n;
        if (v.is_zero()) return true;
        qk = (qk * qk) % n;
    }
    return false;
}

const std::vector<std::uint32_t>& trial_primes() {
    static const std::vector<std::uint32_t> table = primes_below(1u << 20);
    return table;
}

}  // namespace

std::vector<std::uint32_t> primes_below(std::uint32_t bound) {
    std::vector<std::uint32_t> out;
    if (bound <= 2) return out;
    std::vector<bool> composite(bound, false);
    for (std::uint32_t i = 2; i < bound; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = static_cast<std::uint64_t>(i) * i; j < bound; j += i) composite[j] = true;
    }
    return out;
}

std::vector<std::uint8_t> omega_table(std::uint32_t bound) {
    std::vector<std::uint32_t> spf(bound + 1, 0);
    for (std::uint32_t i = 2; i <= bound; ++i) {
        if (spf[i]) continue;
        for (std::uint64_t j = i; j <= bound; j += i)
            if (!spf[j]) spf[j] = i;
    }
    std::vector<std::uint8_t> om(bound + 1, 0);
    for (std::uint32_t i = 2; i <= bound; ++i) om[i] = om[i / spf[i]] + 1;
    return om;
}

bool is_prime_u64(u64 n) { return miller_rabin_u64(n); }

bool is_prime(const BigInt& n) {
    if (n.signum() <= 0) return false;
    if (n.fits_u64()) return miller_rabin_u64(n.to_u64());
    if (n.is_even()) return false;
    if (!miller_rabin_big(n)) return false;
    return strong_lucas_big(n);
}

int jacobi(const BigInt& a, const BigInt& n) {
    if (n.signum() <= 0 || n.is_even()) throw std::invalid_argument("jacobi: n must be odd and positive");
    return jacobi_impl(a, n);
}

BigInt isqrt(const BigInt& n) {
    if (n.is_negative()) throw std::domain_error("isqrt: negative input");
    if (n.is_zero()) return BigInt(0);
    BigInt x = BigInt(1).shifted_left(n.bit_length() / 2 + 1);
    for (;;) {
        BigInt y = (x + n / x).shifted_right(1);
        if (y >= x) break;
        x = y;
    }
    return x;
}

namespace {

// Brent rho over BigInt; used only when the cofactor exceeds 64 bits.
BigInt brent_rho_big(const BigInt& n, u64& budget) {
    if (n.is_even()) return BigInt(2);
    for (std::int64_t c = 1; budget > 0; ++c) {
        const BigInt cc(c);
        BigInt x(2), y(2), d(1), q(1), ys(2);
        u64 r = 1;
        const u64 m = 64;
        while (d == BigInt(1) && budget > 0) {
            x = y;
            for (u64 i = 0; i < r && budget > 0; ++i) {
                y = (y * y + cc) % n;
                --budget;
            }
            u64 k = 0;
            while (k < r && d == BigInt(1) && budget > 0) {
                ys = y;
                u64 lim = std::min(m, r - k);
                for (u64 i = 0; i < lim && budget > 0; ++i) {
                    y = (y * y + cc) % n;
                    BigInt diff = x - y;
                    if (diff.is_negative()) diff = diff.negated();
                    if (!diff.is_zero()) q = (q * diff) % n;
                    --budget;
                }
                d = BigInt::gcd(q, n);
                k += lim;
            }
            r <<= 1;
        }
        if (d == n) {
            d = BigInt(1);
            while (d == BigInt(1)) {
                ys = (ys * ys + cc) % n;
                BigInt diff = x - ys;
                if (diff.is_negative()) diff = diff.negated();
                d = BigInt::gcd(diff, n);
            }
        }
        if (d != n && d != BigInt(1)) return d;
    }
    return BigInt(0);
}

void insert_prime(std::map<BigInt, unsigned>& acc, const BigInt& p, unsigned e) { acc[p] += e; }

}  // namespace

FactorOutcome factor(const BigInt& n, const FactorEffort& effort) {
    if (n.is_zero()) throw std::invalid_argument("factor: zero has no factorization");
    FactorOutcome out;
    out.factors.sign = n.signum();
    std::map<BigInt, unsigned> acc;

    // Strip small primes once; after this phase no pending value has a prime
    // factor below the scanned range, so rho-produced splits skip trial division.
    BigInt m = n.abs();
    bool small_domain = m.fits_u64();
    u64 v = small_domain ? m.to_u64() : 0;
    for (std::uint32_t p : trial_primes()) {
        if (p >= effort.trial_division_bound) break;
        unsigned e = 0;
        if (small_domain) {
            if (static_cast<u64>(p) * p > v) break;  // remainder is prime or 1
            while (v % p == 0) {
                v /= p;
                ++e;
            }
        } else {
            while (m.mod_u32(p) == 0) {
                m = m / BigInt(static_cast<std::int64_t>(p));
                ++e;
            }
            if (m.fits_u64()) {
                small_domain = true;
                v = m.to_u64();
            }
        }
        if (e) insert_prime(acc, BigInt(static_cast<std::int64_t>(p)), e);
    }
    BigInt remainder = small_domain ? BigInt::from_u64(v) : m;

    u64 budget = effort.rho_iterations;
    std::vector<BigInt> pending;
    if (remainder > BigInt(1)) pending.push_back(remainder);
    while (!pending.empty()) {
        BigInt cur = pending.back();
        pending.pop_back();
        if (cur.fits_u64()) {
            u64 w = cur.to_u64();
            if (w == 1) continue;
            if (miller_rabin_u64(w)) {
                insert_prime(acc, cur, 1);
                continue;
            }
            u64 f = brent_rho_u64(w, budget);
            if (f == 0) {
                out.complete = false;
                out.cofactor *= cur;
                out.cofactor_known_composite = true;
                continue;
            }
            pending.push_back(BigInt::from_u64(f));
            pending.push_back(BigInt::from_u64(w / f));
            continue;
        }
        if (cur.bit_length() > effort.max_cofactor_bits) {
            out.complete = false;
            out.cofactor *= cur;
            continue;
        }
        if (is_prime(cur)) {
            insert_prime(acc, cur, 1);
            continue;
        }
        BigInt f = brent_rho_big(cur, budget);
        if (f.is_zero()) {
            out.complete = false;
            out.cofactor *= cur;
            out.cofactor_known_composite = true;
            continue;
        }
        pending.push_back(f);
        pending.push_back(cur / f);
    }
    out.factors.prime_powers.assign(acc.begin(), acc.end());
    return out;
}

BigInt Factorization::reconstruct() const {
    BigInt v(sign);
    for (const auto& [p, e] : prime_powers) v *= BigInt::pow(p, e);
    return v;
}

OmegaValue omega(const BigInt& n, const FactorEffort& effort) {
    OmegaValue v;
    if (n.is_zero()) {
        v.kind = OmegaKind::Infinite;
        return v;
    }
    FactorOutcome f = factor(n, effort);
    if (f.complete) {
        v.kind = OmegaKind::Finite;
        v.count = f.factors.omega();
        v.lower_bound = v.count;
    } else {
        v.kind = OmegaKind::Unknown;
        v.lower_bound = f.omega_lower_bound();
    }
    return v;
}

int moebius(const BigInt& d, const FactorEffort& effort) {
    if (d.signum() <= 0) throw std::invalid_argument("moebius: requires d >= 1");
    if (d == BigInt(1)) return 1;
    FactorOutcome f = factor(d, effort);
    if (!f.complete) throw std::runtime_error("moebius: input could not be factored within effort bounds");
    for (const auto& [p, e] : f.factors.prime_powers)
        if (e > 1) return 0;
    return f.factors.omega() % 2 == 0 ? 1 : -1;
}

}  // namespace orbsieve
