#pragma once

#include <optional>
#include <utility>

#include "orbsieve/bigint.hpp"

namespace orbsieve {

// Complete prime factorization: |n| = product of prime^exp, primes strictly
// increasing, sign carried separately. Only produced for n != 0.
struct Factorization {
    int sign = 1;
    std::vector<std::pair<BigInt, unsigned>> prime_powers;

    std::uint64_t omega() const {
        std::uint64_t s = 0;
        for (const auto& [p, e] : prime_powers) s += e;
        return s;
    }
    BigInt reconstruct() const;
};

// Effort bounds for factoring. Exhausting them is a first-class outcome
// ("unfactored"), never silently treated as prime.
struct FactorEffort {
    std::uint32_t trial_division_bound = 1u << 20;
    std::uint64_t rho_iterations = 30'000'000;  // total Brent iterations per input
    std::uint32_t max_cofactor_bits = 768;      // cofactors above this are left unfactored
};

struct FactorOutcome {
    Factorization factors;       // certified prime part
    BigInt cofactor = BigInt(1); // 1 when complete; remaining unfactored part otherwise
    bool complete = true;
    bool cofactor_known_composite = false;

    // Lower bound on Omega(|n|) implied by the certified part and the cofactor status.
    std::uint64_t omega_lower_bound() const {
        std::uint64_t lb = factors.omega();
        if (!complete) lb += cofactor_known_composite ? 2 : 1;
        return lb;
    }
};

FactorOutcome factor(const BigInt& n, const FactorEffort& effort = {});

// Omega(n) = number of prime factors with multiplicity; Omega(0) = +infinity.
// Unknown is the effort-bound outcome, with a certified lower bound attached.
enum class OmegaKind { Finite, Infinite, Unknown };
struct OmegaValue {
    OmegaKind kind = OmegaKind::Finite;
    std::uint64_t count = 0;        // exact when Finite
    std::uint64_t lower_bound = 0;  // valid in all finite-value cases (== count when Finite)

    bool known_at_most(std::uint64_t r) const { return kind == OmegaKind::Finite && count <= r; }
    bool possibly_at_most(std::uint64_t r) const {
        return kind != OmegaKind::Infinite && lower_bound <= r;
    }
};
OmegaValue omega(const BigInt& n, const FactorEffort& effort = {});

// Moebius function; requires d >= 1. Throws if d cannot be factored within effort.
int moebius(const BigInt& d, const FactorEffort& effort = {});

// Deterministic Miller-Rabin for n < 2^64; 12 fixed prime bases plus a strong
// Lucas (Selfridge) check above that.
bool is_prime(const BigInt& n);
bool is_prime_u64(std::uint64_t n);

// Jacobi symbol (a | n) for odd n >= 1.
int jacobi(const BigInt& a, const BigInt& n);

// Eratosthenes; all primes < bound.
std::vector<std::uint32_t> primes_below(std::uint32_t bound);

// Omega(n) for all 0 <= n <= bound via a smallest-prime-factor sieve
// (omega_table()[0] is meaningless; Omega(0) is handled by omega()).
std::vector<std::uint8_t> omega_table(std::uint32_t bound);

// Floor square root of a nonnegative BigInt.
BigInt isqrt(const BigInt& n);

}  // namespace orbsieve
