#pragma once

#include <functional>

#include "orbsieve/factor.hpp"
#include "orbsieve/finite_table.hpp"
#include "orbsieve/polynomial.hpp"
#include "orbsieve/rational.hpp"
#include "orbsieve/walk.hpp"

namespace orbsieve::sieve {

// One measured item of an abstract sieve sequence: a value n(y) and a weight.
// Items with n(y) = 0 form the zero set Y0 and never enter sifted counts;
// negative values sieve through |n(y)|.
struct SieveItem {
    std::string label;
    BigInt value;
    Rational weight = Rational(1);
};

class SieveSequence {
public:
    static SieveSequence from_items(std::vector<SieveItem> items);
    // Counting measure on lo..hi with n(y) = y.
    static SieveSequence counting_range(std::uint64_t lo, std::uint64_t hi);
    static SieveSequence from_values(const std::vector<BigInt>& values);

    const std::vector<SieveItem>& items() const { return items_; }       // Y+, n(y) != 0
    const std::vector<SieveItem>& zero_items() const { return zeros_; }  // Y0
    const Rational& total_mass() const { return mass_; }                 // S(F) over Y+
    Rational zero_mass() const;

private:
    std::vector<SieveItem> items_;
    std::vector<SieveItem> zeros_;
    Rational mass_;
};

// S_d(F): mass of the items with d | n(y); d >= 1 squarefree.
Rational congruence_sum(const SieveSequence& seq, const BigInt& d);

struct LegendreResult {
    Rational inclusion_exclusion;  // sum over d | P(z) of mu(d) * S_d(F)
    Rational direct;               // mass of items with gcd(n(y), P(z)) = 1
    bool routes_agree = false;
    bool budget_exceeded = false;  // direct route only; inclusion-exclusion skipped
    BigInt prime_product;          // P(z)
    std::size_t divisor_count = 0;
};

// Legendre sift over the primes of `primes` below z, computed by both routes.
LegendreResult legendre_sift(const SieveSequence& seq, const std::vector<std::uint64_t>& primes,
                             std::uint64_t z, std::size_t divisor_budget = std::size_t(1) << 22);

// |Omega_p| / |Y_p| under the uniform measure on an enumerated table.
struct LocalDensity {
    std::uint64_t prime = 0;
    std::uint64_t omega_count = 0;
    std::uint64_t group_size = 0;
    Rational density;
};
using ElementPredicate = std::function<bool(const orbits::FiniteGroupTable&, std::uint32_t)>;
LocalDensity local_density(const orbits::FiniteGroupTable& table, const ElementPredicate& predicate);

// Predicate "f(gamma * x0) == 0 mod p" on reduced matrices.
ElementPredicate orbit_zero_predicate(const Polynomial& f, const std::vector<BigInt>& x0);

// Least-squares slope kappa of  sum_{p <= x} g(p) log p  against  log x,
// sampled at every supplied prime, free intercept (the O(1) term).
struct DimensionFit {
    double kappa = 0.0;
    double intercept = 0.0;
    double rms_residual = 0.0;
    std::size_t points = 0;
};
DimensionFit dimension_estimate(const std::vector<std::pair<std::uint64_t, Rational>>& prime_densities);

// rho_f(p) by evaluation over Z/pZ; throws when f vanishes identically mod p.
std::uint64_t poly_root_count_prime(const IntPolynomial& f, std::uint32_t p);
// rho_f(d) for squarefree d, multiplicative across p | d (CRT).
BigInt poly_root_count(const IntPolynomial& f, const BigInt& d);

// Large-sieve mass H = sum_{d < z, d squarefree over the supplied primes}
// prod_{p | d} nu_p / (1 - nu_p), and the bound mass/H.
struct LargeSieveMass {
    bool finite = true;                 // false when some nu_p = 1 ("sifted set empty mod p")
    std::uint64_t empty_mod_prime = 0;  // witness prime when !finite
    Rational h;
    Rational sifted_upper_bound;        // total_mass / H
};
LargeSieveMass large_sieve_mass(const std::vector<LocalDensity>& densities, std::uint64_t z,
                                const Rational& total_mass = Rational(1));

// Mean-square concentration of the prime-divisor count around its expectation.
struct PrimeCondition {
    std::uint64_t prime = 0;
    Rational density;  // nu_p(Omega_p), exact
    std::function<bool(const orbits::ResidueMatrix&, std::size_t dim)> predicate;
};
struct ConcentrationReport {
    Rational expected;             // sum of densities
    Rational variance_prediction;  // sum nu_p (1 - nu_p)
    Rational mean_square;          // empirical mean of (t(y) - expected)^2
    std::size_t samples = 0;
};
ConcentrationReport prime_divisor_concentration(const orbits::WalkEnsemble& ensemble,
                                                const std::vector<PrimeCondition>& conditions);

// Almost-prime saturation statistics over a walk ensemble. Unfactored values
// bracket the fraction: `lower` counts only certified Omega <= r, `upper` also
// counts samples whose unresolved part could keep Omega <= r.
struct AlmostPrimeStats {
    std::uint32_t r_max = 0;
    std::vector<Rational> lower_fraction;  // index r in 0..r_max
    std::vector<Rational> upper_fraction;
    Rational zero_fraction;        // f-value 0, Omega = +infinity
    Rational unfactored_fraction;  // effort bound hit
    std::size_t samples = 0;
};
AlmostPrimeStats almost_prime_measure(const orbits::WalkEnsemble& ensemble, const std::vector<BigInt>& x0,
                                      const Polynomial& f, std::uint32_t r_max,
                                      const FactorEffort& effort = {}, unsigned workers = 1);

// Fraction of ensemble values with no prime factor < z (and f-value != 0);
// the desk-scale quantity whose product with (log z)^kappa is bracket-checked.
Rational sifted_fraction(const orbits::WalkEnsemble& ensemble, const std::vector<BigInt>& x0,
                         const Polynomial& f, std::uint64_t z);

// Level-of-distribution ledger: remainders |r_d| against a cutoff D, plus the
// expander-side constants.
struct LevelLedger {
    std::vector<std::pair<BigInt, Rational>> remainders;  // (d, |r_d|) for tracked d < cutoff
    BigInt cutoff;
    Rational aggregate;       // R(D) = sum |r_d|
    double delta = 0.0;       // sup log|Omega_p| / log p over tracked primes
    double delta1 = 0.0;      // sup log|Lambda_p| / log p
    double beta_ceiling = 0.0;  // rho^(-1 / (1 + delta + delta1/2)) when rho supplied
};
LevelLedger level_ledger(const std::vector<std::pair<BigInt, Rational>>& remainders, const BigInt& cutoff,
                         const std::vector<LocalDensity>& densities,
                         const std::vector<std::pair<std::uint64_t, std::uint64_t>>& image_sizes,
                         double rho = 0.0);

}  // namespace orbsieve::sieve
