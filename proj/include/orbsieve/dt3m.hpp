#pragma once

#include "orbsieve/rational.hpp"
#include "orbsieve/snf.hpp"

namespace orbsieve::dt3m {

// Genus g plus the induced symplectic action on H1 of the splitting surface;
// the Lagrangian J is the span of the first g basis vectors.
struct HeegaardDatum {
    std::size_t genus = 1;
    IntMatrix phi_star;  // 2g x 2g, preserves the standard symplectic form

    void validate() const;  // throws when phi_star is not symplectic
};

// H1 of the glued manifold: Z^2g / <J, phi_* J>; order 0 encodes an infinite
// group (free rank > 0), mirroring Omega(0) = +infinity in the sieve.
struct HomologyResult {
    std::size_t free_rank = 0;
    std::vector<BigInt> torsion_factors;  // invariant factors > 1
    BigInt order;                         // 0 when infinite, torsion order otherwise

    bool finite() const { return free_rank == 0; }
};

HomologyResult homology_group(const HeegaardDatum& datum);

// dim_{F_p} H1(M, F_p) = 2g - rank_p of the same matrix reduced mod p.
std::size_t homology_mod_p(const HeegaardDatum& datum, std::uint32_t p);

// Exact density of {gamma in Sp_2g(F_p) : <J_p, gamma J_p> != F_p^2g} by
// enumeration; Monte Carlo fallback (flagged) when the group exceeds the cap.
struct OmegaDensityReport {
    std::size_t genus = 0;
    std::uint64_t prime = 0;
    bool exact = false;
    BigInt count;        // exact route
    BigInt group_order;
    Rational density;
    double estimate = 0.0;       // Monte Carlo route
    double ci_halfwidth = 0.0;   // ~95% (two-sigma) half width
    std::size_t mc_samples = 0;
};
OmegaDensityReport omega_density(std::size_t genus, std::uint32_t p,
                                 std::size_t enumeration_cap = 2'000'000,
                                 std::size_t mc_samples = 20'000, std::uint64_t mc_seed = 1);

}  // namespace orbsieve::dt3m
