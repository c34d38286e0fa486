#pragma once

#include <span>

#include "orbsieve/finite_table.hpp"
#include "orbsieve/rational.hpp"

namespace orbsieve::spectral {

using orbits::FiniteGroupTable;

// Cayley graph of a finite group table over a symmetric step multiset
// (loops and repeated steps kept; the reduction mod d may collapse distinct
// generators and the multiplicities stay).
class CayleyGraph {
public:
    // Steps = the table's own generator multiset. The graph holds a reference;
    // the table must outlive it (temporaries are rejected at compile time).
    static CayleyGraph from_table(const FiniteGroupTable& t);
    static CayleyGraph from_table(FiniteGroupTable&&) = delete;
    // Steps = an explicit multiset of element indices; must be symmetric and
    // must generate the table's group.
    static CayleyGraph from_steps(const FiniteGroupTable& t, std::vector<std::uint32_t> step_elements);
    static CayleyGraph from_steps(FiniteGroupTable&&, std::vector<std::uint32_t>) = delete;

    std::size_t size() const { return n_; }
    std::size_t step_count() const { return actions_.size(); }
    const FiniteGroupTable& table() const { return *table_; }

    // One Markov averaging step (Mf)(x) = |S|^-1 sum_s f(xs).
    void markov_apply(std::span<const double> in, std::span<double> out) const;
    std::vector<Rational> markov_apply_exact(const std::vector<Rational>& f) const;

    const std::vector<std::vector<std::uint32_t>>& actions() const { return actions_; }

private:
    const FiniteGroupTable* table_ = nullptr;
    std::size_t n_ = 0;
    std::vector<std::vector<std::uint32_t>> actions_;  // [step][element]
    std::vector<const std::uint32_t*> action_ptrs_;
    void finalize();
};

struct SpectralReport {
    BigInt modulus;
    std::size_t group_size = 0;
    double rho0 = 0.0;       // spectral radius of M on mean-zero functions
    std::size_t iterations = 0;
    double tolerance = 0.0;
    bool converged = false;
    double ritz_min = 0.0;   // observed Rayleigh quotients of M, must stay in [-1 + 2/|S|, 1]
    double ritz_max = 0.0;
    bool used_dense = false;
};

// Absolute-value power method on the mean-zero complement (M applied twice per
// iteration, mean re-projected each step). Deterministic start vector.
SpectralReport mean_zero_spectral_radius(const CayleyGraph& g, double tol = 1e-10,
                                         std::size_t maxiter = 100'000);

// Dense symmetric eigensolve oracle; throws when the group exceeds max_size.
SpectralReport dense_mean_zero_spectral_radius(const CayleyGraph& g, std::size_t max_size = 2000);

// Dense route for groups up to dense_cutoff, iteration beyond.
SpectralReport spectral_report_auto(const CayleyGraph& g, double tol = 1e-10,
                                    std::size_t maxiter = 100'000, std::size_t dense_cutoff = 2000);

struct EquidistributionRow {
    std::uint32_t k = 0;
    Rational max_error;   // max over alpha of |mu_k(alpha) - 1/|G||, exact
    double bound = 0.0;   // sqrt(|G|) * rho^k
    bool bound_holds = false;
};

// Exact walk distribution mod d by repeated pushforward of the step
// distribution (numerators over the implicit denominator |S|^k), compared
// against the sqrt(|G|) * rho^k envelope with the given slack.
std::vector<EquidistributionRow> equidistribution_error(const CayleyGraph& g, double rho,
                                                        std::uint32_t kmax, double slack = 1e-9);

struct TripleProductReport {
    bool generates = false;
    std::size_t generated_subgroup_size = 0;  // closure of A (== group size when generates)
    std::size_t a_size = 0;
    std::size_t aaa_size = 0;
    double growth_exponent = 1.0;  // log|AAA| / log|A| when |A| >= 2
};
TripleProductReport triple_product_growth(const FiniteGroupTable& t, const std::vector<std::uint32_t>& a);

// Eccentricity of the identity = diameter (Cayley graphs are vertex-transitive).
std::size_t graph_diameter(const CayleyGraph& g);

// Length of the shortest nonempty reduced relation among the distinct
// non-identity steps (non-backtracking closed walk at the identity); when none
// is found up to max_length the returned value is max_length + 1, a lower
// bound on the girth in the reduced-word sense. 0 for a trivial step set.
std::size_t girth_lower_bound(const CayleyGraph& g, std::size_t max_length = 24);

struct SpectralCsvRow {
    BigInt modulus;
    std::size_t group_size = 0;
    double rho0 = 0.0;
    std::size_t diameter = 0;
    std::size_t girth_lower_bound = 0;
};
void write_spectral_csv(std::ostream& out, const std::vector<SpectralCsvRow>& rows);

}  // namespace orbsieve::spectral
