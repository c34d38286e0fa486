#pragma once

#include <iosfwd>
#include <unordered_map>

#include "orbsieve/preset.hpp"

namespace orbsieve::orbits {

// A dim x dim matrix over Z/dZ, entries row-major in [0, d).
using ResidueMatrix = std::vector<std::uint32_t>;

// Entrywise reduction of an integer matrix modulo squarefree d >= 2.
ResidueMatrix reduce_mod(const IntMatrix& g, const BigInt& d);

// Throws unless d >= 2, squarefree, and small enough to enumerate over.
void require_squarefree_modulus(const BigInt& d);

// The image of a generator set modulo squarefree d, enumerated by BFS closure
// from the identity with fixed generator order; element indices are BFS
// discovery order, so the table is reproducible. Immutable once built.
class FiniteGroupTable {
public:
    static constexpr std::size_t kDefaultCap = 4'000'000;

    // Outcome carries the cap signal; callers fall back to sampling on overflow.
    struct BuildResult;
    static BuildResult build(const GroupPreset& preset, const BigInt& d, std::size_t cap = kDefaultCap);

    std::uint32_t modulus() const { return modulus_; }
    std::size_t dim() const { return dim_; }
    std::size_t size() const { return elements_.size(); }
    std::size_t generator_count() const { return gen_action_.size(); }

    const ResidueMatrix& element(std::uint32_t idx) const { return elements_[idx]; }
    std::uint32_t identity_index() const { return identity_; }

    // Cayley adjacency: index of element(idx) * generator s.
    std::uint32_t act(std::size_t s, std::uint32_t idx) const { return gen_action_[s][idx]; }
    const std::vector<std::uint32_t>& action_row(std::size_t s) const { return gen_action_[s]; }

    std::optional<std::uint32_t> index_of(const ResidueMatrix& m) const;
    std::uint32_t multiply(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t inverse(std::uint32_t a) const;

    // Cache file round-trip, keyed by (preset hash, d) in the header.
    void save(std::ostream& out, std::uint64_t preset_hash) const;
    static std::optional<FiniteGroupTable> load(std::istream& in, std::uint64_t expected_preset_hash,
                                                const BigInt& expected_d);

private:
    std::uint32_t modulus_ = 0;
    std::size_t dim_ = 0;
    std::uint32_t identity_ = 0;
    std::vector<ResidueMatrix> elements_;
    std::vector<std::vector<std::uint32_t>> gen_action_;
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> index_;  // hash -> candidate indices

    void build_index();
    friend struct TableBuilder;
};

struct FiniteGroupTable::BuildResult {
    std::optional<FiniteGroupTable> table;  // empty when the cap was exceeded
    bool cap_exceeded = false;
};

// BFS closure of the reduced generators; cap overflow is an outcome, not an error.
inline FiniteGroupTable::BuildResult generate_finite_image(const GroupPreset& preset, const BigInt& d,
                                                           std::size_t cap = FiniteGroupTable::kDefaultCap) {
    return FiniteGroupTable::build(preset, d, cap);
}

// |G(Z/dZ)| in closed form for SL_m and Sp_2g ambients (product over p | d);
// empty for orthogonal-form ambients.
std::optional<BigInt> ambient_order(const GroupPreset& preset, const BigInt& d);

struct StrongApproxReport {
    BigInt modulus;
    BigInt image_size;                 // |Lambda_d| from BFS closure
    std::optional<BigInt> ambient_size;
    std::optional<bool> surjective;    // set only when ambient_size is known
    bool cap_exceeded = false;
};
StrongApproxReport strong_approx_check(const GroupPreset& preset, const BigInt& d,
                                       std::size_t cap = FiniteGroupTable::kDefaultCap);

}  // namespace orbsieve::orbits
