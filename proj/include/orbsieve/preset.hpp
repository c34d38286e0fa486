#pragma once

#include <optional>
#include <string>

#include "orbsieve/intmatrix.hpp"

namespace orbsieve::orbits {

// Ambient algebraic group the generators are checked against.
enum class AmbientKind {
    SpecialLinear,   // SL_m: det = 1
    Symplectic,      // Sp_2g for the standard form J = [[0, I], [-I, 0]]
    OrthogonalForm,  // g^T * gram * g = gram for a supplied symmetric Gram matrix
};

// A finitely generated matrix group: ambient group, symmetric generator
// multiset with 1 in it, and the exceptional prime set Sigma.
struct GroupPreset {
    std::string name;
    AmbientKind kind = AmbientKind::SpecialLinear;
    std::size_t dim = 2;                      // matrices are dim x dim
    std::optional<IntMatrix> gram;            // OrthogonalForm only
    std::vector<IntMatrix> generators;        // multiset; identity present; inverse-closed
    std::vector<std::uint64_t> exceptional_primes;

    std::size_t step_count() const { return generators.size(); }  // |S|
    std::uint64_t hash64() const;

    // Throws std::invalid_argument when a generator is outside the ambient
    // group, the identity is missing, or the list is not inverse-closed.
    void validate() const;
};

// Standard symplectic Gram matrix [[0, I_g], [-I_g, 0]] of size 2g.
IntMatrix symplectic_gram(std::size_t g);

// Built-in presets.
GroupPreset lubotzky_preset();          // L = <[[1,+-3],[0,1]], [[1,0],[+-3,1]]> in SL_2(Z)
GroupPreset sl2z_preset();              // elementary generators [[1,+-1],[0,1]], [[1,0],[+-1,1]]
GroupPreset apollonian_preset();        // s1..s4 in O(Q, Z) for the Descartes form
GroupPreset sp4_transvections_preset(); // symplectic transvections in Sp_4(Z)
GroupPreset preset_by_name(const std::string& name);

}  // namespace orbsieve::orbits
