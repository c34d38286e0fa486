#pragma once

#include "orbsieve/intmatrix.hpp"

namespace orbsieve {

// Invariant factors d1 | d2 | ... of the Smith normal form, one entry per
// diagonal position (min(rows, cols) of them), each >= 0, zeros trailing.
// Pivoting: smallest nonzero absolute value, ties broken by lowest (row, col),
// so the computation path is deterministic.
std::vector<BigInt> smith_normal_form(const IntMatrix& a);

// Structure of Z^rows / column-lattice(A) read off the invariant factors.
struct LatticeQuotient {
    std::size_t free_rank = 0;              // rows - (number of nonzero invariant factors)
    std::vector<BigInt> torsion_factors;    // invariant factors > 1
    BigInt torsion_order;                   // order of the torsion subgroup (product of nonzero factors)
};
LatticeQuotient column_lattice_quotient(const IntMatrix& a);

}  // namespace orbsieve
