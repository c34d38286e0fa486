#pragma once

#include <array>
#include <iosfwd>

#include "orbsieve/intmatrix.hpp"

namespace orbsieve::apollonian {

// Four curvatures (inverse radii, negatives allowed for an enclosing circle)
// of mutually tangent circles. Valid quadruples satisfy descartes_form == 0.
struct DescartesQuadruple {
    std::array<BigInt, 4> c;

    bool operator==(const DescartesQuadruple&) const = default;
    DescartesQuadruple sorted() const;
};

// Q(x,y,z,t) = 2(x^2+y^2+z^2+t^2) - (x+y+z+t)^2, evaluated exactly.
BigInt descartes_form(const DescartesQuadruple& q);

// Replace coordinate i (1..4) by the other root of the Descartes equation:
// c_i' = 2*(sum of the other three) - c_i. Involution. Requires Q(q) == 0.
DescartesQuadruple reflect(const DescartesQuadruple& q, int i);

// Sum-minimal sorted representative: apply whichever reflection decreases
// c1+c2+c3+c4 the most (lowest index on ties) until none does.
DescartesQuadruple reduce_to_root(const DescartesQuadruple& q, std::size_t max_steps = 1u << 20);

// The reflection generators s1..s4 acting on curvature row vectors, and the
// Gram matrix G with Q(x) = x^T G x (diagonal 1, off-diagonal -1).
IntMatrix reflection_matrix(int i);
IntMatrix descartes_gram();

struct Packing {
    DescartesQuadruple root;
    BigInt bound;
    // Deduplicated quadruples (each stored sorted ascending), in lexicographic
    // order, root's sorted form included.
    std::vector<std::array<BigInt, 4>> quadruples;
    // One curvature per circle: the root's four plus the newly created
    // coordinate of every other quadruple. Sorted ascending; repeats kept.
    std::vector<BigInt> curvatures;

    std::vector<BigInt> distinct_curvatures() const;
};

// Breadth-first closure under the four reflections, pruning any reflection
// whose new curvature exceeds bound. Requires Q(root) == 0 and
// bound >= max root curvature.
Packing enumerate_packing(const DescartesQuadruple& root, const BigInt& bound);

// Snapshot format: one header line "apollonian-packing v1 root <c1> <c2> <c3> <c4> bound <b>",
// then one sorted quadruple per line as four decimal integers. Bit-exact.
void write_packing(const Packing& p, std::ostream& out);
Packing read_packing(std::istream& in);

}  // namespace orbsieve::apollonian
