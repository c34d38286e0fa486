#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>
#include <sstream>

#include "orbsieve/apollonian.hpp"
#include "orbsieve/preset.hpp"

using namespace orbsieve;
using namespace orbsieve::apollonian;

namespace {

DescartesQuadruple quad(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    return DescartesQuadruple{{BigInt(a), BigInt(b), BigInt(c), BigInt(d)}};
}

const DescartesQuadruple kFigRoot = quad(-6, 11, 14, 15);

}  // namespace

TEST_CASE("descartes form values") {
    CHECK(descartes_form(quad(0, 0, 0, 0)) == BigInt(0));
    CHECK(descartes_form(kFigRoot) == BigInt(0));
    CHECK(descartes_form(quad(1, 1, 1, 1)) == BigInt(-8));
}

TEST_CASE("reflection examples and involution") {
    CHECK(reflect(kFigRoot, 4) == quad(-6, 11, 14, 23));
    CHECK(reflect(kFigRoot, 1) == quad(86, 11, 14, 15));
    for (int i = 1; i <= 4; ++i) CHECK(reflect(reflect(kFigRoot, i), i) == kFigRoot);
    CHECK_THROWS_AS(reflect(quad(1, 1, 1, 1), 1), std::invalid_argument);
    CHECK_THROWS_AS(reflect(kFigRoot, 0), std::invalid_argument);
    CHECK_THROWS_AS(reflect(kFigRoot, 5), std::invalid_argument);
}

TEST_CASE("form is preserved along random reflection words") {
    std::mt19937_64 rng(21);
    DescartesQuadruple cur = kFigRoot;
    for (int step = 0; step < 10000; ++step) {
        cur = reflect(cur, 1 + static_cast<int>(rng() % 4));
        REQUIRE(descartes_form(cur) == BigInt(0));
    }
}

TEST_CASE("reflection matrices are integral automorphisms of the form") {
    IntMatrix g = descartes_gram();
    for (int i = 1; i <= 4; ++i) {
        IntMatrix s = reflection_matrix(i);
        CHECK(s.transposed() * g * s == g);
        CHECK(s * s == IntMatrix::identity(4));
    }
    // row-vector action of s_i matches the coordinate reflection
    for (int i = 1; i <= 4; ++i) {
        IntMatrix row(1, 4);
        for (int j = 0; j < 4; ++j) row.at(0, j) = kFigRoot.c[j];
        IntMatrix moved = row * reflection_matrix(i).transposed();
        DescartesQuadruple expect = reflect(kFigRoot, i);
        for (int j = 0; j < 4; ++j) CHECK(moved.at(0, j) == expect.c[j]);
    }
}

TEST_CASE("packing contains the Figure-1 curvature 23") {
    Packing p = enumerate_packing(kFigRoot, BigInt(25));
    bool has23 = false;
    for (const auto& c : p.curvatures) has23 |= c == BigInt(23);
    CHECK(has23);
    // the (11, 23) tangent pair sits in one quadruple
    bool pair = false;
    for (const auto& q : p.quadruples) {
        bool h11 = false, h23 = false;
        for (const auto& c : q) {
            h11 |= c == BigInt(11);
            h23 |= c == BigInt(23);
        }
        pair |= h11 && h23;
    }
    CHECK(pair);
}

TEST_CASE("tight bound leaves only the root") {
    Packing p = enumerate_packing(kFigRoot, BigInt(15));
    CHECK(p.quadruples.size() == 1);
    CHECK(p.curvatures == std::vector<BigInt>{BigInt(-6), BigInt(11), BigInt(14), BigInt(15)});
}

TEST_CASE("bound below the root is rejected") {
    CHECK_THROWS_AS(enumerate_packing(kFigRoot, BigInt(14)), std::invalid_argument);
}

namespace {

// Independent depth-first enumeration with the same dedup rule.
void dfs_enumerate(const std::array<BigInt, 4>& key, const BigInt& bound,
                   std::set<std::array<BigInt, 4>>& seen, std::vector<BigInt>& curvatures) {
    BigInt sum(0);
    for (const auto& v : key) sum += v;
    for (int i = 3; i >= 0; --i) {  // opposite sweep order from the BFS
        BigInt nc = sum + sum - BigInt(4) * key[i] + key[i];
        if (nc > bound) continue;
        std::array<BigInt, 4> nk = key;
        nk[i] = nc;
        std::sort(nk.begin(), nk.end());
        if (seen.insert(nk).second) {
            curvatures.push_back(nc);
            dfs_enumerate(nk, bound, seen, curvatures);
        }
    }
}

}  // namespace

TEST_CASE("breadth-first enumeration matches a depth-first oracle") {
    Packing p = enumerate_packing(kFigRoot, BigInt(100));
    std::set<std::array<BigInt, 4>> seen{kFigRoot.sorted().c};
    std::vector<BigInt> curv(kFigRoot.c.begin(), kFigRoot.c.end());
    dfs_enumerate(kFigRoot.sorted().c, BigInt(100), seen, curv);
    std::sort(curv.begin(), curv.end());

    CHECK(std::vector<std::array<BigInt, 4>>(seen.begin(), seen.end()) == p.quadruples);
    CHECK(curv == p.curvatures);
    CHECK(p.curvatures.size() == 4 + (p.quadruples.size() - 1));
}

TEST_CASE("reduce_to_root descends and fixes") {
    CHECK(reduce_to_root(quad(-6, 11, 14, 23)) == kFigRoot.sorted());
    CHECK(reduce_to_root(kFigRoot) == kFigRoot.sorted());
    CHECK(reduce_to_root(quad(0, 0, 1, 1)) == quad(0, 0, 1, 1));
    // a long word still reduces to the root
    std::mt19937_64 rng(22);
    DescartesQuadruple far = kFigRoot;
    for (int i = 0; i < 40; ++i) far = reflect(far, 1 + static_cast<int>(rng() % 4));
    CHECK(reduce_to_root(far) == kFigRoot.sorted());
}

TEST_CASE("packing snapshot is bit-exact") {
    Packing p = enumerate_packing(kFigRoot, BigInt(200));
    std::ostringstream a, b;
    write_packing(p, a);
    write_packing(p, b);
    CHECK(a.str() == b.str());

    std::istringstream in(a.str());
    Packing q = read_packing(in);
    CHECK(q.quadruples == p.quadruples);
    CHECK(q.bound == p.bound);
    CHECK(q.root.c == p.root.c);
}
