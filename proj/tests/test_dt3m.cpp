#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "orbsieve/dt3m.hpp"
#include "orbsieve/walk.hpp"

using namespace orbsieve;
using namespace orbsieve::dt3m;

namespace {

HeegaardDatum datum(std::size_t g, IntMatrix phi) { return HeegaardDatum{g, std::move(phi)}; }

}  // namespace

TEST_CASE("genus-1 homology worked examples") {
    auto id = homology_group(datum(1, IntMatrix::identity(2)));
    CHECK(id.free_rank == 1);
    CHECK(id.order == BigInt(0));
    CHECK_FALSE(id.finite());

    auto rot = homology_group(datum(1, IntMatrix{{0, -1}, {1, 0}}));
    CHECK(rot.free_rank == 0);
    CHECK(rot.order == BigInt(1));
    CHECK(rot.torsion_factors.empty());

    auto five = homology_group(datum(1, IntMatrix{{1, 0}, {5, 1}}));
    CHECK(five.free_rank == 0);
    CHECK(five.order == BigInt(5));
    CHECK(five.torsion_factors == std::vector<BigInt>{BigInt(5)});
}

TEST_CASE("non-symplectic maps are rejected") {
    CHECK_THROWS_AS(homology_group(datum(1, IntMatrix{{2, 0}, {0, 1}})), std::invalid_argument);
    CHECK_THROWS_AS(homology_group(datum(2, IntMatrix::identity(2))), std::invalid_argument);
}

TEST_CASE("mod-p dimensions of the worked examples") {
    CHECK(homology_mod_p(datum(2, IntMatrix::identity(4)), 2) == 2);
    CHECK(homology_mod_p(datum(2, IntMatrix::identity(4)), 7) == 2);
    CHECK(homology_mod_p(datum(1, IntMatrix{{1, 0}, {5, 1}}), 5) == 1);
    CHECK(homology_mod_p(datum(1, IntMatrix{{1, 0}, {5, 1}}), 2) == 0);
}

TEST_CASE("mod-p dimension agrees with the integral computation") {
    // universal coefficients at desk scale:
    // dim_p = free rank + #(invariant factors divisible by p)
    for (std::size_t genus : {std::size_t(1), std::size_t(2)}) {
        auto preset = genus == 1 ? orbits::sl2z_preset() : orbits::sp4_transvections_preset();
        auto walk = orbits::sample_walk(preset, 12, 500, 2024 + genus);
        for (const auto& phi : walk.samples) {
            HeegaardDatum d{genus, phi};
            auto h = homology_group(d);
            for (std::uint32_t p : {2u, 3u, 5u}) {
                std::size_t predicted = h.free_rank;
                for (const auto& f : h.torsion_factors)
                    if (f.mod_u32(p) == 0) ++predicted;
                CHECK(homology_mod_p(d, p) == predicted);
            }
            // finite orders divide a nonzero 2g x 2g determinant
            if (h.finite()) {
                BigInt m = phi.max_abs_entry();
                if (m < BigInt(1)) m = BigInt(1);
                BigInt bound = BigInt::pow(BigInt(2 * static_cast<std::int64_t>(genus)) * m,
                                           2 * static_cast<std::uint64_t>(genus));
                CHECK(h.order <= bound);
            }
        }
    }
}

TEST_CASE("omega density in SL_2(F_p) is exactly 1/(p+1)") {
    auto d2 = omega_density(1, 2);
    REQUIRE(d2.exact);
    CHECK(d2.density == Rational(BigInt(1), BigInt(3)));
    CHECK(d2.count == BigInt(2));
    CHECK(d2.group_order == BigInt(6));

    auto d5 = omega_density(1, 5);
    REQUIRE(d5.exact);
    CHECK(d5.density == Rational(BigInt(1), BigInt(6)));

    for (std::uint32_t p : {2, 3, 5, 7, 11, 13}) {
        auto d = omega_density(1, p);
        REQUIRE(d.exact);
        CHECK(d.density == Rational(BigInt(1), BigInt(static_cast<std::int64_t>(p) + 1)));
        // density = 1/p + O(1/p^2)
        Rational diff = d.density - Rational(BigInt(1), BigInt(static_cast<std::int64_t>(p)));
        if (diff < Rational(0)) diff = -diff;
        CHECK(diff <= Rational(BigInt(1), BigInt(static_cast<std::int64_t>(p) * p)));
    }
}

TEST_CASE("omega density for genus 2 by closure") {
    auto d2 = omega_density(2, 2);
    REQUIRE(d2.exact);
    CHECK(d2.group_order == BigInt(720));  // |Sp_4(F_2)|
    CHECK(d2.density == Rational(BigInt(7), BigInt(15)));

    auto d3 = omega_density(2, 3);
    REQUIRE(d3.exact);
    CHECK(d3.group_order == BigInt(51840));  // |Sp_4(F_3)|
    CHECK(d3.density == Rational(BigInt(13), BigInt(40)));
}

TEST_CASE("densities match the Lagrangian transversality count") {
    // #{gamma : gamma J transverse to J} / |Sp_2g(F_p)| equals
    // p^(g(g+1)/2) / prod_{i=1..g} (p^i + 1), so the singular density is its
    // complement; an independent closed-form oracle for the enumeration.
    for (auto [g, p] : std::vector<std::pair<std::size_t, std::uint32_t>>{
             {1, 2}, {1, 3}, {1, 5}, {1, 7}, {2, 2}, {2, 3}}) {
        auto d = omega_density(g, p);
        REQUIRE(d.exact);
        BigInt transverse = BigInt::pow(BigInt(static_cast<std::int64_t>(p)), g * (g + 1) / 2);
        BigInt lagrangians(1);
        for (std::size_t i = 1; i <= g; ++i)
            lagrangians *= BigInt::pow(BigInt(static_cast<std::int64_t>(p)), i) + BigInt(1);
        CHECK(d.density == Rational(1) - Rational(transverse, lagrangians));
    }
}

TEST_CASE("monte carlo fallback is flagged and close") {
    auto exact = omega_density(1, 7);
    auto mc = omega_density(1, 7, /*enumeration_cap=*/10, /*mc_samples=*/20000, /*mc_seed=*/5);
    CHECK_FALSE(mc.exact);
    CHECK(std::abs(mc.estimate - exact.density.to_double()) < 3.0 * mc.ci_halfwidth + 1e-3);
}

TEST_CASE("infinite homology thins out along the walk") {
    auto preset = orbits::sl2z_preset();
    double prev = 1.1;
    const std::size_t n = 2000;
    for (std::uint32_t k : {1, 3, 6, 10, 16}) {
        auto walk = orbits::sample_walk(preset, k, n, 77);
        std::size_t infinite = 0;
        for (const auto& phi : walk.samples)
            if (!homology_group({1, phi}).finite()) ++infinite;
        double frac = static_cast<double>(infinite) / static_cast<double>(n);
        double sigma = std::sqrt(std::max(frac * (1 - frac), 1e-9) / static_cast<double>(n));
        CHECK(frac <= prev + 3.0 * sigma);
        prev = frac;
    }
}
