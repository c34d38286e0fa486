#include "orbsieve/dt3m.hpp"

#include <cmath>

#include "orbsieve/finite_table.hpp"
#include "orbsieve/walk.hpp"

namespace orbsieve::dt3m {

using orbits::FiniteGroupTable;

void HeegaardDatum::validate() const {
    const std::size_t n = 2 * genus;
    if (phi_star.rows() != n || phi_star.cols() != n)
        throw std::invalid_argument("HeegaardDatum: phi_star must be 2g x 2g");
    IntMatrix j = orbits::symplectic_gram(genus);
    if (phi_star.transposed() * j * phi_star != j)
        throw std::invalid_argument("HeegaardDatum: phi_star does not preserve the symplectic form");
}

namespace {

// Columns: the Lagrangian basis e_1..e_g followed by phi_*(e_1)..phi_*(e_g).
IntMatrix presentation_matrix(const HeegaardDatum& d) {
    const std::size_t g = d.genus, n = 2 * g;
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < g; ++i) m.at(i, i) = BigInt(1);
    for (std::size_t col = 0; col < g; ++col)
        for (std::size_t row = 0; row < n; ++row) m.at(row, g + col) = d.phi_star.at(row, col);
    return m;
}

std::size_t rank_mod_p(const IntMatrix& m, std::uint32_t p) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::vector<std::uint64_t>> a(rows, std::vector<std::uint64_t>(cols));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            std::uint32_t r = m.at(i, j).mod_u32(p);
            if (m.at(i, j).is_negative() && r) r = p - r;
            a[i][j] = r;
        }
    auto powmod = [&](std::uint64_t b, std::uint64_t e) {
        std::uint64_t r = 1;
        b %= p;
        while (e) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    };
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && a[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[rank], a[piv]);
        std::uint64_t inv = powmod(a[rank][col], p - 2);
        for (std::size_t j = col; j < cols; ++j) a[rank][j] = a[rank][j] * inv % p;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank || a[i][col] == 0) continue;
            std::uint64_t f = a[i][col];
            for (std::size_t j = col; j < cols; ++j) a[i][j] = (a[i][j] + (p - f) * a[rank][j]) % p;
        }
        ++rank;
    }
    return rank;
}

}  // namespace

HomologyResult homology_group(const HeegaardDatum& datum) {
    datum.validate();
    LatticeQuotient q = column_lattice_quotient(presentation_matrix(datum));
    HomologyResult h;
    h.free_rank = q.free_rank;
    h.torsion_factors = q.torsion_factors;
    h.order = h.free_rank > 0 ? BigInt(0) : q.torsion_order;
    return h;
}

std::size_t homology_mod_p(const HeegaardDatum& datum, std::uint32_t p) {
    datum.validate();
    return 2 * datum.genus - rank_mod_p(presentation_matrix(datum), p);
}

namespace {

// <J_p, gamma J_p> != F_p^2g  <=>  [e_1..e_g | gamma e_1..gamma e_g] singular mod p.
bool omega_condition(const orbits::ResidueMatrix& gamma, std::size_t g, std::uint32_t p) {
    const std::size_t n = 2 * g;
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < g; ++i) m.at(i, i) = BigInt(1);
    for (std::size_t col = 0; col < g; ++col)
        for (std::size_t row = 0; row < n; ++row)
            m.at(row, g + col) = BigInt(static_cast<std::int64_t>(gamma[row * n + col]));
    return rank_mod_p(m, p) < n;
}

}  // namespace

OmegaDensityReport omega_density(std::size_t genus, std::uint32_t p, std::size_t enumeration_cap,
                                 std::size_t mc_samples, std::uint64_t mc_seed) {
    if (genus < 1 || genus > 2) throw std::invalid_argument("omega_density: genus 1 or 2 only");
    OmegaDensityReport rep;
    rep.genus = genus;
    rep.prime = p;

    orbits::GroupPreset preset = genus == 1 ? orbits::sl2z_preset() : orbits::sp4_transvections_preset();
    auto built = FiniteGroupTable::build(preset, BigInt::from_u64(p), enumeration_cap);
    if (built.table) {
        const auto& t = *built.table;
        auto expected = orbits::ambient_order(preset, BigInt::from_u64(p));
        if (expected && BigInt::from_u64(t.size()) != *expected)
            throw std::runtime_error("omega_density: generator preset does not surject onto Sp_2g(F_p)");
        rep.exact = true;
        std::uint64_t count = 0;
        for (std::uint32_t i = 0; i < t.size(); ++i)
            if (omega_condition(t.element(i), genus, p)) ++count;
        rep.count = BigInt::from_u64(count);
        rep.group_order = BigInt::from_u64(t.size());
        rep.density = Rational(rep.count, rep.group_order);
        return rep;
    }

    // cap exceeded: long-walk Monte Carlo, flagged as an estimate
    rep.exact = false;
    rep.mc_samples = mc_samples;
    const std::uint32_t mixing_steps = 64;
    orbits::WalkEnsemble e = orbits::sample_walk(preset, mixing_steps, static_cast<std::uint32_t>(mc_samples), mc_seed);
    std::uint64_t hits = 0;
    for (const auto& g : e.samples) {
        orbits::ResidueMatrix r = orbits::reduce_mod(g, BigInt::from_u64(p));
        if (omega_condition(r, genus, p)) ++hits;
    }
    double q = static_cast<double>(hits) / static_cast<double>(mc_samples);
    rep.estimate = q;
    rep.ci_halfwidth = 2.0 * std::sqrt(std::max(q * (1.0 - q), 1e-12) / static_cast<double>(mc_samples));
    return rep;
}

}  // namespace orbsieve::dt3m
