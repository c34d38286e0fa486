#include "orbsieve/finite_table.hpp"

#include <istream>
#include <ostream>

#include "orbsieve/factor.hpp"

namespace orbsieve::orbits {

namespace {

std::uint64_t residue_hash(const ResidueMatrix& m) {
    std::uint64_t h = 1469598103934665603ull;
    for (auto v : m) {
        h ^= v;
        h *= 1099511628211ull;
    }
    return h;
}

ResidueMatrix multiply_mod(const ResidueMatrix& a, const ResidueMatrix& b, std::size_t n, std::uint32_t d) {
    ResidueMatrix r(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            std::uint64_t aik = a[i * n + k];
            if (!aik) continue;
            for (std::size_t j = 0; j < n; ++j)
                r[i * n + j] = static_cast<std::uint32_t>((r[i * n + j] + aik * b[k * n + j]) % d);
        }
    return r;
}

}  // namespace

void require_squarefree_modulus(const BigInt& d) {
    if (d < BigInt(2)) throw std::invalid_argument("modulus: requires squarefree d >= 2");
    if (moebius(d) == 0) throw std::invalid_argument("modulus: " + d.to_string() + " is not squarefree");
}

ResidueMatrix reduce_mod(const IntMatrix& g, const BigInt& d) {
    require_squarefree_modulus(d);
    if (!d.fits_u64() || d.to_u64() > 0xFFFFFFFFull)
        throw std::invalid_argument("modulus: too large for residue tables");
    const std::uint32_t m = static_cast<std::uint32_t>(d.to_u64());
    ResidueMatrix r(g.rows() * g.cols());
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j) {
            const BigInt& v = g.at(i, j);
            std::uint32_t res = v.mod_u32(m);
            if (v.is_negative() && res) res = m - res;
            r[i * g.cols() + j] = res;
        }
    return r;
}

void FiniteGroupTable::build_index() {
    index_.clear();
    index_.reserve(elements_.size() * 2);
    for (std::uint32_t i = 0; i < elements_.size(); ++i) index_[residue_hash(elements_[i])].push_back(i);
}

std::optional<std::uint32_t> FiniteGroupTable::index_of(const ResidueMatrix& m) const {
    auto it = index_.find(residue_hash(m));
    if (it == index_.end()) return std::nullopt;
    // hash buckets are confirmed by full comparison
    for (std::uint32_t i : it->second)
        if (elements_[i] == m) return i;
    return std::nullopt;
}

std::uint32_t FiniteGroupTable::multiply(std::uint32_t a, std::uint32_t b) const {
    ResidueMatrix r = multiply_mod(elements_[a], elements_[b], dim_, modulus_);
    auto idx = index_of(r);
    if (!idx) throw std::logic_error("FiniteGroupTable: product left the table");
    return *idx;
}

std::uint32_t FiniteGroupTable::inverse(std::uint32_t a) const {
    // walk the cyclic group <a> until a * a^k = identity
    std::uint32_t b = a;
    while (multiply(a, b) != identity_) b = multiply(b, a);
    return b;
}

FiniteGroupTable::BuildResult FiniteGroupTable::build(const GroupPreset& preset, const BigInt& d, std::size_t cap) {
    require_squarefree_modulus(d);
    if (!d.fits_u64() || d.to_u64() > 0xFFFFFFFFull)
        throw std::invalid_argument("modulus: too large for residue tables");

    FiniteGroupTable t;
    t.modulus_ = static_cast<std::uint32_t>(d.to_u64());
    t.dim_ = preset.dim;
    const std::size_t n = preset.dim;

    std::vector<ResidueMatrix> gens;
    gens.reserve(preset.generators.size());
    for (const auto& g : preset.generators) gens.push_back(reduce_mod(g, d));

    ResidueMatrix id(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) id[i * n + i] = 1 % t.modulus_;

    t.elements_.push_back(id);
    t.identity_ = 0;
    t.build_index();

    BuildResult out;
    std::size_t head = 0;
    while (head < t.elements_.size()) {
        ResidueMatrix cur = t.elements_[head];
        for (const auto& g : gens) {
            ResidueMatrix next = multiply_mod(cur, g, n, t.modulus_);
            if (!t.index_of(next)) {
                if (t.elements_.size() >= cap) {
                    out.cap_exceeded = true;
                    return out;
                }
                std::uint32_t idx = static_cast<std::uint32_t>(t.elements_.size());
                t.elements_.push_back(std::move(next));
                t.index_[residue_hash(t.elements_.back())].push_back(idx);
            }
        }
        ++head;
    }

    // generator action table (Cayley adjacency), one row per generator
    t.gen_action_.assign(gens.size(), std::vector<std::uint32_t>(t.elements_.size(), 0));
    for (std::size_t s = 0; s < gens.size(); ++s)
        for (std::uint32_t i = 0; i < t.elements_.size(); ++i) {
            auto idx = t.index_of(multiply_mod(t.elements_[i], gens[s], n, t.modulus_));
            if (!idx) throw std::logic_error("FiniteGroupTable: closure is not closed");
            t.gen_action_[s][i] = *idx;
        }

    out.table = std::move(t);
    return out;
}

std::optional<BigInt> ambient_order(const GroupPreset& preset, const BigInt& d) {
    if (preset.kind == AmbientKind::OrthogonalForm) return std::nullopt;
    FactorOutcome f = factor(d);
    if (!f.complete) return std::nullopt;
    BigInt total(1);
    for (const auto& [p, e] : f.factors.prime_powers) {
        if (e != 1) throw std::invalid_argument("ambient_order: modulus is not squarefree");
        BigInt order(1);
        if (preset.kind == AmbientKind::SpecialLinear) {
            // |SL_m(F_p)| = p^(m(m-1)/2) * prod_{k=2..m} (p^k - 1)
            const std::size_t m = preset.dim;
            order = BigInt::pow(p, m * (m - 1) / 2);
            for (std::size_t k = 2; k <= m; ++k) order *= BigInt::pow(p, k) - BigInt(1);
        } else {
            // |Sp_2g(F_p)| = p^(g^2) * prod_{k=1..g} (p^(2k) - 1)
            const std::size_t g = preset.dim / 2;
            order = BigInt::pow(p, g * g);
            for (std::size_t k = 1; k <= g; ++k) order *= BigInt::pow(p, 2 * k) - BigInt(1);
        }
        total *= order;
    }
    return total;
}

StrongApproxReport strong_approx_check(const GroupPreset& preset, const BigInt& d, std::size_t cap) {
    StrongApproxReport rep;
    rep.modulus = d;
    auto built = FiniteGroupTable::build(preset, d, cap);
    if (built.cap_exceeded) {
        rep.cap_exceeded = true;
        return rep;
    }
    rep.image_size = BigInt::from_u64(built.table->size());
    rep.ambient_size = ambient_order(preset, d);
    if (rep.ambient_size) rep.surjective = (rep.image_size == *rep.ambient_size);
    return rep;
}

void FiniteGroupTable::save(std::ostream& out, std::uint64_t preset_hash) const {
    out << "finite-group-table v1 preset " << preset_hash << " d " << modulus_ << " dim " << dim_
        << " size " << elements_.size() << " gens " << gen_action_.size() << '\n';
    for (const auto& e : elements_) {
        for (std::size_t i = 0; i < e.size(); ++i) out << (i ? " " : "") << e[i];
        out << '\n';
    }
    for (const auto& row : gen_action_) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? " " : "") << row[i];
        out << '\n';
    }
}

std::optional<FiniteGroupTable> FiniteGroupTable::load(std::istream& in, std::uint64_t expected_preset_hash,
                                                       const BigInt& expected_d) {
    std::string tag, ver, kw;
    std::uint64_t hash = 0, d = 0;
    std::size_t dim = 0, size = 0, gens = 0;
    in >> tag >> ver;
    if (tag != "finite-group-table" || ver != "v1") return std::nullopt;
    in >> kw >> hash >> kw >> d >> kw >> dim >> kw >> size >> kw >> gens;
    if (!in || hash != expected_preset_hash || BigInt::from_u64(d) != expected_d) return std::nullopt;
    FiniteGroupTable t;
    t.modulus_ = static_cast<std::uint32_t>(d);
    t.dim_ = dim;
    t.identity_ = 0;
    t.elements_.assign(size, ResidueMatrix(dim * dim));
    for (auto& e : t.elements_)
        for (auto& v : e) in >> v;
    t.gen_action_.assign(gens, std::vector<std::uint32_t>(size));
    for (auto& row : t.gen_action_)
        for (auto& v : row) in >> v;
    if (!in) return std::nullopt;
    t.build_index();
    return t;
}

}  // namespace orbsieve::orbits
