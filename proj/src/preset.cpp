#include "orbsieve/preset.hpp"

#include <stdexcept>

#include "orbsieve/apollonian.hpp"

namespace orbsieve::orbits {

std::uint64_t GroupPreset::hash64() const {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](std::uint64_t v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    mix(static_cast<std::uint64_t>(kind));
    mix(dim);
    if (gram) mix(gram->hash64());
    for (const auto& g : generators) mix(g.hash64());
    return h;
}

void GroupPreset::validate() const {
    if (dim == 0) throw std::invalid_argument("preset: zero dimension");
    if (kind == AmbientKind::Symplectic && dim % 2 != 0)
        throw std::invalid_argument("preset: symplectic ambient needs even dimension");
    if (kind == AmbientKind::OrthogonalForm) {
        if (!gram || gram->rows() != dim || gram->cols() != dim)
            throw std::invalid_argument("preset: orthogonal ambient needs a dim x dim Gram matrix");
        if (*gram != gram->transposed()) throw std::invalid_argument("preset: Gram matrix must be symmetric");
    }
    const IntMatrix id = IntMatrix::identity(dim);
    bool has_identity = false;
    for (const auto& g : generators) {
        if (g.rows() != dim || g.cols() != dim) throw std::invalid_argument("preset: generator dimension mismatch");
        switch (kind) {
            case AmbientKind::SpecialLinear:
                if (g.determinant() != BigInt(1))
                    throw std::invalid_argument("preset: generator determinant is not 1");
                break;
            case AmbientKind::Symplectic: {
                IntMatrix j = symplectic_gram(dim / 2);
                if (g.transposed() * j * g != j)
                    throw std::invalid_argument("preset: generator does not preserve the symplectic form");
                break;
            }
            case AmbientKind::OrthogonalForm:
                if (g.transposed() * *gram * g != *gram)
                    throw std::invalid_argument("preset: generator does not preserve the quadratic form");
                break;
        }
        if (g == id) has_identity = true;
    }
    if (!has_identity) throw std::invalid_argument("preset: identity must be in the generator list");
    for (const auto& g : generators) {
        bool has_inverse = false;
        for (const auto& h : generators)
            if (g * h == id) {
                has_inverse = true;
                break;
            }
        if (!has_inverse) throw std::invalid_argument("preset: generator list is not closed under inverse");
    }
}

IntMatrix symplectic_gram(std::size_t g) {
    IntMatrix j(2 * g, 2 * g);
    for (std::size_t i = 0; i < g; ++i) {
        j.at(i, g + i) = BigInt(1);
        j.at(g + i, i) = BigInt(-1);
    }
    return j;
}

GroupPreset lubotzky_preset() {
    GroupPreset p;
    p.name = "lubotzky";
    p.kind = AmbientKind::SpecialLinear;
    p.dim = 2;
    p.generators = {
        IntMatrix::identity(2),
        IntMatrix{{1, 3}, {0, 1}},
        IntMatrix{{1, -3}, {0, 1}},
        IntMatrix{{1, 0}, {3, 1}},
        IntMatrix{{1, 0}, {-3, 1}},
    };
    p.exceptional_primes = {3};
    return p;
}

GroupPreset sl2z_preset() {
    GroupPreset p;
    p.name = "sl2z";
    p.kind = AmbientKind::SpecialLinear;
    p.dim = 2;
    p.generators = {
        IntMatrix::identity(2),
        IntMatrix{{1, 1}, {0, 1}},
        IntMatrix{{1, -1}, {0, 1}},
        IntMatrix{{1, 0}, {1, 1}},
        IntMatrix{{1, 0}, {-1, 1}},
    };
    return p;
}

GroupPreset apollonian_preset() {
    GroupPreset p;
    p.name = "apollonian";
    p.kind = AmbientKind::OrthogonalForm;
    p.dim = 4;
    p.gram = apollonian::descartes_gram();
    p.generators.push_back(IntMatrix::identity(4));
    for (int i = 1; i <= 4; ++i) p.generators.push_back(apollonian::reflection_matrix(i));
    return p;
}

namespace {

// Symplectic transvection x -> x + <x, v> v for the standard form.
IntMatrix transvection(const std::vector<std::int64_t>& v) {
    const std::size_t n = v.size();
    IntMatrix j = symplectic_gram(n / 2);
    IntMatrix m = IntMatrix::identity(n);
    // column action: T e_k = e_k + <e_k, v> v, with <x, y> = x^T J y
    for (std::size_t k = 0; k < n; ++k) {
        BigInt pairing(0);
        for (std::size_t i = 0; i < n; ++i) pairing += j.at(k, i) * BigInt(v[i]);
        for (std::size_t i = 0; i < n; ++i) m.at(i, k) += pairing * BigInt(v[i]);
    }
    return m;
}

}  // namespace

GroupPreset sp4_transvections_preset() {
    GroupPreset p;
    p.name = "sp4";
    p.kind = AmbientKind::Symplectic;
    p.dim = 4;
    p.generators.push_back(IntMatrix::identity(4));
    const std::vector<std::vector<std::int64_t>> dirs = {
        {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {1, 0, 0, 1}, {0, 1, 1, 0},
    };
    for (const auto& v : dirs) {
        IntMatrix t = transvection(v);
        p.generators.push_back(t);
        // transvections have infinite order; the inverse is x -> x - <x, v> v
        IntMatrix inv = IntMatrix::identity(4) + IntMatrix::identity(4) - t;
        p.generators.push_back(inv);
    }
    return p;
}

GroupPreset preset_by_name(const std::string& name) {
    if (name == "lubotzky" || name == "L") return lubotzky_preset();
    if (name == "sl2z") return sl2z_preset();
    if (name == "apollonian") return apollonian_preset();
    if (name == "sp4") return sp4_transvections_preset();
    throw std::invalid_argument("unknown preset: " + name);
}

}  // namespace orbsieve::orbits
