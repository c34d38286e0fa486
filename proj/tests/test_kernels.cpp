#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "orbsieve/kernels.hpp"
#include "orbsieve/spectral.hpp"
#include "orbsieve/walk.hpp"

using namespace orbsieve;

namespace {

// Random permutation-style action rows (not group actions, just index maps);
// the kernel contract does not care.
std::vector<std::vector<std::uint32_t>> random_actions(std::mt19937_64& rng, std::size_t ngens, std::size_t n) {
    std::vector<std::vector<std::uint32_t>> rows(ngens, std::vector<std::uint32_t>(n));
    for (auto& row : rows)
        for (auto& v : row) v = static_cast<std::uint32_t>(rng() % n);
    return rows;
}

}  // namespace

TEST_CASE("scalar kernel equals a plain reference loop") {
    std::mt19937_64 rng(31);
    for (std::size_t n : {1u, 3u, 4u, 5u, 17u, 1024u, 1031u}) {
        auto actions = random_actions(rng, 5, n);
        std::vector<const std::uint32_t*> ptrs;
        for (auto& r : actions) ptrs.push_back(r.data());
        std::vector<double> in(n), out(n), expect(n);
        for (auto& v : in) v = static_cast<double>(rng() % 1000) / 7.0 - 60.0;
        kernels::markov_apply_scalar(ptrs.data(), ptrs.size(), in.data(), out.data(), n);
        const double inv = 1.0 / 5.0;  // the kernel contract multiplies by 1/ngens
        for (std::size_t i = 0; i < n; ++i) {
            double acc = 0;
            for (std::size_t s = 0; s < ptrs.size(); ++s) acc += in[actions[s][i]];
            expect[i] = acc * inv;
        }
        CHECK(out == expect);
    }
}

#if defined(ORBSIEVE_HAVE_AVX2_BUILD)
TEST_CASE("avx2 kernel is bitwise identical to scalar") {
    if (!__builtin_cpu_supports("avx2")) return;  // machine without AVX2: dispatch covers it
    std::mt19937_64 rng(32);
    for (std::size_t n : {1u, 2u, 4u, 7u, 64u, 255u, 4096u, 29761u}) {
        for (std::size_t ngens : {1u, 2u, 5u, 11u}) {
            auto actions = random_actions(rng, ngens, n);
            std::vector<const std::uint32_t*> ptrs;
            for (auto& r : actions) ptrs.push_back(r.data());
            std::vector<double> in(n), a(n), b(n);
            for (auto& v : in) v = static_cast<double>(static_cast<std::int64_t>(rng())) * 0x1.0p-40;
            kernels::markov_apply_scalar(ptrs.data(), ngens, in.data(), a.data(), n);
            kernels::markov_apply_avx2(ptrs.data(), ngens, in.data(), b.data(), n);
            CHECK(a == b);  // exact: both add the gathers in the same order
        }
    }
}
#endif

TEST_CASE("dispatch returns a working kernel") {
    auto fn = kernels::select_markov_apply();
    std::vector<std::uint32_t> row{1, 0};
    const std::uint32_t* ptr = row.data();
    std::vector<double> in{2.0, 4.0}, out(2);
    fn(&ptr, 1, in.data(), out.data(), 2);
    CHECK(out[0] == 4.0);
    CHECK(out[1] == 2.0);
    CHECK(kernels::selected_markov_kernel_name() != nullptr);
}

TEST_CASE("graph markov application agrees with the exact rational route") {
    auto l = orbits::lubotzky_preset();
    auto t = orbits::generate_finite_image(l, BigInt(5)).table.value();
    auto g = spectral::CayleyGraph::from_table(t);
    std::mt19937_64 rng(33);
    std::vector<double> f(g.size()), out(g.size());
    std::vector<Rational> fr(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        std::int64_t v = static_cast<std::int64_t>(rng() % 2001) - 1000;
        f[i] = static_cast<double>(v);
        fr[i] = Rational(v);
    }
    g.markov_apply(f, out);
    auto outr = g.markov_apply_exact(fr);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(out[i] - outr[i].to_double()) < 1e-9);
}
