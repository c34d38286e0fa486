// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Everything here is pinned — tolerances, moduli, sample counts — and runs
// against the library exactly as the CLI uses it.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "orbsieve/apollonian.hpp"
#include "orbsieve/dt3m.hpp"
#include "orbsieve/sieve.hpp"
#include "orbsieve/spectral.hpp"
#include "orbsieve/walk.hpp"

using namespace orbsieve;

namespace {

int g_failures = 0;
bool g_criterion_ok = true;

void expect(bool cond, const char* what) {
    if (!cond) {
        std::printf("       failed: %s\n", what);
        g_criterion_ok = false;
    }
}

template <typename Fn>
void criterion(int number, const char* name, Fn&& body) {
    g_criterion_ok = true;
    auto t0 = std::chrono::steady_clock::now();
    try {
        body();
    } catch (const std::exception& e) {
        std::printf("       exception: %s\n", e.what());
        g_criterion_ok = false;
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
    std::printf("[%s] criterion %2d: %s (%lld ms)\n", g_criterion_ok ? "PASS" : "FAIL", number, name,
                static_cast<long long>(ms.count()));
    if (!g_criterion_ok) ++g_failures;
}

apollonian::DescartesQuadruple fig_root() {
    return {{BigInt(-6), BigInt(11), BigInt(14), BigInt(15)}};
}

}  // namespace

// 1. Descartes invariant: Q(root) = 0, preserved under 10^4 random
//    reflections, each reflection an involution.
static void criterion_descartes() {
    expect(apollonian::descartes_form(fig_root()) == BigInt(0), "Q(-6,11,14,15) == 0");
    std::mt19937_64 rng(1);
    apollonian::DescartesQuadruple cur = fig_root();
    bool all_zero = true;
    for (int i = 0; i < 10000; ++i) {
        cur = apollonian::reflect(cur, 1 + static_cast<int>(rng() % 4));
        all_zero &= apollonian::descartes_form(cur).is_zero();
    }
    expect(all_zero, "Q == 0 along 10^4 random reflections");
    for (int i = 1; i <= 4; ++i)
        expect(apollonian::reflect(apollonian::reflect(cur, i), i) == cur, "reflect twice is the identity");
}

// 2. Packing ground truth: curvature 23 appears, and (11, 23) sit in one
//    quadruple of the (-6, 11, 14, 15) packing.
static void criterion_packing() {
    auto p = apollonian::enumerate_packing(fig_root(), BigInt(25));
    bool has23 = false;
    for (const auto& c : p.curvatures) has23 |= c == BigInt(23);
    expect(has23, "curvature 23 in the packing");
    bool pair = false;
    for (const auto& q : p.quadruples) {
        bool h11 = false, h23 = false;
        for (const auto& c : q) {
            h11 |= c == BigInt(11);
            h23 |= c == BigInt(23);
        }
        pair |= h11 && h23;
    }
    expect(pair, "tangent pair (11, 23) in one quadruple");
}

// 3. Strong approximation for L: surjective at p in {2,5,7,11,13}, trivial
//    at 3, surjective onto the product mod 10.
static void criterion_strong_approx() {
    auto l = orbits::lubotzky_preset();
    for (std::int64_t p : {2, 5, 7, 11, 13}) {
        auto rep = orbits::strong_approx_check(l, BigInt(p));
        expect(rep.surjective.value_or(false), "surjective onto SL_2(F_p)");
    }
    auto r3 = orbits::strong_approx_check(l, BigInt(3));
    expect(r3.image_size == BigInt(1), "trivial image mod 3");
    auto r10 = orbits::strong_approx_check(l, BigInt(10));
    expect(r10.surjective.value_or(false), "surjective onto SL_2(Z/10)");
    expect(r10.image_size == BigInt(720), "|image mod 10| == 720");
}

// 4. Markov spectrum for L mod p, p <= 31, p != 3: rho0 < 1, spectrum
//    estimates in [-1 + 2/5, 1], iteration matches dense eigensolve to 1e-8
//    where both run (groups <= 2000).
static void criterion_markov_spectrum() {
    auto l = orbits::lubotzky_preset();
    const double lo = -1.0 + 2.0 / 5.0;
    for (std::int64_t p : {2, 5, 7, 11, 13, 17, 19, 23, 29, 31}) {
        auto table = orbits::generate_finite_image(l, BigInt(p)).table.value();
        auto graph = spectral::CayleyGraph::from_table(table);
        auto it = spectral::mean_zero_spectral_radius(graph, 1e-10, 100000);
        expect(it.converged, "power iteration converged");
        expect(it.rho0 < 1.0, "rho0 < 1");
        expect(it.ritz_min >= lo - 1e-9 && it.ritz_max <= 1.0 + 1e-9,
               "spectrum estimates inside [-1 + 2/5, 1]");
        if (table.size() <= 2000) {
            auto dn = spectral::dense_mean_zero_spectral_radius(graph);
            expect(std::abs(it.rho0 - dn.rho0) <= 1e-8, "iteration vs dense eigensolve <= 1e-8");
            expect(dn.ritz_min >= lo - 1e-9, "dense spectrum above the lower edge");
        }
    }
}

// 5. Equidistribution bound: exact pushforward satisfies
//    max_alpha |r_{d,k}| <= sqrt(|Lambda_d|) rho_d^k for d in {2,5,7,10,35},
//    k <= 40, with 1e-9 slack.
static void criterion_equidistribution() {
    auto l = orbits::lubotzky_preset();
    for (std::int64_t d : {2, 5, 7, 10, 35}) {
        auto table = orbits::generate_finite_image(l, BigInt(d)).table.value();
        auto graph = spectral::CayleyGraph::from_table(table);
        auto rep = spectral::spectral_report_auto(graph);
        expect(rep.converged, "spectral radius available");
        auto rows = spectral::equidistribution_error(graph, rep.rho0, 40, 1e-9);
        bool all_hold = true;
        for (const auto& row : rows) all_hold &= row.bound_holds;
        expect(all_hold, "bound holds for every k <= 40");
    }
}

// 6. Sieve identity: inclusion-exclusion equals the direct scan exactly on
//    1..10^4 at z = 30, and the classical polynomial oracle holds for
//    f = T^2 + 1, squarefree d <= 100, X in {10^3, 10^4}.
static void criterion_sieve_identity() {
    auto seq = sieve::SieveSequence::counting_range(1, 10000);
    std::vector<std::uint64_t> ps;
    for (auto p : primes_below(30)) ps.push_back(p);
    auto res = sieve::legendre_sift(seq, ps, 30);
    expect(!res.budget_exceeded, "divisor budget sufficient");
    expect(res.routes_agree, "inclusion-exclusion equals the direct scan");

    IntPolynomial f{1, 0, 1};
    for (std::uint64_t x : {1000ull, 10000ull}) {
        bool ok = true;
        for (std::uint64_t d = 1; d <= 100; ++d) {
            if (d > 1 && moebius(BigInt(static_cast<std::int64_t>(d))) == 0) continue;
            BigInt rho = sieve::poly_root_count(f, BigInt(static_cast<std::int64_t>(d)));
            std::uint64_t sd = 0;
            for (std::uint64_t m = 1; m <= x; ++m)
                if ((m * m + 1) % d == 0) ++sd;
            Rational lhs = Rational(BigInt::from_u64(sd)) -
                           Rational(rho * BigInt::from_u64(x), BigInt(static_cast<std::int64_t>(d)));
            if (lhs < Rational(0)) lhs = -lhs;
            ok &= lhs <= Rational(rho);
        }
        expect(ok, "|S_d - rho_f(d) X / d| <= rho_f(d) for all squarefree d <= 100");
    }
}

// 7. Sieve dimension: fitted kappa for T^2 + 1 within 0.15 of 1 at x = 10^5.
static void criterion_sieve_dimension() {
    IntPolynomial f{1, 0, 1};
    std::vector<std::pair<std::uint64_t, Rational>> dens;
    for (auto p : primes_below(100000))
        dens.emplace_back(p, Rational(BigInt::from_u64(sieve::poly_root_count_prime(f, p)),
                                      BigInt::from_u64(p)));
    auto fit = sieve::dimension_estimate(dens);
    std::printf("       kappa = %.4f over %zu primes\n", fit.kappa, fit.points);
    expect(std::abs(fit.kappa - 1.0) <= 0.15, "|kappa - 1| <= 0.15");
}

// 8. DT density: exact density of Omega_p in SL_2(F_p) equals 1/(p+1) for
//    p in {2, 3, 5, 7} by exhaustive enumeration.
static void criterion_dt_density() {
    for (std::uint32_t p : {2, 3, 5, 7}) {
        auto d = dt3m::omega_density(1, p);
        expect(d.exact, "exhaustive enumeration");
        expect(d.density == Rational(BigInt(1), BigInt(static_cast<std::int64_t>(p) + 1)),
               "density == 1/(p+1)");
    }
}

// 9. DT homology consistency: 10^3 random symplectic samples with g <= 2;
//    homology_mod_p agrees with homology_group mod p in {2, 3, 5}; the
//    identity mapping class has free rank g.
static void criterion_dt_homology() {
    for (std::size_t g : {std::size_t(1), std::size_t(2)}) {
        dt3m::HeegaardDatum id{g, IntMatrix::identity(2 * g)};
        expect(dt3m::homology_group(id).free_rank == g, "identity gives free rank g");
        auto preset = g == 1 ? orbits::sl2z_preset() : orbits::sp4_transvections_preset();
        auto walk = orbits::sample_walk(preset, 14, 500, 4040 + g);
        bool ok = true;
        for (const auto& phi : walk.samples) {
            dt3m::HeegaardDatum datum{g, phi};
            auto h = dt3m::homology_group(datum);
            for (std::uint32_t p : {2u, 3u, 5u}) {
                std::size_t predicted = h.free_rank;
                for (const auto& factor : h.torsion_factors)
                    if (factor.mod_u32(p) == 0) ++predicted;
                ok &= dt3m::homology_mod_p(datum, p) == predicted;
            }
        }
        expect(ok, "mod-p dimension equals the integral computation reduced mod p");
    }
}

// 10. Appendix baselines at X = 10^5: the Hardy-Ramanujan variance sum is at
//     most 3 X loglog X, and pi(X) deviates from X/log X by under 10% of pi(X)
//     (at X = 10^5 the deviation is 10.43% of X/log X, 9.45% of pi(X)).
static void criterion_appendix_baselines() {
    const std::uint32_t x = 100000;
    auto om = omega_table(x);
    const double loglog = std::log(std::log(static_cast<double>(x)));
    double sum = 0;
    for (std::uint32_t n = 1; n <= x; ++n) {
        double dev = static_cast<double>(om[n]) - loglog;
        sum += dev * dev;
    }
    std::printf("       HR sum = %.4g, bound = %.4g\n", sum, 3.0 * x * loglog);
    expect(sum <= 3.0 * x * loglog, "Hardy-Ramanujan variance within 3 X loglog X");

    double pi_x = static_cast<double>(primes_below(x + 1).size());
    double approx = static_cast<double>(x) / std::log(static_cast<double>(x));
    std::printf("       pi(X) = %.0f, X/log X = %.1f, |diff|/pi = %.4f\n", pi_x, approx,
                std::abs(pi_x - approx) / pi_x);
    expect(std::abs(pi_x - approx) <= 0.10 * pi_x, "pi(X) within 10%");
}

// 11. Saturation property suite: L, f = product of the coordinates on the
//     orbit of (1, 2): almost-prime fraction positive at r = 25,
//     non-decreasing in r, stable across two seeds within 3 sigma
//     (k = 20, N = 10^4).
static void criterion_saturation() {
    auto l = orbits::lubotzky_preset();
    Polynomial f = Polynomial::coordinate_product(2);
    std::vector<BigInt> x0{BigInt(1), BigInt(2)};
    const std::uint32_t k = 20, n = 10000, r_fixed = 25;

    auto walk1 = orbits::sample_walk(l, k, n, 1001, 8);
    auto walk2 = orbits::sample_walk(l, k, n, 2002, 8);
    auto s1 = sieve::almost_prime_measure(walk1, x0, f, r_fixed, {}, 8);
    auto s2 = sieve::almost_prime_measure(walk2, x0, f, r_fixed, {}, 8);

    expect(s1.unfactored_fraction.is_zero() && s2.unfactored_fraction.is_zero(),
           "all orbit values factored within the default effort");
    expect(s1.lower_fraction[r_fixed] > Rational(0), "positive fraction at r = 25 (seed 1001)");
    expect(s2.lower_fraction[r_fixed] > Rational(0), "positive fraction at r = 25 (seed 2002)");

    bool monotone = true;
    for (std::uint32_t r = 1; r <= r_fixed; ++r) {
        monotone &= s1.lower_fraction[r] >= s1.lower_fraction[r - 1];
        monotone &= s2.lower_fraction[r] >= s2.lower_fraction[r - 1];
    }
    expect(monotone, "fraction non-decreasing in r");

    // cross-seed stability at r = 25 and at the informative mid-profile r = 4
    for (std::uint32_t r : {4u, r_fixed}) {
        double p1 = s1.lower_fraction[r].to_double();
        double p2 = s2.lower_fraction[r].to_double();
        double pbar = 0.5 * (p1 + p2);
        double sigma = std::sqrt(std::max(pbar * (1.0 - pbar), 1e-12) * 2.0 / static_cast<double>(n));
        std::printf("       r = %2u: p1 = %.4f, p2 = %.4f, 3 sigma = %.4f\n", r, p1, p2, 3.0 * sigma);
        expect(std::abs(p1 - p2) <= 3.0 * sigma + 1e-12, "seeds agree within 3 sigma");
    }
}

int main() {
    std::printf("orbsieve acceptance suite\n");
    criterion(1, "Descartes invariant", criterion_descartes);
    criterion(2, "packing ground truth", criterion_packing);
    criterion(3, "strong approximation for L", criterion_strong_approx);
    criterion(4, "Markov spectrum", criterion_markov_spectrum);
    criterion(5, "equidistribution bound", criterion_equidistribution);
    criterion(6, "sieve identity", criterion_sieve_identity);
    criterion(7, "sieve dimension", criterion_sieve_dimension);
    criterion(8, "DT density", criterion_dt_density);
    criterion(9, "DT homology consistency", criterion_dt_homology);
    criterion(10, "appendix baselines", criterion_appendix_baselines);
    criterion(11, "saturation property suite", criterion_saturation);
    if (g_failures) {
        std::printf("%d criterion(s) FAILED\n", g_failures);
        return 1;
    }
    std::printf("all 11 criteria passed\n");
    return 0;
}
