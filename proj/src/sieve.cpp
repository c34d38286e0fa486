#include "orbsieve/sieve.hpp"

#include <algorithm>
#include <cmath>

#include "orbsieve/parallel.hpp"

namespace orbsieve::sieve {

SieveSequence SieveSequence::from_items(std::vector<SieveItem> items) {
    SieveSequence s;
    for (auto& it : items) {
        if (it.weight < Rational(0)) throw std::invalid_argument("SieveSequence: negative weight");
        if (it.value.is_zero())
            s.zeros_.push_back(std::move(it));
        else {
            s.mass_ += it.weight;
            s.items_.push_back(std::move(it));
        }
    }
    return s;
}

SieveSequence SieveSequence::counting_range(std::uint64_t lo, std::uint64_t hi) {
    if (lo > hi) throw std::invalid_argument("SieveSequence: empty range");
    std::vector<SieveItem> items;
    items.reserve(hi - lo + 1);
    for (std::uint64_t y = lo; y <= hi; ++y)
        items.push_back(SieveItem{std::to_string(y), BigInt::from_u64(y), Rational(1)});
    return from_items(std::move(items));
}

SieveSequence SieveSequence::from_values(const std::vector<BigInt>& values) {
    std::vector<SieveItem> items;
    items.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        items.push_back(SieveItem{std::to_string(i), values[i], Rational(1)});
    return from_items(std::move(items));
}

Rational SieveSequence::zero_mass() const {
    Rational m;
    for (const auto& it : zeros_) m += it.weight;
    return m;
}

Rational congruence_sum(const SieveSequence& seq, const BigInt& d) {
    if (d < BigInt(1)) throw std::invalid_argument("congruence_sum: d >= 1 required");
    if (d == BigInt(1)) return seq.total_mass();
    orbits::require_squarefree_modulus(d);
    Rational sum;
    for (const auto& it : seq.items())
        if (it.value.divisible_by(d)) sum += it.weight;
    return sum;
}

LegendreResult legendre_sift(const SieveSequence& seq, const std::vector<std::uint64_t>& primes,
                             std::uint64_t z, std::size_t divisor_budget) {
    LegendreResult out;
    std::vector<std::uint64_t> ps;
    for (auto p : primes)
        if (p < z) ps.push_back(p);
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());

    out.prime_product = BigInt(1);
    for (auto p : ps) out.prime_product *= BigInt::from_u64(p);

    // direct route: gcd(n(y), P(z)) = 1
    for (const auto& it : seq.items()) {
        bool coprime = true;
        for (auto p : ps) {
            if (it.value.divisible_by(BigInt::from_u64(p))) {
                coprime = false;
                break;
            }
        }
        if (coprime) out.direct += it.weight;
    }

    if (ps.size() >= 63 || (std::size_t(1) << ps.size()) > divisor_budget) {
        out.budget_exceeded = true;
        out.inclusion_exclusion = out.direct;
        out.routes_agree = false;
        return out;
    }

    // inclusion-exclusion route, one congruence sum per squarefree divisor of P(z)
    out.divisor_count = std::size_t(1) << ps.size();
    for (std::size_t mask = 0; mask < out.divisor_count; ++mask) {
        BigInt d(1);
        int bits = 0;
        for (std::size_t b = 0; b < ps.size(); ++b)
            if (mask & (std::size_t(1) << b)) {
                d *= BigInt::from_u64(ps[b]);
                ++bits;
            }
        Rational sd = congruence_sum(seq, d);
        if (bits % 2 == 0)
            out.inclusion_exclusion += sd;
        else
            out.inclusion_exclusion -= sd;
    }
    out.routes_agree = out.inclusion_exclusion == out.direct;
    return out;
}

LocalDensity local_density(const orbits::FiniteGroupTable& table, const ElementPredicate& predicate) {
    LocalDensity d;
    d.prime = table.modulus();
    d.group_size = table.size();
    for (std::uint32_t i = 0; i < table.size(); ++i)
        if (predicate(table, i)) ++d.omega_count;
    d.density = Rational(BigInt::from_u64(d.omega_count), BigInt::from_u64(d.group_size));
    return d;
}

ElementPredicate orbit_zero_predicate(const Polynomial& f, const std::vector<BigInt>& x0) {
    return [f, x0](const orbits::FiniteGroupTable& t, std::uint32_t idx) {
        const std::uint32_t p = t.modulus();
        const std::size_t n = t.dim();
        if (x0.size() != n) throw std::invalid_argument("orbit_zero_predicate: x0 dimension mismatch");
        const auto& m = t.element(idx);
        // gamma * x0 mod p
        std::vector<BigInt> moved(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::uint64_t acc = 0;
            for (std::size_t j = 0; j < n; ++j) {
                std::uint32_t xj = x0[j].mod_u32(p);
                if (x0[j].is_negative() && xj) xj = p - xj;
                acc = (acc + static_cast<std::uint64_t>(m[i * n + j]) * xj) % p;
            }
            moved[i] = BigInt::from_u64(acc);
        }
        return f.evaluate(moved).mod_u32(p) == 0;
    };
}

DimensionFit dimension_estimate(const std::vector<std::pair<std::uint64_t, Rational>>& prime_densities) {
    if (prime_densities.size() < 5)
        throw std::invalid_argument("dimension_estimate: need at least 5 primes");
    auto pts = prime_densities;
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

    DimensionFit fit;
    fit.points = pts.size();
    double partial = 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::vector<std::pair<double, double>> xy;
    xy.reserve(pts.size());
    for (const auto& [p, g] : pts) {
        partial += g.to_double() * std::log(static_cast<double>(p));
        double x = std::log(static_cast<double>(p));
        xy.emplace_back(x, partial);
        sx += x;
        sy += partial;
        sxx += x * x;
        sxy += x * partial;
    }
    const double n = static_cast<double>(pts.size());
    const double denom = n * sxx - sx * sx;
    fit.kappa = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.kappa * sx) / n;
    double ss = 0.0;
    for (const auto& [x, y] : xy) {
        double r = y - (fit.kappa * x + fit.intercept);
        ss += r * r;
    }
    fit.rms_residual = std::sqrt(ss / n);
    return fit;
}

std::uint64_t poly_root_count_prime(const IntPolynomial& f, std::uint32_t p) {
    if (f.is_zero() || f.vanishes_identically_mod(p))
        throw std::invalid_argument("poly_root_count: polynomial vanishes identically mod " + std::to_string(p));
    // reduce the coefficients once, then Horner over all residues
    std::vector<std::uint64_t> c(f.coeffs().size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        std::uint32_t r = f.coeffs()[i].mod_u32(p);
        if (f.coeffs()[i].is_negative() && r) r = p - r;
        c[i] = r;
    }
    std::uint64_t count = 0;
    for (std::uint64_t x = 0; x < p; ++x) {
        std::uint64_t acc = 0;
        for (std::size_t i = c.size(); i-- > 0;) acc = (acc * x + c[i]) % p;
        if (acc == 0) ++count;
    }
    return count;
}

BigInt poly_root_count(const IntPolynomial& f, const BigInt& d) {
    if (d == BigInt(1)) return BigInt(1);
    orbits::require_squarefree_modulus(d);
    FactorOutcome fo = factor(d);
    if (!fo.complete) throw std::invalid_argument("poly_root_count: cannot factor modulus");
    BigInt count(1);
    for (const auto& [p, e] : fo.factors.prime_powers) {
        if (!p.fits_u64() || p.to_u64() > 0xFFFFFFFFull)
            throw std::invalid_argument("poly_root_count: prime too large for enumeration");
        count *= BigInt::from_u64(poly_root_count_prime(f, static_cast<std::uint32_t>(p.to_u64())));
    }
    return count;
}

LargeSieveMass large_sieve_mass(const std::vector<LocalDensity>& densities, std::uint64_t z,
                                const Rational& total_mass) {
    if (z < 2) throw std::invalid_argument("large_sieve_mass: z >= 2 required");
    LargeSieveMass out;
    const Rational one(1);
    std::vector<std::pair<std::uint64_t, Rational>> usable;
    for (const auto& d : densities) {
        if (d.prime >= z) continue;
        if (d.density >= one) {
            out.finite = false;
            out.empty_mod_prime = d.prime;
            return out;
        }
        usable.emplace_back(d.prime, d.density / (one - d.density));
    }
    std::sort(usable.begin(), usable.end());

    // enumerate squarefree d < z supported on the supplied primes
    out.h = Rational(0);
    std::function<void(std::size_t, std::uint64_t, const Rational&)> rec =
        [&](std::size_t start, std::uint64_t d, const Rational& term) {
            out.h += term;
            for (std::size_t i = start; i < usable.size(); ++i) {
                std::uint64_t p = usable[i].first;
                if (d > (z - 1) / p) break;  // d * p >= z
                rec(i + 1, d * p, term * usable[i].second);
            }
        };
    rec(0, 1, one);
    out.sifted_upper_bound = total_mass / out.h;
    return out;
}

ConcentrationReport prime_divisor_concentration(const orbits::WalkEnsemble& ensemble,
                                                const std::vector<PrimeCondition>& conditions) {
    ConcentrationReport rep;
    rep.samples = ensemble.sample_count();
    for (const auto& c : conditions) {
        rep.expected += c.density;
        rep.variance_prediction += c.density * (Rational(1) - c.density);
    }
    if (conditions.empty() || ensemble.samples.empty()) return rep;

    Rational sum_sq;
    for (const auto& g : ensemble.samples) {
        std::int64_t t = 0;
        for (const auto& c : conditions) {
            orbits::ResidueMatrix r = orbits::reduce_mod(g, BigInt::from_u64(c.prime));
            if (c.predicate(r, g.rows())) ++t;
        }
        Rational dev = Rational(t) - rep.expected;
        sum_sq += dev * dev;
    }
    rep.mean_square = sum_sq / Rational(static_cast<std::int64_t>(rep.samples));
    return rep;
}

AlmostPrimeStats almost_prime_measure(const orbits::WalkEnsemble& ensemble, const std::vector<BigInt>& x0,
                                      const Polynomial& f, std::uint32_t r_max, const FactorEffort& effort,
                                      unsigned workers) {
    AlmostPrimeStats stats;
    stats.r_max = r_max;
    stats.samples = ensemble.sample_count();
    const std::size_t n = stats.samples;

    std::vector<OmegaValue> omegas(n);
    parallel_for(n, workers, [&](std::size_t i) {
        omegas[i] = omega(orbits::orbit_value(ensemble.samples[i], x0, f), effort);
    });

    std::uint64_t zeros = 0, unfactored = 0;
    std::vector<std::uint64_t> lower(r_max + 1, 0), upper(r_max + 1, 0);
    for (const auto& om : omegas) {
        if (om.kind == OmegaKind::Infinite) {
            ++zeros;
            continue;
        }
        if (om.kind == OmegaKind::Unknown) ++unfactored;
        for (std::uint32_t r = 0; r <= r_max; ++r) {
            if (om.known_at_most(r)) ++lower[r];
            if (om.possibly_at_most(r)) ++upper[r];
        }
    }
    const Rational total(static_cast<std::int64_t>(n));
    stats.zero_fraction = Rational(static_cast<std::int64_t>(zeros)) / total;
    stats.unfactored_fraction = Rational(static_cast<std::int64_t>(unfactored)) / total;
    stats.lower_fraction.reserve(r_max + 1);
    stats.upper_fraction.reserve(r_max + 1);
    for (std::uint32_t r = 0; r <= r_max; ++r) {
        stats.lower_fraction.push_back(Rational(static_cast<std::int64_t>(lower[r])) / total);
        stats.upper_fraction.push_back(Rational(static_cast<std::int64_t>(upper[r])) / total);
    }
    return stats;
}

Rational sifted_fraction(const orbits::WalkEnsemble& ensemble, const std::vector<BigInt>& x0,
                         const Polynomial& f, std::uint64_t z) {
    if (ensemble.samples.empty()) return Rational(0);
    const auto primes = primes_below(static_cast<std::uint32_t>(std::min<std::uint64_t>(z, 0xFFFFFFFFull)));
    std::uint64_t survivors = 0;
    for (const auto& g : ensemble.samples) {
        BigInt v = orbits::orbit_value(g, x0, f);
        if (v.is_zero()) continue;  // Y0 never counts as sifted
        bool survives = true;
        for (auto p : primes) {
            if (v.mod_u32(p) == 0) {
                survives = false;
                break;
            }
        }
        if (survives) ++survivors;
    }
    return Rational(static_cast<std::int64_t>(survivors)) /
           Rational(static_cast<std::int64_t>(ensemble.sample_count()));
}

LevelLedger level_ledger(const std::vector<std::pair<BigInt, Rational>>& remainders, const BigInt& cutoff,
                         const std::vector<LocalDensity>& densities,
                         const std::vector<std::pair<std::uint64_t, std::uint64_t>>& image_sizes,
                         double rho) {
    LevelLedger ledger;
    ledger.cutoff = cutoff;
    for (const auto& [d, r] : remainders) {
        if (d >= cutoff) continue;
        ledger.remainders.emplace_back(d, r);
        ledger.aggregate += r;
    }
    for (const auto& d : densities) {
        if (d.omega_count == 0 || d.prime < 2) continue;
        ledger.delta = std::max(ledger.delta, std::log(static_cast<double>(d.omega_count)) /
                                                  std::log(static_cast<double>(d.prime)));
    }
    for (const auto& [p, size] : image_sizes) {
        if (p < 2 || size == 0) continue;
        ledger.delta1 = std::max(ledger.delta1, std::log(static_cast<double>(size)) /
                                                    std::log(static_cast<double>(p)));
    }
    if (rho > 0.0 && rho < 1.0)
        ledger.beta_ceiling = std::pow(rho, -1.0 / (1.0 + ledger.delta + ledger.delta1 / 2.0));
    return ledger;
}

}  // namespace orbsieve::sieve
