#pragma once

#include <iosfwd>

#include "orbsieve/polynomial.hpp"
#include "orbsieve/preset.hpp"

namespace orbsieve::orbits {

// Counter-based generator (SplitMix64). State after j draws is
// seed + j * 0x9E3779B97F4A7C15, so a stream can be restored from
// (seed, draw count) alone; that is what walk snapshots store.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        ++draws_;
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Unbiased via rejection sampling.
    std::uint64_t uniform_below(std::uint64_t n) {
        if (n == 0) throw std::domain_error("uniform_below: empty range");
        std::uint64_t rem = UINT64_MAX % n;
        if (rem == n - 1) return next() % n;  // n divides 2^64
        std::uint64_t limit = UINT64_MAX - rem;
        std::uint64_t r;
        do {
            r = next();
        } while (r >= limit);
        return r % n;
    }

    std::uint64_t draws() const { return draws_; }
    void skip_to(std::uint64_t draws) {
        state_ += (draws - draws_) * 0x9E3779B97F4A7C15ull;
        draws_ = draws;
    }

private:
    std::uint64_t state_;
    std::uint64_t draws_ = 0;
};

// Per-sample sub-seed: a SplitMix64 mix of (master seed, sample index), so
// sample streams are independent of scheduling and worker count.
std::uint64_t sub_seed(std::uint64_t master_seed, std::uint64_t sample_index);

// N walk positions after k uniform generator steps each; regenerating from
// (master seed, k, N) reproduces the samples exactly.
struct WalkEnsemble {
    std::string preset_name;
    std::uint64_t preset_hash = 0;
    std::uint32_t steps = 0;
    std::uint64_t master_seed = 0;
    std::vector<IntMatrix> samples;
    std::vector<std::uint64_t> rng_draws;  // per sample, supports resume

    std::size_t sample_count() const { return samples.size(); }
};

WalkEnsemble sample_walk(const GroupPreset& preset, std::uint32_t k, std::uint32_t n_samples,
                         std::uint64_t seed, unsigned workers = 1);

// Continue every sample of an ensemble to new_k > steps; identical to
// sampling at new_k directly.
void extend_walk(const GroupPreset& preset, WalkEnsemble& ensemble, std::uint32_t new_k,
                 unsigned workers = 1);

void write_walk_snapshot(const WalkEnsemble& e, std::ostream& out);
WalkEnsemble read_walk_snapshot(std::istream& in);

// Exact combinatorial ball B_S(k) with exact matrix equality.
struct CombinatorialBall {
    std::vector<IntMatrix> elements;          // BFS discovery order
    std::vector<std::uint32_t> word_length;   // per element
    std::vector<std::size_t> sphere_sizes;    // index r = |{g : |g|_S = r}|
    bool cap_exceeded = false;
};
CombinatorialBall combinatorial_ball(const GroupPreset& preset, std::uint32_t k,
                                     std::size_t cap = 2'000'000);

// Caller-supplied certificate that ||g|| >= c * lambda^{|g|_S} (max-entry norm);
// lets norm_ball prove that words longer than kmax already exceed X.
struct GrowthCertificate {
    double c = 1.0;
    double lambda = 1.0;
};

struct NormBall {
    std::vector<IntMatrix> elements;  // ||g||_max <= X among B_S(kmax)
    bool complete = false;            // true only under a certificate
    bool cap_exceeded = false;
};
NormBall norm_ball(const GroupPreset& preset, const BigInt& x_bound, std::uint32_t kmax,
                   std::optional<GrowthCertificate> certificate = std::nullopt,
                   std::size_t cap = 2'000'000);

// f(g * x0), exactly.
BigInt orbit_value(const IntMatrix& g, const std::vector<BigInt>& x0, const Polynomial& f);

}  // namespace orbsieve::orbits
