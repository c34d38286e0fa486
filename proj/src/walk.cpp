#include "orbsieve/walk.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "orbsieve/parallel.hpp"

namespace orbsieve::orbits {

std::uint64_t sub_seed(std::uint64_t master_seed, std::uint64_t sample_index) {
    SplitMix64 mixer(master_seed ^ (0xD1B54A32D192ED03ull * (sample_index + 1)));
    return mixer.next();
}

WalkEnsemble sample_walk(const GroupPreset& preset, std::uint32_t k, std::uint32_t n_samples,
                         std::uint64_t seed, unsigned workers) {
    if (n_samples == 0) throw std::invalid_argument("sample_walk: need at least one sample");
    WalkEnsemble e;
    e.preset_name = preset.name;
    e.preset_hash = preset.hash64();
    e.steps = k;
    e.master_seed = seed;
    e.samples.assign(n_samples, IntMatrix());
    e.rng_draws.assign(n_samples, 0);
    const std::size_t s_count = preset.step_count();
    parallel_for(n_samples, workers, [&](std::size_t i) {
        SplitMix64 rng(sub_seed(seed, i));
        IntMatrix pos = IntMatrix::identity(preset.dim);
        for (std::uint32_t step = 0; step < k; ++step)
            pos = pos * preset.generators[rng.uniform_below(s_count)];
        e.samples[i] = std::move(pos);
        e.rng_draws[i] = rng.draws();
    });
    return e;
}

void extend_walk(const GroupPreset& preset, WalkEnsemble& e, std::uint32_t new_k, unsigned workers) {
    if (preset.hash64() != e.preset_hash) throw std::invalid_argument("extend_walk: ensemble is from another preset");
    if (new_k < e.steps) throw std::invalid_argument("extend_walk: cannot walk backwards");
    const std::uint32_t extra = new_k - e.steps;
    const std::size_t s_count = preset.step_count();
    parallel_for(e.samples.size(), workers, [&](std::size_t i) {
        SplitMix64 rng(sub_seed(e.master_seed, i));
        rng.skip_to(e.rng_draws[i]);
        IntMatrix pos = e.samples[i];
        for (std::uint32_t step = 0; step < extra; ++step)
            pos = pos * preset.generators[rng.uniform_below(s_count)];
        e.samples[i] = std::move(pos);
        e.rng_draws[i] = rng.draws();
    });
    e.steps = new_k;
}

void write_walk_snapshot(const WalkEnsemble& e, std::ostream& out) {
    out << "walk-ensemble v1 preset " << e.preset_name << ' ' << e.preset_hash << " k " << e.steps
        << " n " << e.samples.size() << " seed " << e.master_seed << '\n';
    for (std::size_t i = 0; i < e.samples.size(); ++i)
        out << e.rng_draws[i] << ' ' << e.samples[i].to_string() << '\n';
}

WalkEnsemble read_walk_snapshot(std::istream& in) {
    std::string tag, ver, kw;
    WalkEnsemble e;
    std::size_t n = 0;
    in >> tag >> ver;
    if (tag != "walk-ensemble" || ver != "v1") throw std::runtime_error("walk snapshot: bad header");
    in >> kw >> e.preset_name >> e.preset_hash >> kw >> e.steps >> kw >> n >> kw >> e.master_seed;
    if (!in) throw std::runtime_error("walk snapshot: bad header");
    e.samples.reserve(n);
    e.rng_draws.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t draws = 0;
        std::string m;
        in >> draws >> m;
        if (!in) throw std::runtime_error("walk snapshot: short record");
        e.rng_draws.push_back(draws);
        e.samples.push_back(parse_matrix_literal(m));
    }
    return e;
}

CombinatorialBall combinatorial_ball(const GroupPreset& preset, std::uint32_t k, std::size_t cap) {
    CombinatorialBall ball;
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> index;
    auto find = [&](const IntMatrix& m) -> std::optional<std::uint32_t> {
        auto it = index.find(m.hash64());
        if (it == index.end()) return std::nullopt;
        for (std::uint32_t i : it->second)
            if (ball.elements[i] == m) return i;
        return std::nullopt;
    };
    auto insert = [&](IntMatrix m, std::uint32_t len) {
        std::uint32_t idx = static_cast<std::uint32_t>(ball.elements.size());
        index[m.hash64()].push_back(idx);
        ball.elements.push_back(std::move(m));
        ball.word_length.push_back(len);
        return idx;
    };

    insert(IntMatrix::identity(preset.dim), 0);
    ball.sphere_sizes.assign(k + 1, 0);
    ball.sphere_sizes[0] = 1;
    std::size_t level_begin = 0, level_end = 1;
    for (std::uint32_t r = 1; r <= k; ++r) {
        for (std::size_t i = level_begin; i < level_end; ++i) {
            for (const auto& g : preset.generators) {
                IntMatrix next = ball.elements[i] * g;
                if (find(next)) continue;
                if (ball.elements.size() >= cap) {
                    ball.cap_exceeded = true;
                    return ball;
                }
                insert(std::move(next), r);
                ++ball.sphere_sizes[r];
            }
        }
        level_begin = level_end;
        level_end = ball.elements.size();
        if (level_begin == level_end) break;  // group exhausted
    }
    return ball;
}

NormBall norm_ball(const GroupPreset& preset, const BigInt& x_bound, std::uint32_t kmax,
                   std::optional<GrowthCertificate> certificate, std::size_t cap) {
    if (x_bound < BigInt(1)) throw std::invalid_argument("norm_ball: bound must be >= 1");
    NormBall out;
    CombinatorialBall ball = combinatorial_ball(preset, kmax, cap);
    out.cap_exceeded = ball.cap_exceeded;
    for (const auto& g : ball.elements)
        if (g.max_abs_entry() <= x_bound) out.elements.push_back(g);
    if (certificate && !ball.cap_exceeded && certificate->lambda > 1.0) {
        double floor_next = certificate->c * std::pow(certificate->lambda, static_cast<double>(kmax) + 1.0);
        out.complete = floor_next > x_bound.to_double();
    }
    return out;
}

BigInt orbit_value(const IntMatrix& g, const std::vector<BigInt>& x0, const Polynomial& f) {
    std::vector<BigInt> moved = g.apply(x0);
    return f.evaluate(moved);
}

}  // namespace orbsieve::orbits
