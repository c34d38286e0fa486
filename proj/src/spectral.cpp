#include "orbsieve/spectral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <deque>
#include <ostream>

#include "orbsieve/kernels.hpp"
#include "orbsieve/walk.hpp"

namespace orbsieve::spectral {

void CayleyGraph::finalize() {
    action_ptrs_.clear();
    action_ptrs_.reserve(actions_.size());
    for (const auto& row : actions_) action_ptrs_.push_back(row.data());
}

CayleyGraph CayleyGraph::from_table(const FiniteGroupTable& t) {
    CayleyGraph g;
    g.table_ = &t;
    g.n_ = t.size();
    g.actions_.reserve(t.generator_count());
    for (std::size_t s = 0; s < t.generator_count(); ++s) g.actions_.push_back(t.action_row(s));
    g.finalize();
    return g;
}

CayleyGraph CayleyGraph::from_steps(const FiniteGroupTable& t, std::vector<std::uint32_t> step_elements) {
    if (step_elements.empty()) throw std::invalid_argument("CayleyGraph: empty step multiset");
    // symmetry: the multiset must be closed under inverse, multiplicities included
    std::vector<std::uint32_t> inverses;
    inverses.reserve(step_elements.size());
    for (auto s : step_elements) inverses.push_back(t.inverse(s));
    auto sorted = step_elements;
    std::sort(sorted.begin(), sorted.end());
    std::sort(inverses.begin(), inverses.end());
    if (sorted != inverses) throw std::invalid_argument("CayleyGraph: step multiset is not symmetric");

    CayleyGraph g;
    g.table_ = &t;
    g.n_ = t.size();
    g.actions_.assign(step_elements.size(), std::vector<std::uint32_t>(t.size()));
    for (std::size_t s = 0; s < step_elements.size(); ++s)
        for (std::uint32_t i = 0; i < t.size(); ++i) g.actions_[s][i] = t.multiply(i, step_elements[s]);
    g.finalize();

    // connectivity: the steps must generate the whole table
    std::vector<char> reached(g.n_, 0);
    std::deque<std::uint32_t> queue{t.identity_index()};
    reached[t.identity_index()] = 1;
    std::size_t count = 1;
    while (!queue.empty()) {
        std::uint32_t cur = queue.front();
        queue.pop_front();
        for (const auto& row : g.actions_) {
            std::uint32_t nxt = row[cur];
            if (!reached[nxt]) {
                reached[nxt] = 1;
                ++count;
                queue.push_back(nxt);
            }
        }
    }
    if (count != g.n_) throw std::invalid_argument("CayleyGraph: step multiset does not generate the group");
    return g;
}

void CayleyGraph::markov_apply(std::span<const double> in, std::span<double> out) const {
    if (in.size() != n_ || out.size() != n_) throw std::invalid_argument("markov_apply: size mismatch");
    static const kernels::MarkovApplyFn fn = kernels::select_markov_apply();
    fn(action_ptrs_.data(), action_ptrs_.size(), in.data(), out.data(), n_);
}

std::vector<Rational> CayleyGraph::markov_apply_exact(const std::vector<Rational>& f) const {
    if (f.size() != n_) throw std::invalid_argument("markov_apply_exact: size mismatch");
    const Rational inv(BigInt(1), BigInt(static_cast<std::int64_t>(step_count())));
    std::vector<Rational> out(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        Rational acc;
        for (const auto& row : actions_) acc += f[row[i]];
        out[i] = acc * inv;
    }
    return out;
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void subtract_mean(std::span<double> v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    for (double& x : v) x -= mean;
}

double norm2(std::span<const double> v) { return std::sqrt(dot(v, v)); }

}  // namespace

SpectralReport mean_zero_spectral_radius(const CayleyGraph& g, double tol, std::size_t maxiter) {
    SpectralReport rep;
    rep.modulus = BigInt::from_u64(g.table().modulus());
    rep.group_size = g.size();
    rep.tolerance = tol;
    const std::size_t n = g.size();
    if (n == 1) {
        // mean-zero space is trivial; rho0 defined as 0
        rep.converged = true;
        return rep;
    }

    std::vector<double> v(n), w(n), w2(n);
    orbits::SplitMix64 rng(0x0123456789ABCDEFull);
    for (auto& x : v) x = static_cast<double>(rng.next() >> 11) * 0x1.0p-53 - 0.5;
    subtract_mean(v);
    double nv = norm2(v);
    for (auto& x : v) x /= nv;

    rep.ritz_min = 2.0;
    rep.ritz_max = -2.0;
    for (std::size_t it = 0; it < maxiter; ++it) {
        g.markov_apply(v, w);
        double ritz = dot(v, w);  // Rayleigh quotient of M at unit v
        rep.ritz_min = std::min(rep.ritz_min, ritz);
        rep.ritz_max = std::max(rep.ritz_max, ritz);
        g.markov_apply(w, w2);
        subtract_mean(w2);
        double theta = dot(v, w2);  // Rayleigh quotient of M^2, converges to rho0^2
        double resid = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double r = w2[i] - theta * v[i];
            resid += r * r;
        }
        resid = std::sqrt(resid);
        rep.iterations = it + 1;
        rep.rho0 = std::sqrt(std::max(theta, 0.0));
        if (resid <= tol) {
            rep.converged = true;
            return rep;
        }
        double nw = norm2(w2);
        if (nw == 0.0) {
            // M^2 annihilates the mean-zero space (e.g. steps = whole group)
            rep.rho0 = 0.0;
            rep.converged = true;
            return rep;
        }
        for (std::size_t i = 0; i < n; ++i) v[i] = w2[i] / nw;
    }
    if (rep.ritz_min > rep.ritz_max) rep.ritz_min = rep.ritz_max = 0.0;
    return rep;  // converged stays false; rho0 holds the last bracket
}

SpectralReport dense_mean_zero_spectral_radius(const CayleyGraph& g, std::size_t max_size) {
    const std::size_t n = g.size();
    if (n > max_size) throw std::invalid_argument("dense eigensolve: group too large");
    SpectralReport rep;
    rep.modulus = BigInt::from_u64(g.table().modulus());
    rep.group_size = n;
    rep.used_dense = true;
    rep.converged = true;
    if (n == 1) return rep;

    const double inv = 1.0 / static_cast<double>(g.step_count());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (const auto& row : g.actions())
        for (std::size_t i = 0; i < n; ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(row[i])) += inv;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();  // ascending
    // drop the single top eigenvalue 1 (constants); rho0 = max |remaining|
    double lo = ev(0);
    double hi = ev(static_cast<Eigen::Index>(n) - 2);
    rep.rho0 = std::max(std::abs(lo), std::abs(hi));
    rep.ritz_min = lo;
    rep.ritz_max = ev(static_cast<Eigen::Index>(n) - 1);
    return rep;
}

SpectralReport spectral_report_auto(const CayleyGraph& g, double tol, std::size_t maxiter,
                                    std::size_t dense_cutoff) {
    if (g.size() <= dense_cutoff) return dense_mean_zero_spectral_radius(g, dense_cutoff);
    return mean_zero_spectral_radius(g, tol, maxiter);
}

std::vector<EquidistributionRow> equidistribution_error(const CayleyGraph& g, double rho,
                                                        std::uint32_t kmax, double slack) {
    const std::size_t n = g.size();
    const BigInt group_size = BigInt::from_u64(n);
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    std::vector<BigInt> num(n, BigInt(0)), next(n);
    num[g.table().identity_index()] = BigInt(1);
    BigInt denom(1);
    const BigInt s_count(static_cast<std::int64_t>(g.step_count()));

    std::vector<EquidistributionRow> rows;
    rows.reserve(kmax + 1);
    double envelope = sqrt_n;  // sqrt(|G|) * rho^k
    for (std::uint32_t k = 0;; ++k) {
        // max_alpha |num[alpha]/denom - 1/n| = max |num*n - denom| / (n*denom)
        Rational max_err;
        for (const auto& m : num) {
            BigInt diff = m * group_size - denom;
            if (diff.is_negative()) diff = diff.negated();
            Rational err(diff, group_size * denom);
            if (err > max_err) max_err = err;
        }
        EquidistributionRow row;
        row.k = k;
        row.max_error = max_err;
        row.bound = envelope;
        row.bound_holds = max_err.to_double() <= envelope + slack;
        rows.push_back(std::move(row));
        if (k == kmax) break;

        // pushforward one step
        for (auto& m : next) m = BigInt(0);
        for (std::size_t i = 0; i < n; ++i) {
            if (num[i].is_zero()) continue;
            for (const auto& row_s : g.actions()) next[row_s[i]] += num[i];
        }
        std::swap(num, next);
        denom *= s_count;
        envelope *= rho;
    }
    return rows;
}

TripleProductReport triple_product_growth(const FiniteGroupTable& t, const std::vector<std::uint32_t>& a) {
    TripleProductReport rep;
    if (a.empty()) throw std::invalid_argument("triple_product_growth: empty set");
    std::vector<std::uint32_t> uniq = a;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    rep.a_size = uniq.size();

    // subgroup generated by A: closure of {identity} under right products by A
    std::vector<char> in_closure(t.size(), 0);
    std::deque<std::uint32_t> queue{t.identity_index()};
    in_closure[t.identity_index()] = 1;
    std::size_t closure_size = 1;
    while (!queue.empty()) {
        std::uint32_t cur = queue.front();
        queue.pop_front();
        for (auto s : uniq) {
            std::uint32_t nxt = t.multiply(cur, s);
            if (!in_closure[nxt]) {
                in_closure[nxt] = 1;
                ++closure_size;
                queue.push_back(nxt);
            }
        }
    }
    rep.generated_subgroup_size = closure_size;
    rep.generates = closure_size == t.size();
    if (!rep.generates) return rep;

    std::vector<char> in_aa(t.size(), 0);
    std::vector<std::uint32_t> aa;
    for (auto x : uniq)
        for (auto y : uniq) {
            std::uint32_t p = t.multiply(x, y);
            if (!in_aa[p]) {
                in_aa[p] = 1;
                aa.push_back(p);
            }
        }
    std::vector<char> in_aaa(t.size(), 0);
    std::size_t aaa = 0;
    for (auto x : aa)
        for (auto y : uniq) {
            std::uint32_t p = t.multiply(x, y);
            if (!in_aaa[p]) {
                in_aaa[p] = 1;
                ++aaa;
            }
        }
    rep.aaa_size = aaa;
    if (rep.a_size >= 2)
        rep.growth_exponent = std::log(static_cast<double>(aaa)) / std::log(static_cast<double>(rep.a_size));
    return rep;
}

std::size_t graph_diameter(const CayleyGraph& g) {
    std::vector<std::int32_t> dist(g.size(), -1);
    std::deque<std::uint32_t> queue{g.table().identity_index()};
    dist[g.table().identity_index()] = 0;
    std::size_t ecc = 0;
    while (!queue.empty()) {
        std::uint32_t cur = queue.front();
        queue.pop_front();
        for (const auto& row : g.actions()) {
            std::uint32_t nxt = row[cur];
            if (dist[nxt] < 0) {
                dist[nxt] = dist[cur] + 1;
                ecc = std::max<std::size_t>(ecc, static_cast<std::size_t>(dist[nxt]));
                queue.push_back(nxt);
            }
        }
    }
    return ecc;
}

std::size_t girth_lower_bound(const CayleyGraph& g, std::size_t max_length) {
    const auto& t = g.table();
    // distinct non-identity steps and their inverse pairing
    std::vector<std::uint32_t> steps;
    for (const auto& row : g.actions()) {
        std::uint32_t elem = row[t.identity_index()];  // identity * s
        if (elem != t.identity_index()) steps.push_back(elem);
    }
    std::sort(steps.begin(), steps.end());
    steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
    if (steps.empty()) return 0;
    std::vector<std::uint32_t> inv(steps.size());
    for (std::size_t s = 0; s < steps.size(); ++s) {
        std::uint32_t is = t.inverse(steps[s]);
        inv[s] = static_cast<std::uint32_t>(std::lower_bound(steps.begin(), steps.end(), is) - steps.begin());
    }
    // BFS over (vertex, last step) states, forbidding immediate backtracking
    struct State {
        std::uint32_t vertex, last;
        std::size_t len;
    };
    std::vector<char> visited(t.size() * steps.size(), 0);
    std::deque<State> queue;
    for (std::uint32_t s = 0; s < steps.size(); ++s) {
        std::uint32_t v = t.multiply(t.identity_index(), steps[s]);
        if (v == t.identity_index()) return 1;
        queue.push_back({v, s, 1});
        visited[v * steps.size() + s] = 1;
    }
    while (!queue.empty()) {
        State cur = queue.front();
        queue.pop_front();
        if (cur.len >= max_length) continue;
        for (std::uint32_t s = 0; s < steps.size(); ++s) {
            if (s == inv[cur.last]) continue;  // backtracking edge
            std::uint32_t v = t.multiply(cur.vertex, steps[s]);
            if (v == t.identity_index()) return cur.len + 1;
            if (!visited[v * steps.size() + s]) {
                visited[v * steps.size() + s] = 1;
                queue.push_back({v, s, cur.len + 1});
            }
        }
    }
    return max_length + 1;
}

void write_spectral_csv(std::ostream& out, const std::vector<SpectralCsvRow>& rows) {
    out << "d,group_size,rho0,diameter,girth_lower_bound\n";
    char buf[64];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%.12g", r.rho0);
        out << r.modulus.to_string() << ',' << r.group_size << ',' << buf << ',' << r.diameter << ','
            << r.girth_lower_bound << '\n';
    }
}

}  // namespace orbsieve::spectral
