#include "orbsieve/apollonian.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace orbsieve::apollonian {

DescartesQuadruple DescartesQuadruple::sorted() const {
    DescartesQuadruple q = *this;
    std::sort(q.c.begin(), q.c.end());
    return q;
}

BigInt descartes_form(const DescartesQuadruple& q) {
    BigInt sum_sq(0), sum(0);
    for (const auto& v : q.c) {
        sum_sq += v * v;
        sum += v;
    }
    return sum_sq + sum_sq - sum * sum;
}

DescartesQuadruple reflect(const DescartesQuadruple& q, int i) {
    if (i < 1 || i > 4) throw std::invalid_argument("reflect: index must be 1..4");
    if (!descartes_form(q).is_zero()) throw std::invalid_argument("reflect: quadruple fails Q = 0");
    DescartesQuadruple r = q;
    BigInt others(0);
    for (int j = 0; j < 4; ++j)
        if (j != i - 1) others += q.c[j];
    r.c[i - 1] = others + others - q.c[i - 1];
    return r;
}

DescartesQuadruple reduce_to_root(const DescartesQuadruple& q, std::size_t max_steps) {
    if (!descartes_form(q).is_zero()) throw std::invalid_argument("reduce_to_root: quadruple fails Q = 0");
    DescartesQuadruple cur = q;
    for (std::size_t step = 0; step < max_steps; ++step) {
        // candidate i replaces c_i by 2*(sum - c_i) - c_i; delta = 2*sum - 4*c_i
        BigInt sum(0);
        for (const auto& v : cur.c) sum += v;
        int best = -1;
        BigInt best_new_ci;
        for (int i = 0; i < 4; ++i) {
            BigInt new_ci = sum + sum - BigInt(4) * cur.c[i] + cur.c[i];  // 2(sum - c_i) - c_i
            if (new_ci < cur.c[i] && (best < 0 || new_ci - cur.c[i] < best_new_ci - cur.c[best])) {
                best = i;
                best_new_ci = new_ci;
            }
        }
        if (best < 0) return cur.sorted();
        cur.c[best] = best_new_ci;
    }
    throw std::runtime_error("reduce_to_root: descent did not terminate (malformed input)");
}

IntMatrix reflection_matrix(int i) {
    if (i < 1 || i > 4) throw std::invalid_argument("reflection_matrix: index must be 1..4");
    IntMatrix m = IntMatrix::identity(4);
    for (int j = 0; j < 4; ++j) m.at(i - 1, j) = BigInt(j == i - 1 ? -1 : 2);
    return m;
}

IntMatrix descartes_gram() {
    IntMatrix g(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) g.at(i, j) = BigInt(i == j ? 1 : -1);
    return g;
}

Packing enumerate_packing(const DescartesQuadruple& root, const BigInt& bound) {
    if (!descartes_form(root).is_zero()) throw std::invalid_argument("enumerate_packing: root fails Q = 0");
    for (const auto& v : root.c)
        if (v > bound) throw std::invalid_argument("enumerate_packing: bound below a root curvature");

    Packing p;
    p.root = root;
    p.bound = bound;

    std::set<std::array<BigInt, 4>> seen;
    std::vector<std::array<BigInt, 4>> frontier;
    const auto root_key = root.sorted().c;
    seen.insert(root_key);
    frontier.push_back(root_key);
    for (const auto& v : root.c) p.curvatures.push_back(v);

    while (!frontier.empty()) {
        std::vector<std::array<BigInt, 4>> next;
        for (const auto& key : frontier) {
            BigInt sum(0);
            for (const auto& v : key) sum += v;
            for (int i = 0; i < 4; ++i) {
                BigInt new_ci = sum + sum - BigInt(4) * key[i] + key[i];
                if (new_ci > bound) continue;
                std::array<BigInt, 4> nk = key;
                nk[i] = new_ci;
                std::sort(nk.begin(), nk.end());
                if (seen.insert(nk).second) {
                    next.push_back(nk);
                    p.curvatures.push_back(new_ci);  // this reflection created one new circle
                }
            }
        }
        frontier = std::move(next);
    }

    p.quadruples.assign(seen.begin(), seen.end());
    std::sort(p.curvatures.begin(), p.curvatures.end());
    return p;
}

std::vector<BigInt> Packing::distinct_curvatures() const {
    std::vector<BigInt> d = curvatures;
    d.erase(std::unique(d.begin(), d.end()), d.end());
    return d;
}

void write_packing(const Packing& p, std::ostream& out) {
    out << "apollonian-packing v1 root";
    for (const auto& v : p.root.c) out << ' ' << v.to_string();
    out << " bound " << p.bound.to_string() << '\n';
    for (const auto& q : p.quadruples)
        out << q[0].to_string() << ' ' << q[1].to_string() << ' ' << q[2].to_string() << ' ' << q[3].to_string() << '\n';
}

Packing read_packing(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("packing file: missing header");
    std::istringstream hdr(line);
    std::string tag, version, rootkw, boundkw;
    Packing p;
    std::array<std::string, 4> rc;
    std::string b;
    hdr >> tag >> rootkw;
    if (tag != "apollonian-packing" || rootkw != "v1") throw std::runtime_error("packing file: bad header");
    hdr >> rootkw;
    if (rootkw != "root") throw std::runtime_error("packing file: bad header");
    for (auto& s : rc) hdr >> s;
    hdr >> boundkw >> b;
    if (boundkw != "bound" || !hdr) throw std::runtime_error("packing file: bad header");
    for (int i = 0; i < 4; ++i) p.root.c[i] = BigInt::from_string(rc[i]);
    p.bound = BigInt::from_string(b);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::array<BigInt, 4> q;
        std::string s;
        for (int i = 0; i < 4; ++i) {
            if (!(row >> s)) throw std::runtime_error("packing file: short record");
            q[i] = BigInt::from_string(s);
        }
        p.quadruples.push_back(std::move(q));
    }
    return p;
}

}  // namespace orbsieve::apollonian
