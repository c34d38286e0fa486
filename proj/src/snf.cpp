#include "orbsieve/snf.hpp"

namespace orbsieve {

namespace {

struct Work {
    std::size_t rows, cols;
    std::vector<BigInt> a;
    BigInt& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < cols; ++c) std::swap(at(i, c), at(j, c));
    }
    void swap_cols(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t r = 0; r < rows; ++r) std::swap(at(r, i), at(r, j));
    }
    void add_row_multiple(std::size_t dst, std::size_t src, const BigInt& q) {
        if (q.is_zero()) return;
        for (std::size_t c = 0; c < cols; ++c) at(dst, c) -= q * at(src, c);
    }
    void add_col_multiple(std::size_t dst, std::size_t src, const BigInt& q) {
        if (q.is_zero()) return;
        for (std::size_t r = 0; r < rows; ++r) at(r, dst) -= q * at(r, src);
    }
};

}  // namespace

std::vector<BigInt> smith_normal_form(const IntMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    const std::size_t n = std::min(rows, cols);
    Work w{rows, cols, {}};
    w.a.reserve(rows * cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) w.a.push_back(m.at(r, c));

    std::vector<BigInt> diag(n, BigInt(0));
    for (std::size_t t = 0; t < n; ++t) {
        for (;;) {
            // smallest nonzero |entry| in the trailing block, ties by lowest (row, col)
            std::size_t pr = rows, pc = cols;
            BigInt best;
            for (std::size_t r = t; r < rows; ++r)
                for (std::size_t c = t; c < cols; ++c) {
                    const BigInt& v = w.at(r, c);
                    if (v.is_zero()) continue;
                    BigInt av = v.abs();
                    if (pr == rows || av < best) {
                        best = av;
                        pr = r;
                        pc = c;
                    }
                }
            if (pr == rows) return diag;  // trailing block is zero; remaining diagonal stays 0
            w.swap_rows(t, pr);
            w.swap_cols(t, pc);

            bool changed = false;
            for (std::size_t r = t + 1; r < rows; ++r) {
                if (w.at(r, t).is_zero()) continue;
                BigInt q = BigInt::divmod(w.at(r, t), w.at(t, t)).quot;
                w.add_row_multiple(r, t, q);
                if (!w.at(r, t).is_zero()) changed = true;  // remainder became the new smaller entry
            }
            for (std::size_t c = t + 1; c < cols; ++c) {
                if (w.at(t, c).is_zero()) continue;
                BigInt q = BigInt::divmod(w.at(t, c), w.at(t, t)).quot;
                w.add_col_multiple(c, t, q);
                if (!w.at(t, c).is_zero()) changed = true;
            }
            if (changed) continue;

            // pivot divides its row/col; enforce divisibility of the trailing block
            bool fixup = false;
            for (std::size_t r = t + 1; r < rows && !fixup; ++r)
                for (std::size_t c = t + 1; c < cols && !fixup; ++c)
                    if (!w.at(r, c).divisible_by(w.at(t, t))) {
                        // fold the offending row into row t and re-reduce
                        for (std::size_t cc = 0; cc < cols; ++cc) w.at(t, cc) += w.at(r, cc);
                        fixup = true;
                    }
            if (!fixup) break;
        }
        diag[t] = w.at(t, t).abs();
    }
    return diag;
}

LatticeQuotient column_lattice_quotient(const IntMatrix& a) {
    LatticeQuotient q;
    std::vector<BigInt> diag = smith_normal_form(a);
    std::size_t nonzero = 0;
    q.torsion_order = BigInt(1);
    for (const auto& d : diag) {
        if (d.is_zero()) continue;
        ++nonzero;
        q.torsion_order *= d;
        if (d > BigInt(1)) q.torsion_factors.push_back(d);
    }
    q.free_rank = a.rows() - nonzero;
    return q;
}

}  // namespace orbsieve
