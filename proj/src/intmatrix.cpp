#include "orbsieve/intmatrix.hpp"

#include <stdexcept>

namespace orbsieve {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) throw std::invalid_argument("IntMatrix: ragged rows");
        for (auto v : row) data_.emplace_back(v);
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = BigInt(1);
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("IntMatrix: dimension mismatch in product");
    IntMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const BigInt& aik = at(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) += aik * o.at(k, j);
        }
    return r;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("IntMatrix: dimension mismatch in sum");
    IntMatrix r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
    return r;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("IntMatrix: dimension mismatch in difference");
    IntMatrix r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
    return r;
}

std::vector<BigInt> IntMatrix::apply(const std::vector<BigInt>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("IntMatrix: vector dimension mismatch");
    std::vector<BigInt> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out[i] += at(i, j) * v[j];
    return out;
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

BigInt IntMatrix::determinant() const {
    if (rows_ != cols_) throw std::invalid_argument("IntMatrix: determinant of non-square matrix");
    const std::size_t n = rows_;
    if (n == 0) return BigInt(1);
    IntMatrix a = *this;
    BigInt prev(1);
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a.at(k, k).is_zero()) {
            std::size_t piv = k + 1;
            while (piv < n && a.at(piv, k).is_zero()) ++piv;
            if (piv == n) return BigInt(0);
            for (std::size_t j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(piv, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a.at(i, j) = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
        prev = a.at(k, k);
    }
    BigInt det = a.at(n - 1, n - 1);
    return sign < 0 ? det.negated() : det;
}

BigInt IntMatrix::max_abs_entry() const {
    BigInt best(0);
    for (const auto& v : data_) {
        BigInt a = v.abs();
        if (a > best) best = a;
    }
    return best;
}

std::uint64_t IntMatrix::hash64() const {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](std::uint64_t v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    mix(rows_);
    mix(cols_);
    for (const auto& v : data_) mix(v.hash64());
    return h;
}

IntMatrix parse_matrix_literal(std::string_view text) {
    std::vector<std::vector<BigInt>> rows;
    std::size_t i = 0;
    auto fail = [](const char* why) -> void { throw std::invalid_argument(std::string("matrix literal: ") + why); };
    if (i >= text.size() || text[i] != '[') fail("expected '['");
    ++i;
    while (i < text.size() && text[i] == '[') {
        ++i;
        std::vector<BigInt> row;
        for (;;) {
            std::size_t start = i;
            if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
            while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
            if (i == start) fail("expected integer entry");
            row.push_back(BigInt::from_string(text.substr(start, i - start)));
            if (i < text.size() && text[i] == ',') {
                ++i;
                continue;
            }
            break;
        }
        if (i >= text.size() || text[i] != ']') fail("expected ']' after row");
        ++i;
        rows.push_back(std::move(row));
        if (i < text.size() && text[i] == ',') ++i;
    }
    if (i >= text.size() || text[i] != ']') fail("expected final ']'");
    if (i + 1 != text.size()) fail("trailing characters");
    if (rows.empty()) fail("empty matrix");
    IntMatrix m(rows.size(), rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != rows[0].size()) fail("ragged rows");
        for (std::size_t c = 0; c < rows[r].size(); ++c) m.at(r, c) = rows[r][c];
    }
    return m;
}

std::string IntMatrix::to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        s += i ? ",[" : "[";
        for (std::size_t j = 0; j < cols_; ++j) {
            if (j) s += ",";
            s += at(i, j).to_string();
        }
        s += "]";
    }
    s += "]";
    return s;
}

}  // namespace orbsieve
