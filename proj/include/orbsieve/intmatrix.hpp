#pragma once

#include <initializer_list>
#include <vector>

#include "orbsieve/bigint.hpp"

namespace orbsieve {

// Dense integer matrix with exact BigInt entries.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows);

    static IntMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    BigInt& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const BigInt& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    IntMatrix operator*(const IntMatrix& o) const;
    IntMatrix operator+(const IntMatrix& o) const;
    IntMatrix operator-(const IntMatrix& o) const;
    std::vector<BigInt> apply(const std::vector<BigInt>& v) const;  // matrix * column vector
    IntMatrix transposed() const;

    // Exact determinant (Bareiss fraction-free elimination); square only.
    BigInt determinant() const;

    // Largest absolute entry.
    BigInt max_abs_entry() const;

    bool operator==(const IntMatrix& o) const = default;
    std::uint64_t hash64() const;
    std::string to_string() const;  // [[a,b],[c,d]]

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<BigInt> data_;
};

struct IntMatrixHash {
    std::size_t operator()(const IntMatrix& m) const { return static_cast<std::size_t>(m.hash64()); }
};

// Parse "[[a,b],[c,d]]" (decimal entries, optional signs, no interior whitespace);
// inverse of IntMatrix::to_string.
IntMatrix parse_matrix_literal(std::string_view text);

}  // namespace orbsieve
