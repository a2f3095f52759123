#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "netid/linalg.hpp"

namespace netid {

/// Dense matrix over GF(2), rows packed into 64-bit words.
class BinaryMatrix {
public:
    BinaryMatrix() = default;
    BinaryMatrix(std::size_t rows, std::size_t cols);

    static BinaryMatrix identity(std::size_t n);
    static BinaryMatrix from_rows(std::initializer_list<std::initializer_list<int>> rows);
    /// 1 wherever |a(i,j)| > threshold.
    static BinaryMatrix support_of(const Matrix& a, double threshold = 0.5);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    bool get(std::size_t r, std::size_t c) const
    {
        return (row_ptr(r)[c / 64] >> (c % 64)) & 1U;
    }
    void set(std::size_t r, std::size_t c, bool value);

    /// row[target] += row[source] (mod 2).
    void add_row(std::size_t target, std::size_t source);
    void swap_rows(std::size_t a, std::size_t b);

    std::size_t row_weight(std::size_t r) const;
    std::size_t col_weight(std::size_t c) const;
    bool row_is_zero(std::size_t r) const;

    BinaryMatrix transpose() const;
    BinaryMatrix select_columns(std::span<const std::size_t> columns) const;
    BinaryMatrix top_rows(std::size_t count) const;
    Matrix to_real() const;

    friend BinaryMatrix operator*(const BinaryMatrix& a, const BinaryMatrix& b);
    friend bool operator==(const BinaryMatrix& a, const BinaryMatrix& b);

    std::string to_string() const;

private:
    std::uint64_t* row_ptr(std::size_t r) { return bits_.data() + r * words_; }
    const std::uint64_t* row_ptr(std::size_t r) const { return bits_.data() + r * words_; }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> bits_;
};

struct Gf2Rref {
    BinaryMatrix reduced;                   ///< same shape as the input, zero rows last
    std::vector<std::size_t> pivot_columns; ///< ascending
    BinaryMatrix transform;                 ///< invertible, transform * input == reduced

    std::size_t rank() const { return pivot_columns.size(); }
};

/// Unique reduced row echelon form over GF(2) (no column permutation).
Gf2Rref rref_gf2(const BinaryMatrix& a);

std::size_t rank_gf2(const BinaryMatrix& a);

} // namespace netid
