#include "netid/gf2.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "netid/error.hpp"

namespace netid {

BinaryMatrix::BinaryMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64), bits_(rows * ((cols + 63) / 64), 0)
{
}

BinaryMatrix BinaryMatrix::identity(std::size_t n)
{
    BinaryMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        out.set(i, i, true);
    return out;
}

BinaryMatrix BinaryMatrix::from_rows(std::initializer_list<std::initializer_list<int>> rows)
{
    const std::size_t cols = rows.size() == 0 ? 0 : rows.begin()->size();
    BinaryMatrix out(rows.size(), cols);
    std::size_t r = 0;
    for (const auto& row : rows) {
        if (row.size() != cols)
            throw Error(ErrorKind::InvalidArgument, "ragged rows in BinaryMatrix::from_rows");
        std::size_t c = 0;
        for (int v : row)
            out.set(r, c++, (v & 1) != 0);
        ++r;
    }
    return out;
}

BinaryMatrix BinaryMatrix::support_of(const Matrix& a, double threshold)
{
    BinaryMatrix out(static_cast<std::size_t>(a.rows()), static_cast<std::size_t>(a.cols()));
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            if (std::abs(a(i, j)) > threshold)
                out.set(i, j, true);
    return out;
}

void BinaryMatrix::set(std::size_t r, std::size_t c, bool value)
{
    const std::uint64_t mask = std::uint64_t{1} << (c % 64);
    if (value)
        row_ptr(r)[c / 64] |= mask;
    else
        row_ptr(r)[c / 64] &= ~mask;
}

void BinaryMatrix::add_row(std::size_t target, std::size_t source)
{
    std::uint64_t* t = row_ptr(target);
    const std::uint64_t* s = row_ptr(source);
    for (std::size_t w = 0; w < words_; ++w)
        t[w] ^= s[w];
}

void BinaryMatrix::swap_rows(std::size_t a, std::size_t b)
{
    if (a == b)
        return;
    std::swap_ranges(row_ptr(a), row_ptr(a) + words_, row_ptr(b));
}

std::size_t BinaryMatrix::row_weight(std::size_t r) const
{
    std::size_t total = 0;
    for (std::size_t w = 0; w < words_; ++w)
        total += static_cast<std::size_t>(std::popcount(row_ptr(r)[w]));
    return total;
}

std::size_t BinaryMatrix::col_weight(std::size_t c) const
{
    std::size_t total = 0;
    for (std::size_t r = 0; r < rows_; ++r)
        total += get(r, c) ? 1 : 0;
    return total;
}

bool BinaryMatrix::row_is_zero(std::size_t r) const
{
    const std::uint64_t* p = row_ptr(r);
    return std::all_of(p, p + words_, [](std::uint64_t w) { return w == 0; });
}

BinaryMatrix BinaryMatrix::transpose() const
{
    BinaryMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (get(r, c))
                out.set(c, r, true);
    return out;
}

BinaryMatrix BinaryMatrix::select_columns(std::span<const std::size_t> columns) const
{
    BinaryMatrix out(rows_, columns.size());
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = 0; k < columns.size(); ++k)
            if (get(r, columns[k]))
                out.set(r, k, true);
    return out;
}

BinaryMatrix BinaryMatrix::top_rows(std::size_t count) const
{
    BinaryMatrix out(count, cols_);
    std::copy(bits_.begin(), bits_.begin() + static_cast<std::ptrdiff_t>(count * words_),
              out.bits_.begin());
    return out;
}

Matrix BinaryMatrix::to_real() const
{
    Matrix out = Matrix::Zero(static_cast<Index>(rows_), static_cast<Index>(cols_));
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (get(r, c))
                out(static_cast<Index>(r), static_cast<Index>(c)) = 1.0;
    return out;
}

BinaryMatrix operator*(const BinaryMatrix& a, const BinaryMatrix& b)
{
    if (a.cols_ != b.rows_)
        throw Error(ErrorKind::InvalidArgument, "BinaryMatrix product: shape mismatch");
    BinaryMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        std::uint64_t* dst = out.row_ptr(i);
        for (std::size_t k = 0; k < a.cols_; ++k) {
            if (!a.get(i, k))
                continue;
            const std::uint64_t* src = b.row_ptr(k);
            for (std::size_t w = 0; w < out.words_; ++w)
                dst[w] ^= src[w];
        }
    }
    return out;
}

bool operator==(const BinaryMatrix& a, const BinaryMatrix& b)
{
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.bits_ == b.bits_;
}

std::string BinaryMatrix::to_string() const
{
    std::string out;
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            if (c)
                out += ' ';
            out += get(r, c) ? '1' : '0';
        }
        out += '\n';
    }
    return out;
}

Gf2Rref rref_gf2(const BinaryMatrix& a)
{
    Gf2Rref out{a, {}, BinaryMatrix::identity(a.rows())};
    std::size_t lead = 0;
    for (std::size_t c = 0; c < a.cols() && lead < a.rows(); ++c) {
        std::size_t pivot = lead;
        while (pivot < a.rows() && !out.reduced.get(pivot, c))
            ++pivot;
        if (pivot == a.rows())
            continue;
        out.reduced.swap_rows(lead, pivot);
        out.transform.swap_rows(lead, pivot);
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r != lead && out.reduced.get(r, c)) {
                out.reduced.add_row(r, lead);
                out.transform.add_row(r, lead);
            }
        }
        out.pivot_columns.push_back(c);
        ++lead;
    }
    return out;
}

std::size_t rank_gf2(const BinaryMatrix& a)
{
    return rref_gf2(a).rank();
}

} // namespace netid
