#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace netid {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Throws NonFinite when any entry is NaN or infinite.
void require_finite(const Matrix& a, std::string_view what);

struct SvdResult {
    Vector singular_values; ///< non-increasing, length min(rows, cols)
    Matrix left_vectors;    ///< rows x rows, orthonormal
    Matrix right_vectors;   ///< cols x min(rows, cols)
};

/**
 * Singular value decomposition with all left vectors.
 *
 * Signs are fixed so that the first component of each left vector whose
 * magnitude exceeds 1e-12 is positive; the matching right vector is flipped
 * with it.
 */
SvdResult svd(const Matrix& a);

struct RrefResult {
    /// RREF with columns already permuted: the first rank() rows read [I | C].
    Matrix reduced;
    /// Permuted column k is original column column_permutation[k].
    std::vector<Index> column_permutation;
    /// Original indices of the pivot columns, ascending.
    std::vector<Index> pivot_columns;

    Index rank() const { return static_cast<Index>(pivot_columns.size()); }

    /// reduced with its columns moved back to the input order.
    Matrix in_original_order() const;
};

/// Fraction of the largest residual column norm a column needs to be
/// eligible as the next pivot.
inline constexpr double kColumnPivotThreshold = 0.5;

/**
 * Reduced row echelon form with row and column pivoting.
 *
 * Pivot columns are selected on an orthonormal basis of the row space, so
 * the result depends only on the row space: rref_real(M * a) == rref_real(a)
 * for any invertible M. At each step the candidate columns are those whose
 * norm, after projecting out the pivots chosen so far, is at least
 * kColumnPivotThreshold times the largest; the lowest index wins. Rows are
 * partially pivoted during the Gauss-Jordan sweep.
 *
 * zero_tol defaults to 1e-10 * max|a|; singular values at or below it
 * count as zero when determining the rank.
 */
RrefResult rref_real(const Matrix& a, std::optional<double> zero_tol = std::nullopt);

/// Rows spanning the row space of a, orthonormal. Rank uses the same
/// tolerance rule as rref_real.
Matrix orthonormal_row_basis(const Matrix& a, std::optional<double> zero_tol = std::nullopt);

/// argmin ||a x - b||_F. Throws RankDeficient when the smallest singular
/// value of a is below 1e-10 times the largest.
Matrix least_squares(const Matrix& a, const Matrix& b);

} // namespace netid
