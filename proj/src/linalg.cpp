#include "netid/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "netid/error.hpp"

namespace netid {

void require_finite(const Matrix& a, std::string_view what)
{
    if (!a.allFinite())
        throw Error(ErrorKind::NonFinite, std::string(what) + " contains NaN or Inf");
}

SvdResult svd(const Matrix& a)
{
    require_finite(a, "svd input");
    if (a.rows() == 0 || a.cols() == 0)
        throw Error(ErrorKind::InvalidArgument, "svd input is empty");

    Eigen::JacobiSVD<Matrix> dec(a, Eigen::ComputeFullU | Eigen::ComputeThinV);
    SvdResult out{dec.singularValues(), dec.matrixU(), dec.matrixV()};

    for (Index k = 0; k < out.left_vectors.cols(); ++k) {
        auto u = out.left_vectors.col(k);
        for (Index i = 0; i < u.size(); ++i) {
            if (std::abs(u(i)) > 1e-12) {
                if (u(i) < 0) {
                    u = -u;
                    if (k < out.right_vectors.cols())
                        out.right_vectors.col(k) *= -1.0;
                }
                break;
            }
        }
    }
    return out;
}

Matrix RrefResult::in_original_order() const
{
    Matrix out(reduced.rows(), reduced.cols());
    for (Index k = 0; k < reduced.cols(); ++k)
        out.col(column_permutation[k]) = reduced.col(k);
    return out;
}

namespace {

double default_tol(const Matrix& a, std::optional<double> zero_tol)
{
    if (zero_tol) {
        if (!(*zero_tol > 0))
            throw Error(ErrorKind::InvalidArgument, "zero_tol must be positive");
        return *zero_tol;
    }
    return 1e-10 * a.cwiseAbs().maxCoeff();
}

} // namespace

Matrix orthonormal_row_basis(const Matrix& a, std::optional<double> zero_tol)
{
    require_finite(a, "matrix");
    const double tol = default_tol(a, zero_tol);
    if (a.size() == 0 || a.cwiseAbs().maxCoeff() == 0.0)
        return Matrix(0, a.cols());

    Eigen::JacobiSVD<Matrix> dec(a, Eigen::ComputeThinV);
    const Vector& s = dec.singularValues();
    Index rank = 0;
    while (rank < s.size() && s(rank) > tol)
        ++rank;
    return dec.matrixV().leftCols(rank).transpose();
}

RrefResult rref_real(const Matrix& a, std::optional<double> zero_tol)
{
    const Index rows = a.rows();
    const Index cols = a.cols();
    const Matrix basis = orthonormal_row_basis(a, zero_tol);
    const Index rank = basis.rows();

    RrefResult out;
    out.reduced = Matrix::Zero(rows, cols);

    // Column selection by pivoted Gram-Schmidt on the columns of the basis.
    // Column norms of an orthonormal row basis depend only on the row space.
    Matrix work = basis;
    std::vector<bool> used(static_cast<std::size_t>(cols), false);
    for (Index k = 0; k < rank; ++k) {
        Vector norms = work.colwise().norm().transpose();
        double largest = 0.0;
        for (Index j = 0; j < cols; ++j)
            if (!used[j])
                largest = std::max(largest, norms(j));
        Index pick = -1;
        for (Index j = 0; j < cols; ++j) {
            if (!used[j] && norms(j) >= kColumnPivotThreshold * largest) {
                pick = j;
                break;
            }
        }
        const Vector q = work.col(pick) / norms(pick);
        work -= q * (q.transpose() * work);
        used[pick] = true;
        out.pivot_columns.push_back(pick);
    }
    std::sort(out.pivot_columns.begin(), out.pivot_columns.end());

    // Gauss-Jordan on the pivot columns with partial row pivoting.
    Matrix m = basis;
    for (Index k = 0; k < rank; ++k) {
        const Index col = out.pivot_columns[k];
        Index best = k;
        for (Index r = k + 1; r < rank; ++r)
            if (std::abs(m(r, col)) > std::abs(m(best, col)))
                best = r;
        m.row(k).swap(m.row(best));
        m.row(k) /= m(k, col);
        for (Index r = 0; r < rank; ++r) {
            if (r != k && m(r, col) != 0.0)
                m.row(r) -= m(r, col) * m.row(k);
        }
    }
    for (Index k = 0; k < rank; ++k)
        for (Index r = 0; r < rank; ++r)
            m(r, out.pivot_columns[k]) = (r == k) ? 1.0 : 0.0;

    out.column_permutation = out.pivot_columns;
    for (Index j = 0; j < cols; ++j)
        if (!used[j])
            out.column_permutation.push_back(j);
    for (Index k = 0; k < cols; ++k)
        out.reduced.col(k).head(rank) = m.col(out.column_permutation[k]);
    return out;
}

Matrix least_squares(const Matrix& a, const Matrix& b)
{
    require_finite(a, "least_squares matrix");
    require_finite(b, "least_squares right-hand side");
    if (a.rows() != b.rows())
        throw Error(ErrorKind::InvalidArgument, "least_squares: row count mismatch");
    if (a.cols() == 0 || a.rows() < a.cols())
        throw Error(ErrorKind::RankDeficient, "least_squares: fewer rows than columns");

    Eigen::JacobiSVD<Matrix> dec(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector& s = dec.singularValues();
    if (!(s(s.size() - 1) >= 1e-10 * s(0)) || s(0) == 0.0)
        throw Error(ErrorKind::RankDeficient, "least_squares: matrix is rank deficient");
    return dec.solve(b);
}

} // namespace netid
