#include "netid/alr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "netid/error.hpp"
#include "netid/kernels.hpp"

namespace netid {

namespace {

double sigma(const Vector& s, Index k)
{
    return s(k);
}

std::string describe(const Vector& s)
{
    std::ostringstream os;
    for (Index k = 0; k < s.size(); ++k)
        os << (k ? " " : "") << s(k);
    return os.str();
}

} // namespace

Index select_rank(const Vector& singular_values, Index variables, const AlrOptions& options)
{
    const Index m = variables;
    if (options.rank_override) {
        const Index p = *options.rank_override;
        if (p < 1 || p > m - 1)
            throw Error(ErrorKind::InvalidArgument, "rank override must lie in [1, m-1]");
        return p;
    }
    const double s1 = sigma(singular_values, 0);
    if (!(s1 > 0.0))
        throw Error(ErrorKind::DegenerateData, "largest singular value is zero");

    // sigma_{p+1} has to be one of the computed values.
    const Index last = std::min<Index>(m - 1, singular_values.size() - 1);
    if (options.rule == RankRule::RelativeThreshold) {
        for (Index p = 1; p <= last; ++p)
            if (sigma(singular_values, p) / s1 < options.rel_threshold)
                return p;
    } else {
        Index best = 0;
        double best_ratio = 0.0;
        for (Index p = 1; p <= last; ++p) {
            if (sigma(singular_values, p - 1) <= kNumericalFloor * s1)
                break;
            const double next = sigma(singular_values, p);
            const double ratio = next > 0.0 ? sigma(singular_values, p - 1) / next
                                            : std::numeric_limits<double>::infinity();
            if (ratio > best_ratio) {
                best_ratio = ratio;
                best = p;
            }
        }
        if (best > 0 && best_ratio > 1.0)
            return best;
    }
    throw Error(ErrorKind::RankSelectionFailed,
                "no retained rank in [1, min(m, d) - 1] satisfies the selection rule; singular values: " +
                    describe(singular_values));
}

std::vector<std::string> data_warnings(const DataMatrix& data)
{
    std::vector<std::string> out;
    const Index m = data.variables();
    const Index d = data.scenarios();
    if (d < m) {
        std::ostringstream os;
        os << "d < m: " << d << " scenarios for " << m
           << " variables; at least as many scenarios as nodes are needed";
        out.push_back(os.str());
    }
    return out;
}

AlrModel estimate_alr(const DataMatrix& data, const AlrOptions& options)
{
    validate(data);
    const Index m = data.variables();
    const Index d = data.scenarios();

    Matrix scaled = data.values / std::sqrt(static_cast<double>(d));
    if (options.weights) {
        const Vector& w = *options.weights;
        if (w.size() != m || !w.allFinite() || (w.array() <= 0.0).any())
            throw Error(ErrorKind::InvalidArgument, "weights must be m positive finite values");
        scaled = w.cwiseInverse().asDiagonal() * scaled;
    }

    AlrModel model;
    model.warnings = data_warnings(data);

    const SvdResult dec = d >= m ? kernels::left_svd(scaled) : svd(scaled);
    model.singular_values = dec.singular_values;
    if (!(model.singular_values(0) > 0.0))
        throw Error(ErrorKind::DegenerateData, "data matrix is identically zero");

    model.retained = select_rank(model.singular_values, m, options);
    if (options.rank_override)
        model.selection = {"override", 0.0};
    else if (options.rule == RankRule::RelativeThreshold)
        model.selection = {"relative-threshold", options.rel_threshold};
    else
        model.selection = {"gap-ratio", 0.0};

    model.a_r_hat = dec.left_vectors.rightCols(m - model.retained).transpose();
    if (options.weights) {
        // Constraints on the scaled rows, mapped back to the original variables.
        const Matrix mapped = model.a_r_hat * options.weights->cwiseInverse().asDiagonal();
        model.a_r_hat = orthonormal_row_basis(mapped);
    }
    return model;
}

RegressionMatrix regression_matrix(const AlrModel& model, const DataMatrix& data,
                                   std::optional<std::vector<Index>> independent)
{
    const Matrix& a = model.a_r_hat;
    const Index m = a.cols();
    if (data.variables() != m)
        throw Error(ErrorKind::InvalidArgument, "model and data disagree on the variable count");

    RegressionMatrix out;
    std::vector<bool> is_independent(static_cast<std::size_t>(m), false);
    if (independent) {
        if (static_cast<Index>(independent->size()) != model.retained)
            throw Error(ErrorKind::InvalidArgument, "independent set must have p entries");
        for (Index k : *independent) {
            if (k < 0 || k >= m || is_independent[k])
                throw Error(ErrorKind::InvalidArgument, "bad independent variable index");
            is_independent[k] = true;
        }
        out.independent = *independent;
    } else {
        const RrefResult rref = rref_real(a);
        std::fill(is_independent.begin(), is_independent.end(), true);
        for (Index k : rref.pivot_columns)
            is_independent[k] = false;
        for (Index k = 0; k < m; ++k)
            if (is_independent[k])
                out.independent.push_back(k);
    }
    for (Index k = 0; k < m; ++k)
        if (!is_independent[k])
            out.dependent.push_back(k);

    const Index nd = static_cast<Index>(out.dependent.size());
    const Index ni = static_cast<Index>(out.independent.size());
    if (nd != a.rows())
        throw Error(ErrorKind::SingularPartition, "dependent block is not square");
    Matrix a_d(a.rows(), nd);
    Matrix a_i(a.rows(), ni);
    for (Index k = 0; k < nd; ++k)
        a_d.col(k) = a.col(out.dependent[k]);
    for (Index k = 0; k < ni; ++k)
        a_i.col(k) = a.col(out.independent[k]);

    const Vector s = Eigen::JacobiSVD<Matrix>(a_d).singularValues();
    const double smin = s(s.size() - 1);
    if (!(smin > 0.0) || s(0) / smin > 1e8)
        throw Error(ErrorKind::SingularPartition,
                    "dependent block is singular or ill-conditioned for this partition");
    out.r_hat = -a_d.partialPivLu().solve(a_i);
    return out;
}

double subspace_angle(const Matrix& a, const Matrix& b)
{
    Matrix qa = orthonormal_row_basis(a);
    Matrix qb = orthonormal_row_basis(b);
    if (qa.rows() != a.rows() || qb.rows() != b.rows())
        throw Error(ErrorKind::RankDeficient, "subspace_angle needs full row rank inputs");
    if (qa.rows() > qb.rows())
        std::swap(qa, qb);
    const Matrix residual = qa - (qa * qb.transpose()) * qb;
    const double s = residual.rows() == 0
                         ? 0.0
                         : Eigen::JacobiSVD<Matrix>(residual).singularValues()(0);
    return std::asin(std::clamp(s, 0.0, 1.0)) * 180.0 / std::numbers::pi;
}

double projection_distance(const Matrix& a_hat, const Matrix& a_true)
{
    const Matrix q = orthonormal_row_basis(a_true);
    if (q.rows() != a_true.rows())
        throw Error(ErrorKind::RankDeficient, "projection_distance needs a full row rank reference");
    if (a_hat.cols() != a_true.cols())
        throw Error(ErrorKind::InvalidArgument, "column counts differ");
    return (a_hat - (a_hat * q.transpose()) * q).norm();
}

} // namespace netid
