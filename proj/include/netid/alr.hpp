#pragma once

#include <optional>
#include <string>
#include <vector>

#include "netid/data.hpp"
#include "netid/linalg.hpp"

namespace netid {

enum class RankRule {
    RelativeThreshold, ///< smallest p with sigma_{p+1} / sigma_1 < threshold
    GapRatio,          ///< p maximizing sigma_p / sigma_{p+1}
};

struct AlrOptions {
    std::optional<Index> rank_override;
    double rel_threshold = 0.05;
    RankRule rule = RankRule::RelativeThreshold;
    /// Per-variable noise scales; rows are divided by them before the SVD.
    std::optional<Vector> weights;
};

struct SelectionRecord {
    std::string rule; ///< "relative-threshold", "gap-ratio" or "override"
    double threshold = 0.0;
};

/// PCA model of the approximate linear relationships a_r_hat * x ~ 0.
struct AlrModel {
    Vector singular_values; ///< of X / sqrt(d), length min(m, d)
    Index retained = 0;     ///< p
    Matrix a_r_hat;         ///< (m - p) x m, orthonormal rows
    SelectionRecord selection;
    std::vector<std::string> warnings;
};

/// Warnings about the shape of the data ("d < m: ...").
std::vector<std::string> data_warnings(const DataMatrix& data);

/// Relative size below which a singular value is treated as round-off. The
/// gap rule never retains such a component.
inline constexpr double kNumericalFloor = 1e-12;

/// Number of retained components for the given spectrum. Only computed
/// values are consulted, so with d < m the candidates stop at p = d - 1.
/// Throws RankSelectionFailed when no candidate satisfies the rule.
Index select_rank(const Vector& singular_values, Index variables, const AlrOptions& options);

AlrModel estimate_alr(const DataMatrix& data, const AlrOptions& options = {});

struct RegressionMatrix {
    Matrix r_hat;                  ///< x_D ~ r_hat * x_I
    std::vector<Index> dependent;  ///< ascending
    std::vector<Index> independent;
};

/// r_hat = -(A_D)^-1 A_I for the column partition of a_r_hat. Without an
/// explicit independent set the pivot columns of rref_real(a_r_hat) are the
/// dependent variables. Throws SingularPartition when cond(A_D) > 1e8.
RegressionMatrix regression_matrix(const AlrModel& model, const DataMatrix& data,
                                   std::optional<std::vector<Index>> independent = std::nullopt);

/// Largest principal angle between the row spaces of a and b, in degrees.
double subspace_angle(const Matrix& a, const Matrix& b);

/// || a_hat - a_hat P ||_F where P projects onto rowspace(a_true).
double projection_distance(const Matrix& a_hat, const Matrix& a_true);

} // namespace netid
