#pragma once

#include <vector>

#include "netid/data.hpp"
#include "netid/gf2.hpp"
#include "netid/network.hpp"

namespace netid {

struct OrientationResult {
    FlowNetwork network;
    /// Rows whose overall sign was fixed by convention rather than by data:
    /// the first row of each sign component and every single-edge row that
    /// stayed unlinked.
    std::vector<Index> row_sign_choices;
    std::vector<double> regression_residuals;   ///< RMS per row, 0 for single-edge rows
    std::vector<double> coefficient_deviations; ///< max ||beta| - 1| per row
};

/**
 * Assigns signs to an undirected incidence pattern from the data.
 *
 * In every row the lowest edge of the support is regressed on the others;
 * coefficients near -1 give same-direction entries, near +1 opposite ones.
 * Rows are then flipped so that every edge shared by two rows enters one
 * and leaves the other.
 *
 * Throws CoefficientNotUnit when a coefficient is further than coeff_limit
 * from +-1, SignConflict when the row flips cannot be made consistent, and
 * Validation when the result is not a valid network.
 */
OrientationResult orient(const BinaryMatrix& pattern, const DataMatrix& data,
                         double coeff_limit = 0.3);

} // namespace netid
