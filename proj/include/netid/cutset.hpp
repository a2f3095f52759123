#pragma once

#include <vector>

#include "netid/alr.hpp"
#include "netid/network.hpp"

namespace netid {

/// Fundamental cut-set estimate rounded to {-1, 0, +1}.
struct RoundedCutset {
    CutsetMatrix cutset;
    Matrix raw;               ///< RREF values before rounding, same column order
    double max_deviation = 0; ///< max |raw - rounded|
    Index worst_row = 0;
    Index worst_column = 0;   ///< column in cutset order
    std::vector<Index> column_map; ///< edge index of every column
};

/// Nearest of {-1, 0, +1}; |v| == 0.5 rounds to 0.
double round_ternary(double v);

/**
 * RREF of `constraints`, columns permuted so the pivots lead, entries
 * rounded to {-1, 0, +1}. Throws NotNetworkConsistent when any entry moved
 * by more than deviation_limit, RankDropAfterRounding if the rounded
 * matrix lost rank.
 */
RoundedCutset round_cutset(const Matrix& constraints, double deviation_limit = 0.3);

RoundedCutset extract_cutset(const AlrModel& model, double deviation_limit = 0.3);

} // namespace netid
