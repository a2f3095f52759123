#include "netid/cutset.hpp"

#include <cmath>

#include "netid/error.hpp"

namespace netid {

double round_ternary(double v)
{
    if (std::abs(v) <= 0.5)
        return 0.0;
    return v > 0 ? 1.0 : -1.0;
}

RoundedCutset round_cutset(const Matrix& constraints, double deviation_limit)
{
    const RrefResult rref = rref_real(constraints);
    const Index rank = rref.rank();
    if (rank == 0)
        throw Error(ErrorKind::InputRankDeficient, "constraint matrix is zero");

    RoundedCutset out;
    out.raw = rref.reduced.topRows(rank);
    out.column_map = rref.column_permutation;
    out.cutset.tree_edges = rref.pivot_columns;
    out.cutset.chord_edges.assign(rref.column_permutation.begin() + rank,
                                  rref.column_permutation.end());
    out.cutset.c_f = out.raw.unaryExpr([](double v) { return round_ternary(v); });

    for (Index j = 0; j < out.raw.cols(); ++j) {
        for (Index i = 0; i < rank; ++i) {
            const double dev = std::abs(out.raw(i, j) - out.cutset.c_f(i, j));
            if (dev > out.max_deviation) {
                out.max_deviation = dev;
                out.worst_row = i;
                out.worst_column = j;
            }
        }
    }
    if (out.max_deviation > deviation_limit)
        throw NotNetworkConsistentError(out.max_deviation, out.worst_row,
                                        out.column_map[out.worst_column]);

    Eigen::FullPivLU<Matrix> lu(out.cutset.c_f);
    if (lu.rank() != rank)
        throw Error(ErrorKind::RankDropAfterRounding, "rounded cut-set matrix lost rank");
    return out;
}

RoundedCutset extract_cutset(const AlrModel& model, double deviation_limit)
{
    return round_cutset(model.a_r_hat, deviation_limit);
}

} // namespace netid
