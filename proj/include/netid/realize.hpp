#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "netid/gf2.hpp"

namespace netid {

/// One GF(2) row operation: row[target] += row[source], or a row swap.
struct RowOperation {
    enum class Kind { Add, Swap };
    Kind kind = Kind::Add;
    std::size_t target = 0;
    std::size_t source = 0;

    friend bool operator==(const RowOperation&, const RowOperation&) = default;
};

/// Binary incidence pattern (at most two ones per column) with the row
/// operations that produce it from the cut-set input.
struct UndirectedIncidence {
    BinaryMatrix pattern;
    std::vector<RowOperation> provenance;
    std::string method;            ///< "identity", "greedy" or "tree-search"
    std::uint64_t search_nodes = 0;
};

struct RealizeOptions {
    bool greedy = true;
    /// Inputs with at most this many rows are searched exhaustively.
    std::size_t exhaustive_rows = 15;
    /// Node budget for larger inputs; running out raises Inconclusive.
    std::uint64_t search_budget = 20'000'000;
};

/// Applies ops in order to a copy of input.
BinaryMatrix replay(const BinaryMatrix& input, std::span<const RowOperation> ops);

/// Every column has at most two ones.
bool is_incidence_pattern(const BinaryMatrix& a);

/**
 * Finds an invertible T over GF(2) such that T * c_u has at most two ones
 * per column, i.e. a graph whose cut space is the row space of c_u.
 *
 * A greedy pass adds the single row pair that most reduces the column
 * excess over two until none helps. If that stalls, an exact search grows a
 * spanning tree of the closed graph on the pivot edges of rref(c_u), one
 * edge at a time in canonical order, rejecting any placement where a
 * chord's fundamental tree-edge set stops being a path. Independent blocks
 * (tree edges sharing no chord) are searched separately and joined at one
 * vertex.
 *
 * Throws InputRankDeficient when c_u lacks full row rank, NotGraphic when
 * the search is exhausted, Inconclusive when the budget runs out.
 */
UndirectedIncidence realize_cutset(const BinaryMatrix& c_u, const RealizeOptions& options = {});

/// True iff realize_cutset succeeds; Inconclusive is rethrown.
bool is_graphic(const BinaryMatrix& c_u, const RealizeOptions& options = {});

} // namespace netid
