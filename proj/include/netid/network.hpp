#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "netid/gf2.hpp"
#include "netid/linalg.hpp"

namespace netid {

/// Reserved label of the implicit environment node in network files.
inline constexpr const char* kEnvironmentLabel = "ENV";

/**
 * Directed flow network in reduced form.
 *
 * incidence(i, k) is +1 when edge k enters node i and -1 when it leaves.
 * The environment row is implicit; a column with a single nonzero is a
 * dangling edge attached to it.
 */
struct FlowNetwork {
    std::vector<std::string> node_labels;
    std::vector<std::string> edge_labels;
    Matrix incidence;

    Index node_count() const { return incidence.rows(); }
    Index edge_count() const { return incidence.cols(); }

    /// incidence with the environment row (negated column sums) appended.
    Matrix closed_incidence() const;
    std::optional<Index> edge_index(const std::string& label) const;
};

struct Violation {
    std::string invariant; ///< "shape", "labels", "entry value", "empty column",
                           ///< "column degree", "column sign pattern",
                           ///< "connectivity" or "rank"
    std::optional<Index> row;
    std::optional<Index> column;
    std::string detail;
};

/// First violated FlowNetwork invariant, or nullopt when the network is valid.
std::optional<Violation> validate(const FlowNetwork& net);

/// Builds a network and throws Validation when it is not valid.
FlowNetwork make_network(std::vector<std::string> node_labels,
                         std::vector<std::string> edge_labels, Matrix incidence);

/// Node labels N1..Nn and edge labels x1..xm.
FlowNetwork make_network(Matrix incidence);

/// Fundamental cut-set matrix [I | C_c], columns ordered tree edges first.
struct CutsetMatrix {
    Matrix c_f;
    std::vector<Index> tree_edges;  ///< ascending edge indices
    std::vector<Index> chord_edges; ///< ascending edge indices

    Index rank() const { return c_f.rows(); }
    /// Edge index of every column of c_f.
    std::vector<Index> column_map() const;
    /// c_f with columns back in edge order.
    Matrix in_edge_order() const;
    /// The C_c block (rank x chords).
    Matrix chord_block() const { return c_f.rightCols(static_cast<Index>(chord_edges.size())); }
};

/// Fundamental circuit matrix [B_t | I_mu], columns in the cut-set's order.
struct CircuitMatrix {
    Matrix b_f;
    std::vector<Index> column_map;

    Index mu() const { return b_f.rows(); }
    Matrix in_edge_order() const;
};

CutsetMatrix cutset_of(const FlowNetwork& net);

/// B_f = [-C_c^T | I]. Throws Internal if C_f * B_f^T != 0 over GF(2).
CircuitMatrix circuits_from_cutsets(const CutsetMatrix& c);

/// True when C_f * B_f^T vanishes mod 2.
bool mod2_orthogonal(const CutsetMatrix& c, const CircuitMatrix& b);

/// GF(2) RREF of the unsigned incidence, zero rows dropped, with the
/// columns taken in the order of `edge_order` labels.
BinaryMatrix unsigned_cut_basis(const FlowNetwork& net,
                                const std::vector<std::string>& edge_order);

/// Cut-space equality with edges matched by label. Throws LabelMismatch
/// when the edge label sets differ.
bool two_isomorphic(const FlowNetwork& a, const FlowNetwork& b);

FlowNetwork parse_network(std::istream& in);
void format_network(std::ostream& out, const FlowNetwork& net);
void format_dot(std::ostream& out, const FlowNetwork& net);

FlowNetwork read_network(const std::filesystem::path& path);
void write_network(const FlowNetwork& net, const std::filesystem::path& path);
void write_dot(const FlowNetwork& net, const std::filesystem::path& path);

} // namespace netid
