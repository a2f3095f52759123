#include "netid/network.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include "netid/error.hpp"

namespace netid {

Matrix FlowNetwork::closed_incidence() const
{
    Matrix closed(incidence.rows() + 1, incidence.cols());
    closed.topRows(incidence.rows()) = incidence;
    closed.row(incidence.rows()) = -incidence.colwise().sum();
    return closed;
}

std::optional<Index> FlowNetwork::edge_index(const std::string& label) const
{
    const auto it = std::find(edge_labels.begin(), edge_labels.end(), label);
    if (it == edge_labels.end())
        return std::nullopt;
    return static_cast<Index>(it - edge_labels.begin());
}

namespace {

struct DisjointSets {
    explicit DisjointSets(Index n) : parent(static_cast<std::size_t>(n))
    {
        std::iota(parent.begin(), parent.end(), Index{0});
    }
    Index find(Index x)
    {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(Index a, Index b) { parent[find(a)] = find(b); }

    std::vector<Index> parent;
};

Violation violation(std::string invariant, std::optional<Index> row, std::optional<Index> column,
                    std::string detail)
{
    return Violation{std::move(invariant), row, column, std::move(detail)};
}

} // namespace

std::optional<Violation> validate(const FlowNetwork& net)
{
    const Index n = net.incidence.rows();
    const Index m = net.incidence.cols();
    if (n < 1 || m < 1)
        return violation("shape", std::nullopt, std::nullopt, "incidence must be at least 1x1");
    if (static_cast<Index>(net.node_labels.size()) != n ||
        static_cast<Index>(net.edge_labels.size()) != m)
        return violation("shape", std::nullopt, std::nullopt,
                         "label counts do not match the incidence shape");

    std::set<std::string> seen;
    for (Index i = 0; i < n; ++i) {
        const auto& label = net.node_labels[i];
        if (label.empty() || label == kEnvironmentLabel || !seen.insert(label).second)
            return violation("labels", i, std::nullopt, "bad or duplicate node label '" + label + "'");
    }
    seen.clear();
    for (Index k = 0; k < m; ++k) {
        const auto& label = net.edge_labels[k];
        if (label.empty() || !seen.insert(label).second)
            return violation("labels", std::nullopt, k, "bad or duplicate edge label '" + label + "'");
    }

    for (Index k = 0; k < m; ++k) {
        for (Index i = 0; i < n; ++i) {
            const double v = net.incidence(i, k);
            if (v != 0.0 && v != 1.0 && v != -1.0)
                return violation("entry value", i, k, "entries must be -1, 0 or +1");
        }
    }

    DisjointSets sets(n + 1);
    for (Index k = 0; k < m; ++k) {
        std::vector<Index> rows;
        for (Index i = 0; i < n; ++i)
            if (net.incidence(i, k) != 0.0)
                rows.push_back(i);
        if (rows.empty())
            return violation("empty column", std::nullopt, k, "edge touches no node");
        if (rows.size() > 2)
            return violation("column degree", std::nullopt, k, "edge touches more than two nodes");
        if (rows.size() == 2) {
            if (net.incidence(rows[0], k) + net.incidence(rows[1], k) != 0.0)
                return violation("column sign pattern", rows[0], k,
                                 "two-node edge needs one +1 and one -1");
            sets.unite(rows[0], rows[1]);
        } else {
            sets.unite(rows[0], n);
        }
    }
    for (Index i = 0; i < n; ++i)
        if (sets.find(i) != sets.find(n))
            return violation("connectivity", i, std::nullopt,
                             "node is not connected to the environment in the closed graph");

    Eigen::FullPivLU<Matrix> lu(net.incidence);
    if (lu.rank() != n)
        return violation("rank", std::nullopt, std::nullopt, "incidence rank differs from node count");
    return std::nullopt;
}

FlowNetwork make_network(std::vector<std::string> node_labels,
                         std::vector<std::string> edge_labels, Matrix incidence)
{
    FlowNetwork net{std::move(node_labels), std::move(edge_labels), std::move(incidence)};
    if (auto v = validate(net))
        throw Error(ErrorKind::Validation, "invalid network: " + v->invariant + ": " + v->detail);
    return net;
}

FlowNetwork make_network(Matrix incidence)
{
    std::vector<std::string> nodes;
    std::vector<std::string> edges;
    for (Index i = 0; i < incidence.rows(); ++i)
        nodes.push_back("N" + std::to_string(i + 1));
    for (Index k = 0; k < incidence.cols(); ++k)
        edges.push_back("x" + std::to_string(k + 1));
    return make_network(std::move(nodes), std::move(edges), std::move(incidence));
}

std::vector<Index> CutsetMatrix::column_map() const
{
    std::vector<Index> map = tree_edges;
    map.insert(map.end(), chord_edges.begin(), chord_edges.end());
    return map;
}

Matrix CutsetMatrix::in_edge_order() const
{
    const auto map = column_map();
    Matrix out(c_f.rows(), c_f.cols());
    for (Index k = 0; k < c_f.cols(); ++k)
        out.col(map[k]) = c_f.col(k);
    return out;
}

Matrix CircuitMatrix::in_edge_order() const
{
    Matrix out(b_f.rows(), b_f.cols());
    for (Index k = 0; k < b_f.cols(); ++k)
        out.col(column_map[k]) = b_f.col(k);
    return out;
}

CutsetMatrix cutset_of(const FlowNetwork& net)
{
    if (auto v = validate(net))
        throw Error(ErrorKind::Validation, "cutset_of: invalid network: " + v->invariant);
    const RrefResult rref = rref_real(net.incidence);
    CutsetMatrix out;
    // RREF of a totally unimodular matrix is ternary; clear rounding noise.
    out.c_f = rref.reduced.topRows(rref.rank()).array().round().matrix();
    out.tree_edges = rref.pivot_columns;
    out.chord_edges.assign(rref.column_permutation.begin() + rref.rank(),
                           rref.column_permutation.end());
    return out;
}

CircuitMatrix circuits_from_cutsets(const CutsetMatrix& c)
{
    const Index tree = static_cast<Index>(c.tree_edges.size());
    const Index mu = static_cast<Index>(c.chord_edges.size());
    CircuitMatrix out;
    out.column_map = c.column_map();
    out.b_f = Matrix::Zero(mu, tree + mu);
    out.b_f.leftCols(tree) = -c.chord_block().transpose();
    out.b_f.rightCols(mu) = Matrix::Identity(mu, mu);
    if (!mod2_orthogonal(c, out))
        throw Error(ErrorKind::Internal, "C_f * B_f^T is not zero mod 2");
    return out;
}

bool mod2_orthogonal(const CutsetMatrix& c, const CircuitMatrix& b)
{
    const BinaryMatrix cf = BinaryMatrix::support_of(c.c_f);
    const BinaryMatrix bf = BinaryMatrix::support_of(b.b_f);
    const BinaryMatrix product = cf * bf.transpose();
    for (std::size_t r = 0; r < product.rows(); ++r)
        if (!product.row_is_zero(r))
            return false;
    return true;
}

BinaryMatrix unsigned_cut_basis(const FlowNetwork& net, const std::vector<std::string>& edge_order)
{
    std::vector<std::size_t> columns;
    columns.reserve(edge_order.size());
    for (const auto& label : edge_order) {
        const auto k = net.edge_index(label);
        if (!k)
            throw Error(ErrorKind::LabelMismatch, "edge '" + label + "' not in network");
        columns.push_back(static_cast<std::size_t>(*k));
    }
    const BinaryMatrix support = BinaryMatrix::support_of(net.incidence).select_columns(columns);
    const Gf2Rref rref = rref_gf2(support);
    return rref.reduced.top_rows(rref.rank());
}

bool two_isomorphic(const FlowNetwork& a, const FlowNetwork& b)
{
    const std::set<std::string> la(a.edge_labels.begin(), a.edge_labels.end());
    const std::set<std::string> lb(b.edge_labels.begin(), b.edge_labels.end());
    if (la != lb || a.edge_labels.size() != b.edge_labels.size())
        throw Error(ErrorKind::LabelMismatch, "networks have different edge label sets");
    return unsigned_cut_basis(a, a.edge_labels) == unsigned_cut_basis(b, a.edge_labels);
}

namespace {

std::vector<std::string> split_ws(const std::string& line)
{
    std::istringstream is(line);
    std::vector<std::string> tokens;
    for (std::string t; is >> t;)
        tokens.push_back(t);
    return tokens;
}

} // namespace

FlowNetwork parse_network(std::istream& in)
{
    struct EdgeLine {
        std::string label, tail, head;
        std::size_t line;
    };
    std::vector<EdgeLine> edges;
    std::vector<std::string> nodes;
    std::unordered_map<std::string, Index> node_row;
    std::set<std::string> edge_seen;

    auto add_node = [&](const std::string& label) {
        if (label == kEnvironmentLabel || node_row.count(label))
            return;
        node_row.emplace(label, static_cast<Index>(nodes.size()));
        nodes.push_back(label);
    };

    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos)
            continue;
        if (line[first] == '#') {
            if (line.compare(first, 2, "#!") == 0) {
                auto tokens = split_ws(line.substr(first + 2));
                if (tokens.empty() || tokens[0] != "nodes")
                    throw ParseError(number, "unknown directive");
                for (std::size_t t = 1; t < tokens.size(); ++t) {
                    if (tokens[t] == kEnvironmentLabel)
                        throw ParseError(number, "ENV cannot be declared as a node");
                    if (node_row.count(tokens[t]))
                        throw ParseError(number, "node '" + tokens[t] + "' declared twice");
                    add_node(tokens[t]);
                }
            }
            continue;
        }
        auto tokens = split_ws(line);
        if (tokens.size() != 3)
            throw ParseError(number, "expected 'edge_label tail_node head_node'");
        if (!edge_seen.insert(tokens[0]).second)
            throw ParseError(number, "duplicate edge label '" + tokens[0] + "'");
        if (tokens[1] == tokens[2])
            throw Error(ErrorKind::Validation,
                        "line " + std::to_string(number) + ": self loop on edge '" + tokens[0] + "'");
        edges.push_back({tokens[0], tokens[1], tokens[2], number});
    }
    if (edges.empty())
        throw ParseError(number, "network file has no edges");

    for (const auto& e : edges) {
        add_node(e.tail);
        add_node(e.head);
    }
    if (nodes.empty())
        throw Error(ErrorKind::Validation, "network has no nodes besides ENV");

    FlowNetwork net;
    net.node_labels = nodes;
    net.incidence = Matrix::Zero(static_cast<Index>(nodes.size()), static_cast<Index>(edges.size()));
    for (std::size_t k = 0; k < edges.size(); ++k) {
        net.edge_labels.push_back(edges[k].label);
        if (edges[k].tail != kEnvironmentLabel)
            net.incidence(node_row.at(edges[k].tail), static_cast<Index>(k)) = -1.0;
        if (edges[k].head != kEnvironmentLabel)
            net.incidence(node_row.at(edges[k].head), static_cast<Index>(k)) = 1.0;
    }
    if (auto v = validate(net))
        throw Error(ErrorKind::Validation, "invalid network: " + v->invariant + ": " + v->detail);
    return net;
}

namespace {

std::pair<std::string, std::string> endpoints(const FlowNetwork& net, Index k)
{
    std::string tail = kEnvironmentLabel;
    std::string head = kEnvironmentLabel;
    for (Index i = 0; i < net.node_count(); ++i) {
        if (net.incidence(i, k) > 0)
            head = net.node_labels[i];
        else if (net.incidence(i, k) < 0)
            tail = net.node_labels[i];
    }
    return {tail, head};
}

} // namespace

void format_network(std::ostream& out, const FlowNetwork& net)
{
    out << "# flow network: " << net.node_count() << " nodes, " << net.edge_count() << " edges\n";
    out << "#! nodes";
    for (const auto& label : net.node_labels)
        out << ' ' << label;
    out << '\n';
    for (Index k = 0; k < net.edge_count(); ++k) {
        const auto [tail, head] = endpoints(net, k);
        out << net.edge_labels[k] << ' ' << tail << ' ' << head << '\n';
    }
}

void format_dot(std::ostream& out, const FlowNetwork& net)
{
    bool dangling = false;
    for (Index k = 0; k < net.edge_count(); ++k)
        if ((net.incidence.col(k).array() != 0.0).count() == 1)
            dangling = true;

    out << "digraph flow_network {\n";
    if (dangling)
        out << "  \"" << kEnvironmentLabel << "\" [shape=box];\n";
    for (const auto& label : net.node_labels)
        out << "  \"" << label << "\";\n";
    for (Index k = 0; k < net.edge_count(); ++k) {
        const auto [tail, head] = endpoints(net, k);
        out << "  \"" << tail << "\" -> \"" << head << "\" [label=\"" << net.edge_labels[k]
            << "\"];\n";
    }
    out << "}\n";
}

FlowNetwork read_network(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError(0, "cannot open " + path.string());
    return parse_network(in);
}

void write_network(const FlowNetwork& net, const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out)
        throw Error(ErrorKind::InvalidArgument, "cannot write " + path.string());
    format_network(out, net);
}

void write_dot(const FlowNetwork& net, const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out)
        throw Error(ErrorKind::InvalidArgument, "cannot write " + path.string());
    format_dot(out, net);
}

} // namespace netid
