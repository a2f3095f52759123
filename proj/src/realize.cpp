#include "netid/realize.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <tuple>

#include "netid/error.hpp"

namespace netid {

BinaryMatrix replay(const BinaryMatrix& input, std::span<const RowOperation> ops)
{
    BinaryMatrix out = input;
    for (const auto& op : ops) {
        if (op.kind == RowOperation::Kind::Add)
            out.add_row(op.target, op.source);
        else
            out.swap_rows(op.target, op.source);
    }
    return out;
}

bool is_incidence_pattern(const BinaryMatrix& a)
{
    for (std::size_t c = 0; c < a.cols(); ++c)
        if (a.col_weight(c) > 2)
            return false;
    return true;
}

namespace {

struct Score {
    std::size_t excess = 0;
    std::size_t total = 0;
    auto operator<=>(const Score&) const = default;
};

Score score_of(const std::vector<std::size_t>& weights)
{
    Score s;
    for (std::size_t w : weights) {
        s.total += w;
        s.excess += w > 2 ? w - 2 : 0;
    }
    return s;
}

std::optional<UndirectedIncidence> greedy_pass(const BinaryMatrix& c_u)
{
    BinaryMatrix cur = c_u;
    const std::size_t n = cur.rows();
    const std::size_t m = cur.cols();
    std::vector<std::size_t> weights(m);
    for (std::size_t c = 0; c < m; ++c)
        weights[c] = cur.col_weight(c);
    Score current = score_of(weights);
    std::vector<RowOperation> ops;

    while (current.excess > 0) {
        std::optional<std::pair<std::size_t, std::size_t>> best;
        Score best_score = current;
        for (std::size_t t = n; t-- > 0;) {
            for (std::size_t s = 0; s < n; ++s) {
                if (s == t)
                    continue;
                Score next = current;
                for (std::size_t c = 0; c < m; ++c) {
                    if (!cur.get(s, c))
                        continue;
                    const std::size_t w = weights[c];
                    const std::size_t w2 = cur.get(t, c) ? w - 1 : w + 1;
                    next.total = next.total - w + w2;
                    next.excess = next.excess - (w > 2 ? w - 2 : 0) + (w2 > 2 ? w2 - 2 : 0);
                }
                if (next < best_score) {
                    best_score = next;
                    best = std::make_pair(t, s);
                }
            }
        }
        if (!best)
            return std::nullopt;
        const auto [t, s] = *best;
        for (std::size_t c = 0; c < m; ++c)
            if (cur.get(s, c))
                weights[c] = cur.get(t, c) ? weights[c] - 1 : weights[c] + 1;
        cur.add_row(t, s);
        ops.push_back({RowOperation::Kind::Add, t, s});
        current = best_score;
    }
    return UndirectedIncidence{std::move(cur), std::move(ops), "greedy", 0};
}

/// Tree growth over one block of tree edges.
class TreeSearch {
public:
    /// paths[j] lists the local tree-edge indices of chord j.
    TreeSearch(std::size_t edges, std::vector<std::vector<std::size_t>> paths,
               std::uint64_t* nodes, std::optional<std::uint64_t> budget)
        : edges_(edges), paths_(std::move(paths)), nodes_(nodes), budget_(budget),
          attach_(edges, 0), created_(edges, 0), placed_(edges, false), min_vertex_(edges, 0),
          chords_of_(edges), seg_a_(paths_.size(), 0), seg_b_(paths_.size(), 0),
          count_(paths_.size(), 0)
    {
        for (std::size_t j = 0; j < paths_.size(); ++j)
            for (std::size_t e : paths_[j])
                chords_of_[e].push_back(j);
    }

    /// Endpoints (attach, created) of every local tree edge, or nullopt.
    std::optional<std::vector<std::pair<std::size_t, std::size_t>>> run()
    {
        place(0, 0);
        if (!grow(1))
            return std::nullopt;
        std::vector<std::pair<std::size_t, std::size_t>> ends(edges_);
        for (std::size_t e = 0; e < edges_; ++e)
            ends[e] = {attach_[e], created_[e]};
        return ends;
    }

private:
    void place(std::size_t e, std::size_t v)
    {
        attach_[e] = v;
        created_[e] = vertices_;
        placed_[e] = true;
        for (std::size_t j : chords_of_[e]) {
            if (count_[j] == 0) {
                seg_a_[j] = v;
                seg_b_[j] = vertices_;
            } else if (seg_a_[j] == v) {
                seg_a_[j] = vertices_;
            } else {
                seg_b_[j] = vertices_;
            }
            ++count_[j];
        }
        ++vertices_;
    }

    bool fits(std::size_t e, std::size_t v) const
    {
        for (std::size_t j : chords_of_[e])
            if (count_[j] != 0 && seg_a_[j] != v && seg_b_[j] != v)
                return false;
        return true;
    }

    bool extendable() const
    {
        for (std::size_t j = 0; j < paths_.size(); ++j) {
            if (count_[j] == 0 || count_[j] == paths_[j].size())
                continue;
            const std::size_t reach = std::max(seg_a_[j], seg_b_[j]);
            bool ok = false;
            for (std::size_t e : paths_[j]) {
                if (!placed_[e] && min_vertex_[e] <= reach) {
                    ok = true;
                    break;
                }
            }
            if (!ok)
                return false;
        }
        return true;
    }

    bool grow(std::size_t placed_total)
    {
        if (placed_total == edges_)
            return true;
        ++*nodes_;
        if (budget_ && *nodes_ > *budget_)
            throw Error(ErrorKind::Inconclusive, "graph realization search budget exhausted");

        for (std::size_t e = 0; e < edges_; ++e) {
            if (placed_[e])
                continue;
            for (std::size_t v = min_vertex_[e]; v < vertices_; ++v) {
                if (!fits(e, v))
                    continue;
                // Snapshot what place() and the canonical restriction touch.
                const auto saved_seg = snapshot(e);
                std::vector<std::size_t> saved_min(min_vertex_.begin(), min_vertex_.begin() + e);
                const std::size_t old_vertices = vertices_;

                place(e, v);
                for (std::size_t lower = 0; lower < e; ++lower)
                    if (!placed_[lower])
                        min_vertex_[lower] = std::max(min_vertex_[lower], old_vertices);

                if (extendable() && grow(placed_total + 1))
                    return true;

                std::copy(saved_min.begin(), saved_min.end(), min_vertex_.begin());
                restore(e, saved_seg);
                placed_[e] = false;
                vertices_ = old_vertices;
            }
        }
        return false;
    }

    std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> snapshot(std::size_t e) const
    {
        std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> s;
        for (std::size_t j : chords_of_[e])
            s.emplace_back(seg_a_[j], seg_b_[j], count_[j]);
        return s;
    }

    void restore(std::size_t e,
                 const std::vector<std::tuple<std::size_t, std::size_t, std::size_t>>& s)
    {
        for (std::size_t k = 0; k < chords_of_[e].size(); ++k)
            std::tie(seg_a_[chords_of_[e][k]], seg_b_[chords_of_[e][k]], count_[chords_of_[e][k]]) =
                s[k];
    }

    std::size_t edges_;
    std::vector<std::vector<std::size_t>> paths_;
    std::uint64_t* nodes_;
    std::optional<std::uint64_t> budget_;

    std::size_t vertices_ = 1;
    std::vector<std::size_t> attach_;
    std::vector<std::size_t> created_;
    std::vector<bool> placed_;
    std::vector<std::size_t> min_vertex_;
    std::vector<std::vector<std::size_t>> chords_of_;
    std::vector<std::size_t> seg_a_;
    std::vector<std::size_t> seg_b_;
    std::vector<std::size_t> count_;
};

/// Row operations turning the identity into t, in application order.
std::vector<RowOperation> operations_for(BinaryMatrix t)
{
    const std::size_t n = t.rows();
    std::vector<RowOperation> elimination;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pivot = c;
        while (!t.get(pivot, c))
            ++pivot;
        if (pivot != c) {
            t.swap_rows(c, pivot);
            elimination.push_back({RowOperation::Kind::Swap, c, pivot});
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r != c && t.get(r, c)) {
                t.add_row(r, c);
                elimination.push_back({RowOperation::Kind::Add, r, c});
            }
        }
    }
    std::reverse(elimination.begin(), elimination.end());
    return elimination;
}

UndirectedIncidence tree_search(const BinaryMatrix& c_u, const Gf2Rref& rr,
                                const RealizeOptions& options)
{
    const std::size_t n = c_u.rows();
    const std::size_t m = c_u.cols();
    std::vector<bool> is_pivot(m, false);
    for (std::size_t c : rr.pivot_columns)
        is_pivot[c] = true;

    std::vector<std::size_t> chords;
    std::vector<std::vector<std::size_t>> paths; // tree-edge indices 0..n-1 (rref rows)
    for (std::size_t c = 0; c < m; ++c) {
        if (is_pivot[c])
            continue;
        chords.push_back(c);
        std::vector<std::size_t> path;
        for (std::size_t k = 0; k < n; ++k)
            if (rr.reduced.get(k, c))
                path.push_back(k);
        paths.push_back(std::move(path));
    }

    // Blocks: tree edges linked through shared chords.
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& path : paths)
        for (std::size_t k = 1; k < path.size(); ++k)
            parent[find(path[k])] = find(path[0]);

    std::vector<std::pair<std::size_t, std::size_t>> ends(n); // global vertices
    std::vector<std::pair<std::size_t, std::size_t>> chord_ends(chords.size(), {0, 0});
    std::size_t next_vertex = 1;
    std::uint64_t nodes = 0;
    const std::optional<std::uint64_t> budget =
        n > options.exhaustive_rows ? std::optional<std::uint64_t>(options.search_budget)
                                    : std::nullopt;

    std::vector<bool> done(n, false);
    for (std::size_t root = 0; root < n; ++root) {
        if (done[find(root)])
            continue;
        done[find(root)] = true;
        std::vector<std::size_t> members;
        std::vector<std::size_t> local(n, 0);
        for (std::size_t k = 0; k < n; ++k) {
            if (find(k) == find(root)) {
                local[k] = members.size();
                members.push_back(k);
            }
        }
        std::vector<std::vector<std::size_t>> local_paths;
        std::vector<std::size_t> local_chords;
        for (std::size_t j = 0; j < paths.size(); ++j) {
            if (!paths[j].empty() && find(paths[j][0]) == find(root)) {
                std::vector<std::size_t> p;
                for (std::size_t k : paths[j])
                    p.push_back(local[k]);
                local_paths.push_back(std::move(p));
                local_chords.push_back(j);
            }
        }

        TreeSearch search(members.size(), local_paths, &nodes, budget);
        const auto found = search.run();
        if (!found)
            throw Error(ErrorKind::NotGraphic,
                        "cut-set matrix is not the cut space of any graph (exhaustive search)");

        // Local vertex 0 is shared by every block; the rest get fresh ids.
        std::vector<std::size_t> global(members.size() + 1, 0);
        for (std::size_t v = 1; v < global.size(); ++v)
            global[v] = next_vertex++;
        for (std::size_t i = 0; i < members.size(); ++i)
            ends[members[i]] = {global[(*found)[i].first], global[(*found)[i].second]};

        // A chord's path endpoints are the vertices of odd degree in its edge set.
        for (std::size_t lj = 0; lj < local_chords.size(); ++lj) {
            std::vector<std::size_t> degree(members.size() + 1, 0);
            for (std::size_t e : local_paths[lj]) {
                ++degree[(*found)[e].first];
                ++degree[(*found)[e].second];
            }
            std::vector<std::size_t> odd;
            for (std::size_t v = 0; v < degree.size(); ++v)
                if (degree[v] % 2 == 1)
                    odd.push_back(global[v]);
            chord_ends[local_chords[lj]] = {odd.at(0), odd.at(1)};
        }
    }

    // Vertex 0 is the environment; vertex v > 0 is reduced row v - 1.
    BinaryMatrix pattern(n, m);
    auto mark = [&](std::size_t v, std::size_t col) {
        if (v != 0)
            pattern.set(v - 1, col, !pattern.get(v - 1, col));
    };
    for (std::size_t k = 0; k < n; ++k) {
        mark(ends[k].first, rr.pivot_columns[k]);
        mark(ends[k].second, rr.pivot_columns[k]);
    }
    for (std::size_t j = 0; j < chords.size(); ++j) {
        if (chord_ends[j].first == chord_ends[j].second)
            continue;
        mark(chord_ends[j].first, chords[j]);
        mark(chord_ends[j].second, chords[j]);
    }

    const BinaryMatrix t = pattern.select_columns(rr.pivot_columns) * rr.transform;
    if (!(t * c_u == pattern))
        throw Error(ErrorKind::Internal, "realization does not span the input cut space");

    UndirectedIncidence out;
    out.pattern = std::move(pattern);
    out.provenance = operations_for(t);
    out.method = "tree-search";
    out.search_nodes = nodes;
    return out;
}

} // namespace

UndirectedIncidence realize_cutset(const BinaryMatrix& c_u, const RealizeOptions& options)
{
    if (c_u.rows() == 0)
        throw Error(ErrorKind::InputRankDeficient, "cut-set matrix has no rows");
    const Gf2Rref rr = rref_gf2(c_u);
    if (rr.rank() < c_u.rows())
        throw Error(ErrorKind::InputRankDeficient, "cut-set matrix is not of full row rank over GF(2)");

    if (is_incidence_pattern(c_u))
        return UndirectedIncidence{c_u, {}, "identity", 0};
    if (options.greedy)
        if (auto found = greedy_pass(c_u))
            return std::move(*found);
    return tree_search(c_u, rr, options);
}

bool is_graphic(const BinaryMatrix& c_u, const RealizeOptions& options)
{
    try {
        realize_cutset(c_u, options);
        return true;
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::NotGraphic)
            return false;
        throw;
    }
}

} // namespace netid
