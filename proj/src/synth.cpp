#include "netid/synth.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <Eigen/LU>

#include "netid/error.hpp"

namespace netid {

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

double unit_interval(std::mt19937_64& rng)
{
    return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

std::vector<Index> dependent_edges(Index m, const std::vector<Index>& independent)
{
    std::vector<bool> is_independent(static_cast<std::size_t>(m), false);
    for (Index k : independent)
        is_independent[static_cast<std::size_t>(k)] = true;
    std::vector<Index> dependent;
    for (Index k = 0; k < m; ++k)
        if (!is_independent[static_cast<std::size_t>(k)])
            dependent.push_back(k);
    return dependent;
}

void fill_scenario(const GeneratorSpec& spec, const Matrix& r, const std::vector<Index>& dependent,
                   Index j, Matrix& out)
{
    auto rng = scenario_engine(spec.seed, static_cast<std::uint64_t>(j));
    const Index q = static_cast<Index>(spec.independent_edges.size());
    Vector x_i(q);
    for (Index k = 0; k < q; ++k) {
        if (spec.independent_values)
            x_i(k) = (*spec.independent_values)(k, j);
        else
            x_i(k) = spec.base_values(k) + spec.fluctuation_sd(k) * standard_normal(rng);
    }
    const Vector x_d = r * x_i;
    for (Index k = 0; k < q; ++k)
        out(spec.independent_edges[static_cast<std::size_t>(k)], j) = x_i(k);
    for (std::size_t k = 0; k < dependent.size(); ++k)
        out(dependent[k], j) = x_d(static_cast<Index>(k));
    for (Index v = 0; v < out.rows(); ++v)
        out(v, j) += spec.noise.sde(v) * standard_normal(rng);
}

DataMatrix run(const GeneratorSpec& spec, bool parallel)
{
    validate(spec);
    const Matrix r = dependency_matrix(spec.network, spec.independent_edges);
    const auto dependent = dependent_edges(spec.network.edge_count(), spec.independent_edges);
    Matrix values(spec.network.edge_count(), spec.scenarios);
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (Index j = 0; j < spec.scenarios; ++j)
            fill_scenario(spec, r, dependent, j, values);
    } else {
        for (Index j = 0; j < spec.scenarios; ++j)
            fill_scenario(spec, r, dependent, j, values);
    }
    DataMatrix data;
    data.variable_labels = spec.network.edge_labels;
    for (Index j = 0; j < spec.scenarios; ++j)
        data.scenario_ids.push_back("s" + std::to_string(j + 1));
    data.values = std::move(values);
    return data;
}

} // namespace

std::mt19937_64 scenario_engine(std::uint64_t seed, std::uint64_t j)
{
    return std::mt19937_64(splitmix64(splitmix64(seed) ^ j));
}

double standard_normal(std::mt19937_64& rng)
{
    const double u1 = unit_interval(rng);
    const double u2 = unit_interval(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound)
{
    if (bound == 0)
        throw Error(ErrorKind::InvalidArgument, "uniform_below needs a positive bound");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

Matrix dependency_matrix(const FlowNetwork& net, const std::vector<Index>& independent)
{
    const Index n = net.node_count();
    const Index m = net.edge_count();
    if (static_cast<Index>(independent.size()) != m - n)
        throw Error(ErrorKind::InvalidArgument,
                    "expected " + std::to_string(m - n) + " independent edges, got " +
                        std::to_string(independent.size()));
    std::set<Index> seen;
    for (Index k : independent) {
        if (k < 0 || k >= m)
            throw Error(ErrorKind::InvalidArgument, "independent edge index out of range");
        if (!seen.insert(k).second)
            throw Error(ErrorKind::InvalidArgument, "independent edge listed twice");
    }
    const auto dependent = dependent_edges(m, independent);
    Matrix a_d(n, n);
    Matrix a_i(n, m - n);
    for (Index k = 0; k < n; ++k)
        a_d.col(k) = net.incidence.col(dependent[static_cast<std::size_t>(k)]);
    for (Index k = 0; k < m - n; ++k)
        a_i.col(k) = net.incidence.col(independent[static_cast<std::size_t>(k)]);
    Eigen::FullPivLU<Matrix> lu(a_d);
    if (lu.rank() < n)
        throw Error(ErrorKind::SingularPartition,
                    "incidence columns of the dependent edges are singular");
    Matrix r = -lu.solve(a_i);
    return r.array().round().matrix();
}

std::vector<Index> default_independent_edges(const FlowNetwork& net)
{
    return cutset_of(net).chord_edges;
}

void validate(const GeneratorSpec& spec)
{
    if (auto v = validate(spec.network))
        throw Error(ErrorKind::Validation, "generator network: " + v->invariant + ": " + v->detail);
    const Index m = spec.network.edge_count();
    const Index q = static_cast<Index>(spec.independent_edges.size());
    if (spec.scenarios < 1)
        throw Error(ErrorKind::InvalidArgument, "scenario count must be at least 1");
    if (spec.noise.sde.size() != m)
        throw Error(ErrorKind::InvalidArgument, "noise model needs one value per edge");
    if ((spec.noise.sde.array() < 0).any() || !spec.noise.sde.allFinite())
        throw Error(ErrorKind::InvalidArgument, "noise standard deviations must be finite and >= 0");
    if (spec.independent_values) {
        if (spec.independent_values->rows() != q || spec.independent_values->cols() != spec.scenarios)
            throw Error(ErrorKind::InvalidArgument, "explicit values must be |I| x scenarios");
        require_finite(*spec.independent_values, "explicit values");
    } else {
        if (spec.base_values.size() != q || spec.fluctuation_sd.size() != q)
            throw Error(ErrorKind::InvalidArgument, "need a base value and SDF per independent edge");
        require_finite(spec.base_values, "base values");
        if ((spec.fluctuation_sd.array() < 0).any() || !spec.fluctuation_sd.allFinite())
            throw Error(ErrorKind::InvalidArgument, "SDF must be finite and >= 0");
    }
    dependency_matrix(spec.network, spec.independent_edges);
}

DataMatrix generate(const GeneratorSpec& spec) { return run(spec, true); }

DataMatrix generate_serial(const GeneratorSpec& spec) { return run(spec, false); }

FlowNetwork random_network(Index n, Index m, Index dangling, std::uint64_t seed)
{
    auto infeasible = [&](const std::string& why) {
        return Error(ErrorKind::InfeasibleShape,
                     "no network with n=" + std::to_string(n) + " m=" + std::to_string(m) +
                         " dangling=" + std::to_string(dangling) + ": " + why);
    };
    if (n < 1)
        throw infeasible("need at least one node");
    if (m < n)
        throw infeasible("a connected closed graph on n+1 vertices needs at least n edges");
    if (dangling < 1)
        throw infeasible("at least one edge must reach the environment");
    if (dangling > m)
        throw infeasible("more dangling edges than edges");
    const Index internal = m - dangling;
    if (internal > n * (n - 1) / 2)
        throw infeasible("too many internal edges for distinct node pairs");

    std::mt19937_64 rng(splitmix64(seed));
    auto below = [&](Index bound) { return static_cast<Index>(uniform_below(rng, static_cast<std::uint64_t>(bound))); };
    auto shuffle = [&](auto& v) {
        for (std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[static_cast<std::size_t>(below(static_cast<Index>(i)))]);
    };

    // Environment degree inside the spanning tree.
    const Index k_min = std::max<Index>(1, n - internal);
    const Index k_max = std::min(dangling, n);
    const Index k = k_min + below(k_max - k_min + 1);

    std::vector<Index> order(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i)
        order[static_cast<std::size_t>(i)] = i;
    shuffle(order);

    std::vector<Index> positions;
    for (Index i = 1; i < n; ++i)
        positions.push_back(i);
    shuffle(positions);
    std::vector<bool> to_env(static_cast<std::size_t>(n), false);
    to_env[0] = true;
    for (Index i = 0; i < k - 1; ++i)
        to_env[static_cast<std::size_t>(positions[static_cast<std::size_t>(i)])] = true;

    constexpr Index env = -1;
    std::vector<std::pair<Index, Index>> edges;
    std::set<std::pair<Index, Index>> used;
    for (Index p = 0; p < n; ++p) {
        const Index node = order[static_cast<std::size_t>(p)];
        if (to_env[static_cast<std::size_t>(p)]) {
            edges.emplace_back(env, node);
        } else {
            const Index other = order[static_cast<std::size_t>(below(p))];
            edges.emplace_back(other, node);
            used.insert(std::minmax(other, node));
        }
    }
    for (Index e = k; e < dangling; ++e)
        edges.emplace_back(env, below(n));
    while (static_cast<Index>(edges.size()) < m) {
        const Index a = below(n);
        const Index b = below(n);
        if (a == b || used.count(std::minmax(a, b)))
            continue;
        used.insert(std::minmax(a, b));
        edges.emplace_back(a, b);
    }
    for (auto& e : edges)
        if (below(2) == 1)
            std::swap(e.first, e.second);
    shuffle(edges);

    Matrix a = Matrix::Zero(n, m);
    for (Index c = 0; c < m; ++c) {
        const auto [tail, head] = edges[static_cast<std::size_t>(c)];
        if (tail != env)
            a(tail, c) = -1.0;
        if (head != env)
            a(head, c) = 1.0;
    }
    return make_network(std::move(a));
}

GeneratorSpec parse_generator_spec(std::istream& in, const std::filesystem::path& base_dir)
{
    namespace pt = boost::property_tree;
    // Drop trailing "; ..." and "# ..." comments; read_ini only knows whole-line ones.
    std::ostringstream cleaned;
    for (std::string line; std::getline(in, line);) {
        for (std::size_t i = 1; i < line.size(); ++i)
            if ((line[i] == ';' || line[i] == '#') && std::isspace(static_cast<unsigned char>(line[i - 1]))) {
                line.erase(i);
                break;
            }
        cleaned << line << '\n';
    }
    std::istringstream stripped(cleaned.str());

    pt::ptree tree;
    try {
        pt::read_ini(stripped, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ParseError(e.line(), e.message());
    }

    auto number = [](const pt::ptree& node, const std::string& key) -> std::optional<double> {
        const auto text = node.get_optional<std::string>(key);
        if (!text)
            return std::nullopt;
        std::istringstream s(*text);
        double v = 0;
        std::string rest;
        if (!(s >> v) || (s >> rest))
            throw ParseError(0, "key '" + key + "' is not a number: " + *text);
        return v;
    };

    GeneratorSpec spec;
    const auto net_path = tree.get_optional<std::string>("network");
    if (!net_path)
        throw ParseError(0, "generator spec has no 'network' key");
    std::filesystem::path p(*net_path);
    spec.network = read_network(p.is_absolute() ? p : base_dir / p);

    const auto scenarios = number(tree, "scenarios");
    if (!scenarios || *scenarios < 1 || *scenarios != std::floor(*scenarios))
        throw ParseError(0, "'scenarios' must be a positive integer");
    spec.scenarios = static_cast<Index>(*scenarios);
    if (const auto seed = tree.get_optional<std::string>("seed")) {
        try {
            std::size_t used = 0;
            spec.seed = std::stoull(*seed, &used);
            if (used != seed->size())
                throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw ParseError(0, "'seed' must be a non-negative integer: " + *seed);
        }
    }

    const Index m = spec.network.edge_count();
    spec.noise.sde = Vector::Zero(m);
    std::vector<double> bases, sdfs;
    std::vector<std::vector<double>> explicit_values;
    for (const auto& [name, section] : tree) {
        if (section.empty())
            continue;
        const auto edge = spec.network.edge_index(name);
        if (!edge)
            throw ParseError(0, "section [" + name + "] names no edge of the network");
        if (const auto sde = number(section, "sde"))
            spec.noise.sde(*edge) = *sde;
        const auto base = number(section, "base");
        if (!base) {
            if (section.get_optional<std::string>("sdf") || section.get_optional<std::string>("values"))
                throw ParseError(0, "section [" + name + "] has sdf/values but no base");
            continue;
        }
        spec.independent_edges.push_back(*edge);
        bases.push_back(*base);
        sdfs.push_back(number(section, "sdf").value_or(0.0));
        if (const auto values = section.get_optional<std::string>("values")) {
            std::string text = *values;
            std::replace(text.begin(), text.end(), ',', ' ');
            std::istringstream s(text);
            std::vector<double> row;
            std::string token;
            while (s >> token) {
                char* end = nullptr;
                const double v = std::strtod(token.c_str(), &end);
                if (*end != '\0')
                    throw ParseError(0, "bad value '" + token + "' in [" + name + "]");
                row.push_back(v);
            }
            explicit_values.push_back(std::move(row));
        }
    }

    const std::size_t q = spec.independent_edges.size();
    std::vector<std::size_t> order(q);
    for (std::size_t i = 0; i < q; ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return spec.independent_edges[a] < spec.independent_edges[b];
    });
    std::vector<Index> sorted_edges(q);
    spec.base_values.resize(static_cast<Index>(q));
    spec.fluctuation_sd.resize(static_cast<Index>(q));
    for (std::size_t i = 0; i < q; ++i) {
        sorted_edges[i] = spec.independent_edges[order[i]];
        spec.base_values(static_cast<Index>(i)) = bases[order[i]];
        spec.fluctuation_sd(static_cast<Index>(i)) = sdfs[order[i]];
    }
    spec.independent_edges = std::move(sorted_edges);

    if (!explicit_values.empty()) {
        if (explicit_values.size() != q)
            throw ParseError(0, "either every independent edge or none has 'values'");
        Matrix values(static_cast<Index>(q), spec.scenarios);
        for (std::size_t i = 0; i < q; ++i) {
            const auto& row = explicit_values[order[i]];
            if (static_cast<Index>(row.size()) != spec.scenarios)
                throw ParseError(0, "'values' needs exactly " + std::to_string(spec.scenarios) +
                                        " entries");
            for (Index j = 0; j < spec.scenarios; ++j)
                values(static_cast<Index>(i), j) = row[static_cast<std::size_t>(j)];
        }
        spec.independent_values = std::move(values);
    }
    validate(spec);
    return spec;
}

GeneratorSpec read_generator_spec(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError(0, "cannot open " + path.string());
    return parse_generator_spec(in, path.parent_path());
}

} // namespace netid
