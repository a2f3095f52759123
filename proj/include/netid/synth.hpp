#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <random>
#include <vector>

#include "netid/data.hpp"
#include "netid/network.hpp"

namespace netid {

/// Per-variable measurement error standard deviations (diagonal covariance).
struct NoiseModel {
    Vector sde;
};

struct GeneratorSpec {
    FlowNetwork network;
    std::vector<Index> independent_edges; ///< chords; m - n of them
    Vector base_values;                   ///< per independent edge
    Vector fluctuation_sd;                ///< per independent edge
    NoiseModel noise;                     ///< per edge, in edge order
    Index scenarios = 1;
    std::uint64_t seed = 0;
    /// Explicit independent flows (|I| x d). Replaces the base/SDF draws
    /// but noise is still drawn.
    std::optional<Matrix> independent_values;
};

/// Throws Validation / InvalidArgument on malformed specs and
/// SingularPartition when the dependent block of the incidence is singular.
void validate(const GeneratorSpec& spec);

/**
 * Draws d scenarios. Scenario j uses its own mt19937_64 seeded from
 * (seed, j), drawing every independent flow in edge order and then one
 * error per variable in edge order. Normals come from the cosine branch of
 * Box-Muller on two 53-bit uniforms in (0, 1], so output is identical on
 * every platform and for every thread count.
 *
 * Dependent flows are x_D = R x_I with R = -A_D^-1 A_I, which is integral
 * for an incidence matrix and is rounded to make it exact.
 */
DataMatrix generate(const GeneratorSpec& spec);

/// Single-threaded reference for generate; bit-identical output.
DataMatrix generate_serial(const GeneratorSpec& spec);

/// Integer matrix R with x_D = R x_I for the spec's partition.
Matrix dependency_matrix(const FlowNetwork& net, const std::vector<Index>& independent);

/// Chords of the network's fundamental cut-set (a valid independent set).
std::vector<Index> default_independent_edges(const FlowNetwork& net);

/**
 * Random valid network with n nodes, m edges of which `dangling` touch the
 * environment. A random spanning tree of the closed graph is built first,
 * then the remaining environment edges and distinct internal node pairs are
 * added, every edge gets a random direction and edges are shuffled.
 * Internal pairs are never repeated; environment edges may be (needed
 * whenever dangling > n).
 *
 * Throws InfeasibleShape when dangling < 1, dangling > m, m < n or
 * m - dangling > n(n-1)/2.
 */
FlowNetwork random_network(Index n, Index m, Index dangling, std::uint64_t seed);

/// Engine for scenario j of a run seeded with `seed`.
std::mt19937_64 scenario_engine(std::uint64_t seed, std::uint64_t j);

/// Standard normal from two 53-bit uniforms.
double standard_normal(std::mt19937_64& rng);

/// Uniform integer in [0, bound).
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

/**
 * INI generator spec:
 *
 *     network = four_node.net      ; relative to the spec file
 *     scenarios = 1000
 *     seed = 42
 *     [x1]
 *     base = 10
 *     sdf = 1
 *     sde = 0.1
 *     values = 1 2 3 ...      ; optional explicit flows, one per scenario
 *
 * Edges with a `base` key are independent. Missing `sde` means 0.
 */
GeneratorSpec parse_generator_spec(std::istream& in, const std::filesystem::path& base_dir);
GeneratorSpec read_generator_spec(const std::filesystem::path& path);

} // namespace netid
