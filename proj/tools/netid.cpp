// netid: identify flow-network topology from edge-flow measurements.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "netid/alr.hpp"
#include "netid/data.hpp"
#include "netid/error.hpp"
#include "netid/network.hpp"
#include "netid/pipeline.hpp"
#include "netid/synth.hpp"

namespace {

using namespace netid;

int code_for(const Error& e)
{
    switch (e.kind()) {
    case ErrorKind::Parse:
    case ErrorKind::Validation:
    case ErrorKind::InvalidArgument:
    case ErrorKind::NonFinite:
    case ErrorKind::LabelMismatch:
    case ErrorKind::InfeasibleShape:
    case ErrorKind::SingularPartition:
        return exit_code(Verdict::InvalidInput);
    default:
        return exit_code(verdict_for(e.kind(), "input"));
    }
}

void write_text(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
    out << text;
}

struct IdentifyArgs {
    std::string data;
    std::optional<Index> rank;
    double threshold = 0.05;
    bool gap_rule = false;
    double deviation_limit = 0.3;
    double coeff_limit = 0.3;
    std::string out, dot, report, ahat;
    bool timings = false;
};

int run_identify(const IdentifyArgs& args)
{
    IdentifyOptions options;
    options.alr.rank_override = args.rank;
    options.alr.rel_threshold = args.threshold;
    options.alr.rule = args.gap_rule ? RankRule::GapRatio : RankRule::RelativeThreshold;
    options.deviation_limit = args.deviation_limit;
    options.coeff_limit = args.coeff_limit;

    PipelineResult result;
    try {
        result = identify(read_csv(args.data), options);
    } catch (const Error& e) {
        result.report.verdict = verdict_for(e.kind(), "input");
        result.report.failed_stage = "input";
        result.report.error_kind = e.kind();
        result.report.message = e.what();
    }
    const auto& report = result.report;
    for (const auto& w : report.warnings)
        std::cerr << "warning: " << w << '\n';

    std::ostringstream text;
    write_report(text, report, args.timings);
    if (!args.report.empty())
        write_text(args.report, text.str());

    if (!result.ok()) {
        std::cerr << "netid: " << report.failed_stage << ": "
                  << (report.error_kind ? std::string(to_string(*report.error_kind)) : "error") << ": "
                  << report.message << '\n';
        if (args.report.empty())
            std::cout << text.str();
        return exit_code(report.verdict);
    }

    if (!args.ahat.empty() && report.alr) {
        LabelledMatrix m{result.network->edge_labels, report.alr->a_r_hat};
        write_labelled_matrix(m, args.ahat);
    }
    if (!args.dot.empty())
        write_dot(*result.network, args.dot);
    if (!args.out.empty())
        write_network(*result.network, args.out);
    if (args.report.empty())
        std::cout << text.str();
    if (args.out.empty()) {
        std::ostringstream net;
        format_network(net, *result.network);
        std::cout << (args.report.empty() ? "\n" : "") << net.str();
    }
    return 0;
}

int run_synth(const std::string& spec_path, const std::string& out,
              std::optional<std::uint64_t> seed, std::optional<Index> scenarios)
{
    GeneratorSpec spec = read_generator_spec(spec_path);
    if (seed)
        spec.seed = *seed;
    if (scenarios)
        spec.scenarios = *scenarios;
    const DataMatrix data = generate(spec);
    std::ostringstream text;
    format_csv(text, data);
    write_text(out, text.str());
    return 0;
}

int run_verify(const std::string& a_path, const std::string& b_path)
{
    const FlowNetwork a = read_network(a_path);
    const FlowNetwork b = read_network(b_path);
    if (two_isomorphic(a, b)) {
        std::cout << "2-isomorphic\n";
        return 0;
    }
    std::cout << "not 2-isomorphic\n";
    std::vector<std::string> order = a.edge_labels;
    std::cout << "edges: ";
    for (const auto& l : order)
        std::cout << l << ' ';
    std::cout << "\n" << a_path << ":\n" << unsigned_cut_basis(a, order).to_string();
    std::cout << b_path << ":\n" << unsigned_cut_basis(b, order).to_string();
    return 1;
}

int run_metrics(const std::string& ahat_path, const std::string& net_path)
{
    const LabelledMatrix ahat = read_labelled_matrix(ahat_path);
    const FlowNetwork net = read_network(net_path);
    if (static_cast<Index>(ahat.column_labels.size()) != net.edge_count())
        throw Error(ErrorKind::LabelMismatch, "a_hat and network have different edge counts");
    Matrix reordered(ahat.values.rows(), net.edge_count());
    for (std::size_t c = 0; c < ahat.column_labels.size(); ++c) {
        const auto k = net.edge_index(ahat.column_labels[c]);
        if (!k)
            throw Error(ErrorKind::LabelMismatch, "edge " + ahat.column_labels[c] + " not in network");
        reordered.col(*k) = ahat.values.col(static_cast<Index>(c));
    }
    std::cout.precision(17);
    std::cout << "subspace_angle_deg=" << subspace_angle(reordered, net.incidence) << '\n';
    std::cout << "projection_distance=" << projection_distance(reordered, net.incidence) << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Flow-network topology identification from steady-state edge flows"};
    app.require_subcommand(1);

    IdentifyArgs id;
    auto* identify_cmd = app.add_subcommand("identify", "Reconstruct a network from a data CSV");
    identify_cmd->add_option("data", id.data, "m x d data CSV")->required();
    identify_cmd->add_option("--rank", id.rank, "Number of retained components p");
    identify_cmd->add_option("--threshold", id.threshold, "Relative singular value threshold");
    identify_cmd->add_flag("--gap-rule", id.gap_rule, "Pick p at the largest singular value ratio");
    identify_cmd->add_option("--deviation-limit", id.deviation_limit, "Max rounding deviation");
    identify_cmd->add_option("--coeff-limit", id.coeff_limit, "Max regression coefficient deviation");
    identify_cmd->add_option("--out", id.out, "Network file (default stdout)");
    identify_cmd->add_option("--dot", id.dot, "Graphviz output");
    identify_cmd->add_option("--report", id.report, "Report file (default stdout)");
    identify_cmd->add_option("--ahat", id.ahat, "Write the estimated constraint matrix");
    identify_cmd->add_flag("--timings", id.timings, "Add stage timings to the report");

    std::string spec_path, synth_out = "-";
    std::optional<std::uint64_t> synth_seed;
    std::optional<Index> synth_scenarios;
    auto* synth_cmd = app.add_subcommand("synth", "Generate data from a generator spec");
    synth_cmd->add_option("spec", spec_path, "INI generator spec")->required();
    synth_cmd->add_option("--out", synth_out, "Data CSV (default stdout)");
    synth_cmd->add_option("--seed", synth_seed, "Override the spec seed");
    synth_cmd->add_option("--scenarios", synth_scenarios, "Override the scenario count");

    std::string net_a, net_b;
    auto* verify_cmd = app.add_subcommand("verify", "Check two networks for 2-isomorphism");
    verify_cmd->add_option("a", net_a)->required();
    verify_cmd->add_option("b", net_b)->required();

    std::string ahat_path, metrics_net;
    auto* metrics_cmd = app.add_subcommand("metrics", "Subspace angle and projection distance");
    metrics_cmd->add_option("ahat", ahat_path, "Labelled constraint matrix CSV")->required();
    metrics_cmd->add_option("network", metrics_net)->required();

    Index nodes = 0, edges = 0, dangling = 1;
    std::uint64_t random_seed = 0;
    std::string random_out = "-";
    auto* random_cmd = app.add_subcommand("random", "Write a random valid network");
    random_cmd->add_option("--nodes", nodes)->required();
    random_cmd->add_option("--edges", edges)->required();
    random_cmd->add_option("--dangling", dangling);
    random_cmd->add_option("--seed", random_seed);
    random_cmd->add_option("--out", random_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : exit_code(Verdict::InvalidInput);
    }

    try {
        if (identify_cmd->parsed())
            return run_identify(id);
        if (synth_cmd->parsed())
            return run_synth(spec_path, synth_out, synth_seed, synth_scenarios);
        if (verify_cmd->parsed())
            return run_verify(net_a, net_b);
        if (metrics_cmd->parsed())
            return run_metrics(ahat_path, metrics_net);
        if (random_cmd->parsed()) {
            std::ostringstream text;
            format_network(text, random_network(nodes, edges, dangling, random_seed));
            write_text(random_out, text.str());
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "netid: " << to_string(e.kind()) << ": " << e.what() << '\n';
        return code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "netid: " << e.what() << '\n';
        return exit_code(Verdict::Internal);
    }
    return exit_code(Verdict::Internal);
}
