#include "netid/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

namespace netid {

std::string_view to_string(Verdict v)
{
    switch (v) {
    case Verdict::Identified: return "identified";
    case Verdict::InvalidInput: return "invalid-input";
    case Verdict::RankSelectionFailed: return "rank-selection-failed";
    case Verdict::NotNetworkConsistent: return "not-network-consistent";
    case Verdict::NotGraphic: return "not-graphic";
    case Verdict::SignConflict: return "sign-conflict";
    case Verdict::Internal: return "internal";
    }
    return "internal";
}

int exit_code(Verdict v)
{
    switch (v) {
    case Verdict::Identified: return 0;
    case Verdict::InvalidInput: return 10;
    case Verdict::RankSelectionFailed: return 20;
    case Verdict::NotNetworkConsistent: return 30;
    case Verdict::NotGraphic: return 40;
    case Verdict::SignConflict: return 50;
    case Verdict::Internal: return 60;
    }
    return 60;
}

Verdict verdict_for(ErrorKind kind, std::string_view stage)
{
    switch (kind) {
    case ErrorKind::Parse:
    case ErrorKind::NonFinite:
    case ErrorKind::InvalidArgument:
        return Verdict::InvalidInput;
    case ErrorKind::Validation:
        return stage == "input" ? Verdict::InvalidInput : Verdict::NotNetworkConsistent;
    case ErrorKind::RankSelectionFailed:
    case ErrorKind::DegenerateData:
        return Verdict::RankSelectionFailed;
    case ErrorKind::NotNetworkConsistent:
    case ErrorKind::RankDropAfterRounding:
    case ErrorKind::InputRankDeficient:
        return Verdict::NotNetworkConsistent;
    case ErrorKind::NotGraphic:
        return Verdict::NotGraphic;
    case ErrorKind::SignConflict:
    case ErrorKind::CoefficientNotUnit:
        return Verdict::SignConflict;
    default:
        return Verdict::Internal;
    }
}

namespace {

class StageClock {
public:
    explicit StageClock(std::vector<StageTiming>& out, std::string stage)
        : out_(out), stage_(std::move(stage)), start_(std::chrono::steady_clock::now()) {}
    ~StageClock()
    {
        const auto d = std::chrono::steady_clock::now() - start_;
        out_.push_back({stage_, std::chrono::duration<double, std::milli>(d).count()});
    }

private:
    std::vector<StageTiming>& out_;
    std::string stage_;
    std::chrono::steady_clock::time_point start_;
};

std::vector<std::string> labels_of(const std::vector<Index>& edges, const DataMatrix& data)
{
    std::vector<std::string> out;
    for (Index e : edges)
        out.push_back(data.variable_labels[static_cast<std::size_t>(e)]);
    return out;
}

} // namespace

PipelineResult identify(const DataMatrix& data, const IdentifyOptions& options)
{
    PipelineResult result;
    auto& report = result.report;
    std::string stage = "input";
    try {
        {
            StageClock clock(report.timings, stage);
            validate(data);
            report.variables = data.variables();
            report.scenarios = data.scenarios();
            report.warnings = data_warnings(data);
        }

        stage = "alr";
        {
            StageClock clock(report.timings, stage);
            report.alr = estimate_alr(data, options.alr);
        }

        stage = "cutset";
        {
            StageClock clock(report.timings, stage);
            auto rounded = extract_cutset(*report.alr, options.deviation_limit);
            report.max_deviation = rounded.max_deviation;
            report.worst_entry =
                std::to_string(rounded.worst_row) + "," +
                data.variable_labels[static_cast<std::size_t>(rounded.column_map[static_cast<std::size_t>(rounded.worst_column)])];
            report.tree_edges = labels_of(rounded.cutset.tree_edges, data);
            report.chord_edges = labels_of(rounded.cutset.chord_edges, data);
            result.cutset = std::move(rounded);
        }

        stage = "realize";
        {
            StageClock clock(report.timings, stage);
            const Matrix in_order = result.cutset->cutset.in_edge_order();
            auto incidence = realize_cutset(BinaryMatrix::support_of(in_order), options.realize);
            report.realize_method = incidence.method;
            report.provenance_length = incidence.provenance.size();
            report.search_nodes = incidence.search_nodes;
            result.incidence = std::move(incidence);
        }

        stage = "orient";
        {
            StageClock clock(report.timings, stage);
            report.orientation = orient(result.incidence->pattern, data, options.coeff_limit);
            result.network = report.orientation->network;
        }
        report.verdict = Verdict::Identified;
    } catch (const NotNetworkConsistentError& e) {
        report.max_deviation = e.max_deviation();
        report.worst_entry =
            std::to_string(e.row()) + "," +
            (e.edge() >= 0 && e.edge() < data.variables()
                 ? data.variable_labels[static_cast<std::size_t>(e.edge())]
                 : std::to_string(e.edge()));
        report.verdict = verdict_for(e.kind(), stage);
        report.failed_stage = stage;
        report.error_kind = e.kind();
        report.message = e.what();
    } catch (const Error& e) {
        report.verdict = verdict_for(e.kind(), stage);
        report.failed_stage = stage;
        report.error_kind = e.kind();
        report.message = e.what();
    } catch (const std::exception& e) {
        report.verdict = Verdict::Internal;
        report.failed_stage = stage;
        report.error_kind = ErrorKind::Internal;
        report.message = e.what();
    }
    return result;
}

std::vector<PipelineResult> identify_batch(const std::vector<DataMatrix>& batch,
                                           const IdentifyOptions& options)
{
    std::vector<PipelineResult> out(batch.size());
    const auto count = static_cast<std::ptrdiff_t>(batch.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i)
        out[static_cast<std::size_t>(i)] = identify(batch[static_cast<std::size_t>(i)], options);
    return out;
}

std::vector<PipelineResult> identify_batch_serial(const std::vector<DataMatrix>& batch,
                                                  const IdentifyOptions& options)
{
    std::vector<PipelineResult> out;
    out.reserve(batch.size());
    for (const auto& data : batch)
        out.push_back(identify(data, options));
    return out;
}

namespace {

std::string number(double v)
{
    std::ostringstream s;
    s << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
    return s.str();
}

template <typename Range, typename Fn>
std::string join(const Range& r, Fn fn)
{
    std::string out;
    for (const auto& x : r) {
        if (!out.empty())
            out += ' ';
        out += fn(x);
    }
    return out;
}

} // namespace

void write_report(std::ostream& out, const PipelineReport& report, bool with_timings)
{
    const auto same = [](const std::string& s) { return s; };
    const auto num = [](double v) { return number(v); };

    out << "[input]\n";
    out << "variables=" << report.variables << '\n';
    out << "scenarios=" << report.scenarios << '\n';
    for (const auto& w : report.warnings)
        out << "warning=" << w << '\n';

    if (report.alr) {
        const auto& a = *report.alr;
        out << "\n[alr]\n";
        out << "singular_values=" << join(a.singular_values, num) << '\n';
        out << "rule=" << a.selection.rule << '\n';
        out << "threshold=" << number(a.selection.threshold) << '\n';
        out << "retained=" << a.retained << '\n';
        out << "constraints=" << a.a_r_hat.rows() << '\n';
    }

    if (report.max_deviation) {
        out << "\n[cutset]\n";
        out << "max_deviation=" << number(*report.max_deviation) << '\n';
        if (report.worst_entry)
            out << "worst_entry=" << *report.worst_entry << '\n';
        if (!report.tree_edges.empty() || !report.chord_edges.empty()) {
            out << "tree_edges=" << join(report.tree_edges, same) << '\n';
            out << "chord_edges=" << join(report.chord_edges, same) << '\n';
        }
    }

    if (report.realize_method) {
        out << "\n[realize]\n";
        out << "method=" << *report.realize_method << '\n';
        out << "provenance_length=" << report.provenance_length.value_or(0) << '\n';
        out << "search_nodes=" << report.search_nodes.value_or(0) << '\n';
    }

    if (report.orientation) {
        const auto& o = *report.orientation;
        out << "\n[orient]\n";
        out << "row_sign_choices="
            << join(o.row_sign_choices,
                    [&](Index r) { return o.network.node_labels[static_cast<std::size_t>(r)]; })
            << '\n';
        out << "residuals=" << join(o.regression_residuals, num) << '\n';
        out << "coefficient_deviations=" << join(o.coefficient_deviations, num) << '\n';
    }

    out << "\n[verdict]\n";
    out << "verdict=" << to_string(report.verdict) << '\n';
    out << "exit_code=" << exit_code(report.verdict) << '\n';
    if (!report.failed_stage.empty())
        out << "stage=" << report.failed_stage << '\n';
    if (report.error_kind)
        out << "error=" << to_string(*report.error_kind) << '\n';
    if (!report.message.empty()) {
        std::string flat = report.message;
        std::replace(flat.begin(), flat.end(), '\n', ' ');
        out << "message=" << flat << '\n';
    }

    if (with_timings) {
        out << "\n[timings]\n";
        for (const auto& t : report.timings)
            out << t.stage << "_ms=" << number(t.milliseconds) << '\n';
    }
}

} // namespace netid
