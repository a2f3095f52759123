#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "netid/alr.hpp"
#include "netid/cutset.hpp"
#include "netid/data.hpp"
#include "netid/error.hpp"
#include "netid/orient.hpp"
#include "netid/realize.hpp"

namespace netid {

struct IdentifyOptions {
    AlrOptions alr;
    double deviation_limit = 0.3;
    double coeff_limit = 0.3;
    RealizeOptions realize;
};

enum class Verdict {
    Identified,
    InvalidInput,
    RankSelectionFailed,
    NotNetworkConsistent,
    NotGraphic,
    SignConflict,
    Internal,
};

std::string_view to_string(Verdict v);

/// Process exit code: 0, 10, 20, 30, 40, 50, 60.
int exit_code(Verdict v);

/// Verdict for an error raised in the named stage.
Verdict verdict_for(ErrorKind kind, std::string_view stage);

struct StageTiming {
    std::string stage;
    double milliseconds = 0;
};

/// Everything the identify command reports; sections stay empty for
/// stages that did not run.
struct PipelineReport {
    Index variables = 0;
    Index scenarios = 0;
    std::vector<std::string> warnings;

    std::optional<AlrModel> alr;
    std::optional<double> max_deviation;
    std::optional<std::string> worst_entry; ///< "row,edge-label"
    std::vector<std::string> tree_edges;
    std::vector<std::string> chord_edges;
    std::optional<std::string> realize_method;
    std::optional<std::size_t> provenance_length;
    std::optional<std::uint64_t> search_nodes;
    std::optional<OrientationResult> orientation;

    Verdict verdict = Verdict::Internal;
    std::string failed_stage;
    std::optional<ErrorKind> error_kind;
    std::string message;
    std::vector<StageTiming> timings;
};

struct PipelineResult {
    PipelineReport report;
    std::optional<RoundedCutset> cutset;
    std::optional<UndirectedIncidence> incidence;
    std::optional<FlowNetwork> network;

    bool ok() const { return report.verdict == Verdict::Identified; }
};

/// estimate_alr -> extract_cutset -> realize_cutset -> orient. Errors are
/// caught and recorded in the report with the failing stage.
PipelineResult identify(const DataMatrix& data, const IdentifyOptions& options = {});

/// identify over many data sets, one OpenMP task per data set.
std::vector<PipelineResult> identify_batch(const std::vector<DataMatrix>& batch,
                                           const IdentifyOptions& options = {});
std::vector<PipelineResult> identify_batch_serial(const std::vector<DataMatrix>& batch,
                                                  const IdentifyOptions& options = {});

/// Line-oriented key=value report, one [section] per stage, plus [timings]
/// when with_timings is set.
void write_report(std::ostream& out, const PipelineReport& report, bool with_timings = false);

} // namespace netid
