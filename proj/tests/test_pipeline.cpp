#include <doctest.h>

#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "netid/pipeline.hpp"
#include "netid/synth.hpp"

using namespace netid;

namespace {

Matrix gaussian(Index rows, Index cols, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    Matrix z(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i)
            z(i, j) = g(rng);
    return z;
}

/// Flows on the ten edges of K5 that lie in its cut space. Their
/// conservation laws are the cycles of K5, a non-graphic cut-set.
DataMatrix k5_cut_data(Index d)
{
    Matrix b = Matrix::Zero(5, 10);
    Index e = 0;
    for (Index a = 0; a < 5; ++a)
        for (Index c = a + 1; c < 5; ++c, ++e) {
            b(a, e) = -1;
            b(c, e) = 1;
        }
    return make_data(b.transpose() * gaussian(5, d, 3));
}

/// x1 = -x3 - x4, x2 = -x3 + x4: the support is graphic but x3 and x4 are
/// parallel edges with inconsistent signs.
DataMatrix sign_conflict_data(Index d)
{
    Matrix basis(4, 2);
    basis << -1, -1, -1, 1, 1, 0, 0, 1;
    return make_data(basis * gaussian(2, d, 8));
}

std::string report_text(const PipelineReport& r, bool timings = false)
{
    std::ostringstream os;
    write_report(os, r, timings);
    return os.str();
}

DataMatrix noisy_data(Index d, std::uint64_t seed)
{
    GeneratorSpec spec = read_generator_spec(fixtures::data_dir + "/noisy_four_node.ini");
    spec.scenarios = d;
    spec.seed = seed;
    return generate(spec);
}

} // namespace

TEST_CASE("verdicts map to exit codes")
{
    CHECK(exit_code(Verdict::Identified) == 0);
    CHECK(exit_code(Verdict::InvalidInput) == 10);
    CHECK(exit_code(Verdict::RankSelectionFailed) == 20);
    CHECK(exit_code(Verdict::NotNetworkConsistent) == 30);
    CHECK(exit_code(Verdict::NotGraphic) == 40);
    CHECK(exit_code(Verdict::SignConflict) == 50);
    CHECK(exit_code(Verdict::Internal) == 60);

    CHECK(verdict_for(ErrorKind::Parse, "input") == Verdict::InvalidInput);
    CHECK(verdict_for(ErrorKind::NonFinite, "input") == Verdict::InvalidInput);
    CHECK(verdict_for(ErrorKind::Validation, "input") == Verdict::InvalidInput);
    CHECK(verdict_for(ErrorKind::Validation, "orient") == Verdict::NotNetworkConsistent);
    CHECK(verdict_for(ErrorKind::RankSelectionFailed, "alr") == Verdict::RankSelectionFailed);
    CHECK(verdict_for(ErrorKind::DegenerateData, "alr") == Verdict::RankSelectionFailed);
    CHECK(verdict_for(ErrorKind::NotNetworkConsistent, "cutset") ==
          Verdict::NotNetworkConsistent);
    CHECK(verdict_for(ErrorKind::InputRankDeficient, "realize") ==
          Verdict::NotNetworkConsistent);
    CHECK(verdict_for(ErrorKind::NotGraphic, "realize") == Verdict::NotGraphic);
    CHECK(verdict_for(ErrorKind::SignConflict, "orient") == Verdict::SignConflict);
    CHECK(verdict_for(ErrorKind::CoefficientNotUnit, "orient") == Verdict::SignConflict);
    CHECK(verdict_for(ErrorKind::Inconclusive, "realize") == Verdict::Internal);

    CHECK(to_string(Verdict::Identified) == "identified");
    CHECK(to_string(Verdict::NotGraphic) == "not-graphic");
}

TEST_CASE("the seven-scenario table identifies the example network")
{
    const PipelineResult r = identify(make_data(fixtures::steady_states()));
    REQUIRE(r.ok());
    const PipelineReport& rep = r.report;
    CHECK(rep.variables == 6);
    CHECK(rep.scenarios == 7);
    CHECK(rep.warnings.empty());
    CHECK(rep.alr->retained == 2);
    CHECK(*rep.max_deviation < 1e-9);
    CHECK(rep.tree_edges == std::vector<std::string>{"x1", "x2", "x3", "x4"});
    CHECK(rep.chord_edges == std::vector<std::string>{"x5", "x6"});
    CHECK(*rep.realize_method == "greedy");
    CHECK(*rep.provenance_length == 1);
    CHECK(r.cutset->cutset.c_f == fixtures::c_f());
    CHECK(r.incidence->pattern == fixtures::a_u1());
    REQUIRE(r.network);
    CHECK(two_isomorphic(*r.network, fixtures::four_node()));
    CHECK(r.network->incidence == fixtures::four_node_estimate().incidence);
    CHECK((r.network->incidence * fixtures::steady_states()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(rep.failed_stage.empty());
    CHECK(rep.timings.size() == 5);
}

TEST_CASE("noisy simulated data identifies the example network")
{
    const PipelineResult r = identify(noisy_data(1000, 42));
    REQUIRE(r.ok());
    CHECK(two_isomorphic(*r.network, fixtures::four_node()));
    CHECK(*r.report.max_deviation < 0.1);
    CHECK(!validate(*r.network));
}

TEST_CASE("failures are reported with their stage")
{
    SUBCASE("one scenario")
    {
        const PipelineResult r = identify(make_data(fixtures::steady_states().leftCols(1)));
        CHECK(r.report.verdict == Verdict::RankSelectionFailed);
        CHECK(r.report.failed_stage == "alr");
        REQUIRE(r.report.warnings.size() == 1);
        CHECK(r.report.warnings[0].rfind("d < m", 0) == 0);
        CHECK(!r.network);
    }
    SUBCASE("unstructured data")
    {
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            const PipelineResult r = identify(make_data(gaussian(6, 200, seed)));
            const int code = exit_code(r.report.verdict);
            CHECK((code == 20 || code == 30));
        }
    }
    SUBCASE("half-unit relationships")
    {
        Matrix x = gaussian(4, 60, 5);
        x.row(2) = 0.5 * x.row(0);
        x.row(3) = 0.5 * x.row(1);
        const PipelineResult r = identify(make_data(x));
        CHECK(r.report.verdict == Verdict::NotNetworkConsistent);
        CHECK(r.report.failed_stage == "cutset");
        REQUIRE(r.report.max_deviation);
        CHECK(*r.report.max_deviation >= 0.5 - 1e-9);
        CHECK(r.report.worst_entry);
        CHECK(r.report.alr);
    }
    SUBCASE("non-graphic cut-set")
    {
        const PipelineResult r = identify(k5_cut_data(80));
        CHECK(r.report.alr->retained == 4);
        CHECK(*r.report.max_deviation < 1e-9);
        CHECK(r.report.verdict == Verdict::NotGraphic);
        CHECK(r.report.failed_stage == "realize");
        CHECK(exit_code(r.report.verdict) == 40);
    }
    SUBCASE("inconsistent signs")
    {
        const PipelineResult r = identify(sign_conflict_data(50));
        CHECK(r.report.verdict == Verdict::SignConflict);
        CHECK(r.report.failed_stage == "orient");
        CHECK(r.incidence);
        CHECK(!r.network);
    }
    SUBCASE("non-finite input")
    {
        Matrix x = fixtures::steady_states();
        x(2, 3) = std::numeric_limits<double>::quiet_NaN();
        DataMatrix d;
        d.values = x;
        for (int i = 1; i <= 6; ++i)
            d.variable_labels.push_back("x" + std::to_string(i));
        for (int j = 1; j <= 7; ++j)
            d.scenario_ids.push_back("s" + std::to_string(j));
        const PipelineResult r = identify(d);
        CHECK(r.report.verdict == Verdict::InvalidInput);
        CHECK(r.report.failed_stage == "input");
    }
}

TEST_CASE("reports")
{
    const PipelineResult a = identify(make_data(fixtures::steady_states()));
    const PipelineResult b = identify(make_data(fixtures::steady_states()));
    const std::string text = report_text(a.report);
    CHECK(text == report_text(b.report));
    CHECK(text.find("[timings]") == std::string::npos);
    CHECK(report_text(a.report, true).find("[timings]") != std::string::npos);

    std::size_t at = 0;
    for (const char* section : {"[input]", "[alr]", "[cutset]", "[realize]", "[orient]", "[verdict]"}) {
        const std::size_t next = text.find(section);
        REQUIRE(next != std::string::npos);
        CHECK(next >= at);
        at = next;
    }
    CHECK(text.find("verdict=identified") != std::string::npos);

    const PipelineResult failed = identify(make_data(fixtures::steady_states().leftCols(1)));
    const std::string f = report_text(failed.report);
    CHECK(f.find("verdict=rank-selection-failed") != std::string::npos);
    CHECK(f.find("[orient]") == std::string::npos);
    // Every line is a section header or key=value.
    std::istringstream lines(f);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.empty())
            continue;
        CHECK((line.front() == '[' || line.find('=') != std::string::npos));
    }
}

TEST_CASE("batch identification matches the serial reference")
{
    std::vector<DataMatrix> batch;
    for (std::uint64_t seed = 1; seed <= 12; ++seed)
        batch.push_back(noisy_data(200 + 10 * seed, seed));
    batch.push_back(make_data(fixtures::steady_states().leftCols(1)));
    const auto parallel = identify_batch(batch);
    const auto serial = identify_batch_serial(batch);
    REQUIRE(parallel.size() == serial.size());
    for (std::size_t i = 0; i < batch.size(); ++i) {
        CHECK(report_text(parallel[i].report) == report_text(serial[i].report));
        CHECK(parallel[i].report.verdict == identify(batch[i]).report.verdict);
    }
    CHECK(serial.back().report.verdict == Verdict::RankSelectionFailed);
}
