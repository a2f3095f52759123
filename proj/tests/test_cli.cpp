#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "fixtures.hpp"
#include "netid/data.hpp"
#include "netid/network.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

class Scratch {
public:
    Scratch()
    {
        dir_ = fs::temp_directory_path() /
               ("netid_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter_++));
        fs::create_directories(dir_);
    }
    ~Scratch() { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    std::string write(const std::string& name, const std::string& text) const
    {
        std::ofstream(path(name)) << text;
        return path(name);
    }

private:
    static inline int counter_ = 0;
    fs::path dir_;
};

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Run run(const Scratch& s, const std::string& args)
{
    const std::string out = s.path("stdout.txt");
    const std::string err = s.path("stderr.txt");
    const std::string cmd = std::string("\"") + NETID_CLI + "\" " + args + " >\"" + out + "\" 2>\"" +
                            err + "\"";
    const int status = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

double value_of(const std::string& text, const std::string& key)
{
    const auto at = text.find(key + "=");
    REQUIRE(at != std::string::npos);
    return std::stod(text.substr(at + key.size() + 1));
}

std::string data(const std::string& name) { return fixtures::data_dir + "/" + name; }

} // namespace

TEST_CASE("identify on the seven-scenario table")
{
    Scratch s;
    const Run r = run(s, "identify \"" + data("steady_states.csv") + "\" --out \"" + s.path("net.txt") +
                             "\" --report \"" + s.path("report.txt") + "\" --dot \"" +
                             s.path("net.dot") + "\" --ahat \"" + s.path("ahat.csv") + "\"");
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    const netid::FlowNetwork net = netid::read_network(s.path("net.txt"));
    CHECK(netid::two_isomorphic(net, fixtures::four_node()));
    CHECK(net.incidence == fixtures::four_node_estimate().incidence);
    CHECK(slurp(s.path("report.txt")).find("verdict=identified") != std::string::npos);
    CHECK(slurp(s.path("net.dot")).find("digraph") != std::string::npos);

    // Reports are byte-stable across runs.
    const std::string first = slurp(s.path("report.txt"));
    CHECK(run(s, "identify \"" + data("steady_states.csv") + "\" --out \"" + s.path("net2.txt") +
                     "\" --report \"" + s.path("report.txt") + "\"")
              .code == 0);
    CHECK(slurp(s.path("report.txt")) == first);

    // Without --out and --report both go to stdout.
    const Run both = run(s, "identify \"" + data("steady_states.csv") + "\"");
    CHECK(both.code == 0);
    CHECK(both.out.find("[verdict]") != std::string::npos);
    CHECK(both.out.find("x5 N1 N3") != std::string::npos);

    const Run metrics = run(s, "metrics \"" + s.path("ahat.csv") + "\" \"" + data("four_node.net") + "\"");
    CHECK(metrics.code == 0);
    CHECK(metrics.out.find("subspace_angle_deg=") != std::string::npos);

    const Run timed = run(s, "identify \"" + data("steady_states.csv") + "\" --timings");
    CHECK(timed.out.find("[timings]") != std::string::npos);
}

TEST_CASE("identify failures")
{
    Scratch s;
    std::ostringstream one;
    netid::format_csv(one, netid::make_data(fixtures::steady_states().leftCols(1)));
    const Run single = run(s, "identify \"" + s.write("one.csv", one.str()) + "\"");
    CHECK(single.code == 20);
    CHECK(single.err.find("warning: d < m") != std::string::npos);

    const Run malformed = run(s, "identify \"" + s.write("bad.csv", "v,s1,s2\nx1,1,oops\n") + "\"");
    CHECK(malformed.code == 10);
    CHECK(!malformed.err.empty());

    CHECK(run(s, "identify \"" + s.path("missing.csv") + "\"").code == 10);
    CHECK(run(s, "identify").code == 10);
    CHECK(run(s, "identify \"" + data("steady_states.csv") + "\" --rank 9").code == 10);
    CHECK(run(s, "--help").code == 0);

    // Rank override below the true rank leaves too many constraints.
    const Run wrong = run(s, "identify \"" + data("steady_states.csv") + "\" --rank 1");
    CHECK(wrong.code != 0);
    CHECK(wrong.code != 60);
}

TEST_CASE("synth")
{
    Scratch s;
    const Run t1 = run(s, "synth \"" + data("steady_states.ini") + "\" --out \"" + s.path("t1.csv") + "\"");
    CHECK(t1.code == 0);
    CHECK(netid::read_csv(s.path("t1.csv")).values == fixtures::steady_states());

    const Run a = run(s, "synth \"" + data("noisy_four_node.ini") + "\" --scenarios 50");
    const Run b = run(s, "synth \"" + data("noisy_four_node.ini") + "\" --scenarios 50");
    const Run c = run(s, "synth \"" + data("noisy_four_node.ini") + "\" --scenarios 50 --seed 7");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out != c.out);
    std::istringstream in(a.out);
    const netid::DataMatrix d = netid::parse_csv(in);
    CHECK(d.variables() == 6);
    CHECK(d.scenarios() == 50);

    // Generated data round-trips through identify.
    s.write("t2.csv", run(s, "synth \"" + data("noisy_four_node.ini") + "\"").out);
    const Run id = run(s, "identify \"" + s.path("t2.csv") + "\" --out \"" + s.path("t2.net") + "\"");
    CHECK(id.code == 0);
    CHECK(run(s, "verify \"" + s.path("t2.net") + "\" \"" + data("four_node.net") + "\"").code == 0);

    CHECK(run(s, "synth \"" + s.write("bad.ini", "scenarios = 3\n") + "\"").code == 10);
}

TEST_CASE("verify")
{
    Scratch s;
    const Run same = run(s, "verify \"" + data("four_node.net") + "\" \"" + data("four_node_estimate.net") + "\"");
    CHECK(same.code == 0);
    CHECK(same.out == "2-isomorphic\n");

    const std::string cycle = s.write("cycle.net", "x1 ENV N1\nx2 N1 N2\nx3 N2 ENV\n");
    const std::string star = s.write("star.net", "x1 ENV N1\nx2 N1 ENV\nx3 N1 ENV\n");
    const Run differ = run(s, "verify \"" + cycle + "\" \"" + star + "\"");
    CHECK(differ.code == 1);
    CHECK(differ.out.rfind("not 2-isomorphic", 0) == 0);

    CHECK(run(s, "verify \"" + cycle + "\" \"" + s.write("bad.net", "x1 N1\n") + "\"").code == 10);
}

TEST_CASE("metrics")
{
    Scratch s;
    const std::string net = s.write("pair.net", "x1 ENV N1\nx2 N1 ENV\n");
    // Column order follows the labels, not the file position.
    const Run same = run(s, "metrics \"" + s.write("same.csv", "x2,x1\n-1,1\n") + "\" \"" + net + "\"");
    CHECK(same.code == 0);
    CHECK(value_of(same.out, "subspace_angle_deg") == doctest::Approx(0.0));
    CHECK(value_of(same.out, "projection_distance") == doctest::Approx(0.0));

    const Run orth = run(s, "metrics \"" + s.write("orth.csv", "x1,x2\n1,1\n") + "\" \"" + net + "\"");
    CHECK(orth.code == 0);
    CHECK(value_of(orth.out, "subspace_angle_deg") == doctest::Approx(90.0));
    CHECK(value_of(orth.out, "projection_distance") == doctest::Approx(std::sqrt(2.0)));

    CHECK(run(s, "metrics \"" + s.write("other.csv", "x1,x9\n1,1\n") + "\" \"" + net + "\"").code ==
          10);
}

TEST_CASE("random")
{
    Scratch s;
    const Run r = run(s, "random --nodes 5 --edges 9 --dangling 2 --seed 3 --out \"" +
                             s.path("r.net") + "\"");
    CHECK(r.code == 0);
    const netid::FlowNetwork net = netid::read_network(s.path("r.net"));
    CHECK(!netid::validate(net));
    CHECK(net.node_count() == 5);
    CHECK(net.edge_count() == 9);

    const Run again = run(s, "random --nodes 5 --edges 9 --dangling 2 --seed 3");
    CHECK(again.out == slurp(s.path("r.net")));
    CHECK(run(s, "random --nodes 5 --edges 3").code == 10);
}
