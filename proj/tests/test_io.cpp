#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "swarm/io.hpp"

using namespace swarm;

TEST_CASE("point files: comments, blanks, multiplicity, errors") {
    std::istringstream in(
        "# a comment\n"
        "\n"
        "1.5 2.5\n"
        "0 -1 3   # tripled\n"
        "  \t\n"
        "2 2\n");
    Pattern f = parse_points(in, "test");
    CHECK(f.points.size() == 6);
    int tripled = 0;
    for (Point p : f.points)
        if (p == Point{0, -1}) ++tripled;
    CHECK(tripled == 3);

    std::istringstream bad("1.0\n");
    CHECK_THROWS_WITH_AS(static_cast<void>(parse_points(bad, "bad")),
                         doctest::Contains("bad:1"), Error);
    std::istringstream bad2("1 2\n3 4 0\n");
    CHECK_THROWS_WITH_AS(static_cast<void>(parse_points(bad2, "bad2")),
                         doctest::Contains("bad2:2"), Error);
}

TEST_CASE("points round trip through the writer") {
    Pattern f{{{1, 2}, {1, 2}, {-0.25, 3e-7}}};
    std::ostringstream out;
    write_points(out, f);
    std::istringstream in(out.str());
    Pattern g = parse_points(in, "rt");
    REQUIRE(g.points.size() == f.points.size());
}

TEST_CASE("run config round trip") {
    RunConfig c;
    c.pattern_file = "p.txt";
    c.init_spec = "random:n=7";
    c.seed = 123456789;
    c.delta = 0.015625;
    c.policy = "stutter";
    c.max_events = 50000;
    c.trace_out = "t.log";
    std::ostringstream out;
    write_run_config(out, c);
    std::istringstream in(out.str());
    RunConfig d = parse_run_config(in, "cfg");
    CHECK(d.pattern_file == c.pattern_file);
    CHECK(d.init_spec == c.init_spec);
    CHECK(d.seed == c.seed);
    CHECK(d.delta == c.delta);
    CHECK(d.policy == c.policy);
    CHECK(d.max_events == c.max_events);
    CHECK(d.trace_out == c.trace_out);
}

namespace {

int run_cli(const std::string& args, std::string* output = nullptr) {
    const char* bin = std::getenv("SWARM_CLI_BIN");
    if (!bin) return -1000;
    std::string cmd = std::string(bin) + " " + args + " >/tmp/swarm_cli_out.txt 2>&1";
    int rc = std::system(cmd.c_str());
    if (output) {
        std::ifstream in("/tmp/swarm_cli_out.txt");
        std::stringstream ss;
        ss << in.rdbuf();
        *output = ss.str();
    }
    return WEXITSTATUS(rc);
}

} // namespace

TEST_CASE("cli exit codes and summary lines") {
    if (!std::getenv("SWARM_CLI_BIN")) return; // only meaningful under ctest

    // write a pattern file
    {
        std::ofstream p("/tmp/swarm_cli_pat.txt");
        p << "0 0\n1 0\n0 1\n-1 0.2\n0.4 -1\n0.9 0.9\n";
    }
    std::string out;
    int rc = run_cli("run --pattern /tmp/swarm_cli_pat.txt --init random:n=6 --seed 5 --max-events 400000", &out);
    CHECK(rc == 0);
    CHECK(out.find("FORMED") != std::string::npos);
    CHECK(out.find("events=") != std::string::npos);
    CHECK(out.find("bits=") != std::string::npos);

    rc = run_cli("run --pattern /tmp/swarm_cli_pat.txt --init random:n=6 --seed 5 --max-events 1", &out);
    CHECK(rc == 2);

    // wrong cardinality: named sizes in the diagnostic
    {
        std::ofstream p("/tmp/swarm_cli_init.txt");
        p << "0 0\n1 0\n0 1\n-1 0.2\n0.4 -1\n0.9 0.9\n0.5 0.5\n";
    }
    rc = run_cli("run --pattern /tmp/swarm_cli_pat.txt --init /tmp/swarm_cli_init.txt --seed 5", &out);
    CHECK(rc == 1);
    CHECK(out.find("7") != std::string::npos);
    CHECK(out.find("6") != std::string::npos);

    // deterministic traces across invocations
    int rc1 = run_cli("run --pattern /tmp/swarm_cli_pat.txt --init random:n=6 --seed 9 "
                      "--max-events 400000 --trace /tmp/swarm_tr1.txt");
    int rc2 = run_cli("run --pattern /tmp/swarm_cli_pat.txt --init random:n=6 --seed 9 "
                      "--max-events 400000 --trace /tmp/swarm_tr2.txt");
    CHECK(rc1 == rc2);
    std::ifstream a("/tmp/swarm_tr1.txt"), b("/tmp/swarm_tr2.txt");
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());
    CHECK(sa.str().find("# swarm-trace") == 0);

    // zero trials: header only, exit 0
    rc = run_cli("batch --trials 0 --n 7", &out);
    CHECK(rc == 0);
    CHECK(out.find("n trials") != std::string::npos);

    // batch determinism
    std::string b1, b2;
    CHECK(run_cli("batch --trials 3 --n 5 --seed 77 --max-events 300000", &b1) == 0);
    CHECK(run_cli("batch --trials 3 --n 5 --seed 77 --max-events 300000", &b2) == 0);
    CHECK(b1 == b2);
}

TEST_CASE("cli self check passes and the break hook trips it") {
    if (!std::getenv("SWARM_CLI_BIN")) return;
    std::string out;
    CHECK(run_cli("check", &out) == 0);
    CHECK(out.find("ok   sec") != std::string::npos);

    const char* bin = std::getenv("SWARM_CLI_BIN");
    std::string cmd = std::string("SWARM_CHECK_BREAK=sec ") + bin + " check >/tmp/swarm_cli_out.txt 2>&1";
    int rc = WEXITSTATUS(std::system(cmd.c_str()));
    CHECK(rc == 1);
    std::ifstream in("/tmp/swarm_cli_out.txt");
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str().find("FAIL sec") != std::string::npos);
}
