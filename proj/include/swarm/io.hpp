#pragma once

#include <iosfwd>
#include <string>

#include "swarm/simulator.hpp"

namespace swarm {

/// Parses the point-list format: one "x y [multiplicity]" per line, blank
/// lines and '#' comments ignored. Throws BadConfig naming the line number on
/// malformed input.
Pattern parse_points(std::istream& in, const std::string& name);
Pattern load_points_file(const std::string& path);

void write_points(std::ostream& out, const Pattern& f);

struct RunConfig {
    std::string pattern_file;
    std::string init_spec;   // path or "random:n=<int>"
    std::uint64_t seed = 1;
    double delta = 0.01;
    std::string policy = "async";
    std::uint64_t max_events = 1000000;
    std::string trace_out; // empty = no trace file
};

/// Effective-config round trip: the same run can be reproduced from the dump.
void write_run_config(std::ostream& out, const RunConfig& c);
RunConfig parse_run_config(std::istream& in, const std::string& name);

/// Random initial configuration: n distinct points in the unit disk, derived
/// deterministically from the seed.
Configuration random_configuration(int n, std::uint64_t seed);

Pattern random_pattern(int n, std::uint64_t seed);

void write_trace(std::ostream& out, const Trace& t);

Tolerance tolerance_from_env();

} // namespace swarm
