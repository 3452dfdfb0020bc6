#include "swarm/io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace swarm {

Pattern parse_points(std::istream& in, const std::string& name) {
    Pattern f;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string::size_type hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        double x, y;
        if (!(ls >> x)) continue; // blank or comment-only line
        if (!(ls >> y))
            fail(Errc::BadConfig, name + ":" + std::to_string(lineno) + ": expected 'x y [multiplicity]'");
        long mult = 1;
        if (ls >> mult && mult < 1)
            fail(Errc::BadConfig, name + ":" + std::to_string(lineno) + ": multiplicity must be positive");
        std::string rest;
        if (ls >> rest)
            fail(Errc::BadConfig, name + ":" + std::to_string(lineno) + ": trailing garbage '" + rest + "'");
        if (!std::isfinite(x) || !std::isfinite(y))
            fail(Errc::BadConfig, name + ":" + std::to_string(lineno) + ": non-finite coordinate");
        for (long i = 0; i < mult; ++i) f.points.push_back({x, y});
    }
    if (f.points.empty()) fail(Errc::BadConfig, name + ": no points");
    return f;
}

Pattern load_points_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::BadConfig, "cannot open " + path);
    return parse_points(in, path);
}

void write_points(std::ostream& out, const Pattern& f) {
    // collapse repeated locations back into multiplicity counts
    std::vector<Point> locs;
    std::vector<int> mult;
    for (Point p : f.points) {
        bool merged = false;
        for (std::size_t i = 0; i < locs.size(); ++i)
            if (locs[i] == p) {
                ++mult[i];
                merged = true;
                break;
            }
        if (!merged) {
            locs.push_back(p);
            mult.push_back(1);
        }
    }
    char buf[96];
    for (std::size_t i = 0; i < locs.size(); ++i) {
        if (mult[i] == 1)
            std::snprintf(buf, sizeof buf, "%.17g %.17g\n", locs[i].x, locs[i].y);
        else
            std::snprintf(buf, sizeof buf, "%.17g %.17g %d\n", locs[i].x, locs[i].y, mult[i]);
        out << buf;
    }
}

void write_run_config(std::ostream& out, const RunConfig& c) {
    out << "pattern " << c.pattern_file << "\n";
    out << "init " << c.init_spec << "\n";
    out << "seed " << c.seed << "\n";
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", c.delta);
    out << "delta " << buf << "\n";
    out << "policy " << c.policy << "\n";
    out << "max-events " << c.max_events << "\n";
    if (!c.trace_out.empty()) out << "trace " << c.trace_out << "\n";
}

RunConfig parse_run_config(std::istream& in, const std::string& name) {
    RunConfig c;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key) || key[0] == '#') continue;
        std::string value;
        std::getline(ls, value);
        std::string::size_type p = value.find_first_not_of(" \t");
        value = p == std::string::npos ? "" : value.substr(p);
        if (key == "pattern") c.pattern_file = value;
        else if (key == "init") c.init_spec = value;
        else if (key == "seed") c.seed = std::strtoull(value.c_str(), nullptr, 10);
        else if (key == "delta") c.delta = std::strtod(value.c_str(), nullptr);
        else if (key == "policy") c.policy = value;
        else if (key == "max-events") c.max_events = std::strtoull(value.c_str(), nullptr, 10);
        else if (key == "trace") c.trace_out = value;
        else fail(Errc::BadConfig, name + ":" + std::to_string(lineno) + ": unknown key " + key);
    }
    return c;
}

Configuration random_configuration(int n, std::uint64_t seed) {
    Configuration p;
    std::uint64_t s = mix_seed(seed, 0xc0ffee);
    auto unit = [&]() {
        s = mix_seed(s, 0x11);
        return static_cast<double>(s >> 11) * 0x1.0p-53;
    };
    while (static_cast<int>(p.robots.size()) < n) {
        Point q{unit() * 2.0 - 1.0, unit() * 2.0 - 1.0};
        if (q.norm() > 1.0) continue;
        bool close = false;
        for (Point r : p.robots)
            if (dist(r, q) < 1e-3) close = true;
        if (!close) p.robots.push_back(q);
    }
    return p;
}

Pattern random_pattern(int n, std::uint64_t seed) {
    Configuration c = random_configuration(n, mix_seed(seed, 0xfade));
    return Pattern{c.robots};
}

void write_trace(std::ostream& out, const Trace& t) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "# swarm-trace n=%d seed=%llu delta=%.17g policy=%s pattern=%016llx\n",
                  t.n, static_cast<unsigned long long>(t.seed), t.delta, t.policy.c_str(),
                  static_cast<unsigned long long>(t.pattern_hash));
    out << buf;
    for (const TraceEvent& e : t.events) {
        std::snprintf(buf, sizeof buf, "%llu %d %s %.17g %.17g %s %llu\n",
                      static_cast<unsigned long long>(e.index), e.robot, event_kind_name(e.kind),
                      e.pos.x, e.pos.y, phase_name(e.phase),
                      static_cast<unsigned long long>(e.bits_used));
        out << buf;
    }
}

Tolerance tolerance_from_env() {
    Tolerance tol;
    if (const char* v = std::getenv("SWARM_TOL")) {
        double t = std::strtod(v, nullptr);
        if (t > 0 && t < 1e-3) {
            tol.eps_len = t;
            tol.eps_ang = t;
        }
    }
    return tol;
}

} // namespace swarm
