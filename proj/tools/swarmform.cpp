#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "swarm/io.hpp"
#include "../tests/selfcheck.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace swarm;

Configuration load_init(const RunConfig& cfg, const Pattern& f) {
    if (cfg.init_spec.rfind("random:n=", 0) == 0) {
        int n = std::atoi(cfg.init_spec.c_str() + 9);
        if (n < 5) fail(Errc::BadConfig, "random init needs n >= 5");
        if (static_cast<std::size_t>(n) != f.size())
            fail(Errc::SizeMismatch, "init has " + std::to_string(n) + " robots but the pattern needs " +
                                         std::to_string(f.size()));
        return random_configuration(n, cfg.seed);
    }
    Pattern init = load_points_file(cfg.init_spec);
    for (std::size_t i = 0; i < init.points.size(); ++i)
        for (std::size_t j = i + 1; j < init.points.size(); ++j)
            if (init.points[i] == init.points[j])
                fail(Errc::BadConfig, "initial configuration has coincident robots");
    if (init.size() != f.size())
        fail(Errc::SizeMismatch, "init has " + std::to_string(init.size()) + " robots but the pattern needs " +
                                     std::to_string(f.size()) + " (with multiplicity)");
    return Configuration{init.points};
}

int cmd_run(const RunConfig& cfg) {
    Tolerance tol = tolerance_from_env();
    Pattern f = load_points_file(cfg.pattern_file);
    Configuration init = load_init(cfg, f);
    if (init.size() < 5) fail(Errc::BadConfig, "need at least 5 robots");
    AdversaryPolicy policy = policy_by_name(cfg.policy);
    policy.delta = cfg.delta;

    Trace trace;
    RunResult res = run(init, f, policy, cfg.seed, cfg.max_events, &trace, tol);
    if (!cfg.trace_out.empty()) {
        std::ofstream out(cfg.trace_out);
        if (!out) fail(Errc::BadConfig, "cannot write " + cfg.trace_out);
        write_trace(out, trace);
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s events=%llu bits=%llu residual=%.3e",
                  res.outcome == Outcome::Formed ? "FORMED" : "BUDGET-EXCEEDED",
                  static_cast<unsigned long long>(res.events),
                  static_cast<unsigned long long>(res.bits), res.residual);
    std::cout << buf << "\n";
    return res.outcome == Outcome::Formed ? 0 : 2;
}

std::vector<int> parse_n_list(const std::string& spec) {
    std::vector<int> ns;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::string::size_type dash = item.find('-', 1);
        if (dash != std::string::npos) {
            int lo = std::atoi(item.substr(0, dash).c_str());
            int hi = std::atoi(item.substr(dash + 1).c_str());
            for (int n = lo; n <= hi; ++n) ns.push_back(n);
        } else if (!item.empty()) {
            ns.push_back(std::atoi(item.c_str()));
        }
    }
    for (int n : ns)
        if (n < 5) fail(Errc::BadConfig, "need at least 5 robots");
    return ns;
}

int cmd_batch(const RunConfig& cfg, int trials, const std::string& n_spec) {
    Tolerance tol = tolerance_from_env();
    std::vector<int> ns = parse_n_list(n_spec);
    if (ns.empty()) fail(Errc::BadConfig, "no robot counts given");
    AdversaryPolicy policy = policy_by_name(cfg.policy);
    policy.delta = cfg.delta;

    std::cout << "n trials formed success_rate median_events mean_bits\n";
    for (int n : ns) {
        std::vector<std::uint64_t> events(static_cast<std::size_t>(trials), 0);
        std::vector<std::uint64_t> bits(static_cast<std::size_t>(trials), 0);
        std::vector<int> formed(static_cast<std::size_t>(trials), 0);
#pragma omp parallel for schedule(dynamic)
        for (int t = 0; t < trials; ++t) {
            std::uint64_t s = mix_seed(cfg.seed, static_cast<std::uint64_t>(n) * 100003 + static_cast<std::uint64_t>(t));
            Pattern f = random_pattern(n, mix_seed(s, 1));
            Configuration init = random_configuration(n, mix_seed(s, 2));
            RunResult r = run(init, f, policy, s, cfg.max_events, nullptr, tol);
            events[static_cast<std::size_t>(t)] = r.events;
            bits[static_cast<std::size_t>(t)] = r.bits;
            formed[static_cast<std::size_t>(t)] = r.outcome == Outcome::Formed ? 1 : 0;
        }
        int ok = 0;
        double mean_bits = 0;
        std::vector<std::uint64_t> ev = events;
        std::sort(ev.begin(), ev.end());
        for (int t = 0; t < trials; ++t) {
            ok += formed[static_cast<std::size_t>(t)];
            mean_bits += static_cast<double>(bits[static_cast<std::size_t>(t)]);
        }
        mean_bits = trials > 0 ? mean_bits / trials : 0;
        std::uint64_t median = trials > 0 ? ev[static_cast<std::size_t>(trials / 2)] : 0;
        char buf[160];
        std::snprintf(buf, sizeof buf, "%d %d %d %.3f %llu %.1f", n, trials, ok,
                      trials > 0 ? static_cast<double>(ok) / trials : 0.0,
                      static_cast<unsigned long long>(median), mean_bits);
        std::cout << buf << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pattern formation simulator for oblivious asynchronous robot swarms"};
    app.require_subcommand(1);

    RunConfig cfg;
    int trials = 10;
    std::string n_spec = "7";

    CLI::App* run_cmd = app.add_subcommand("run", "simulate one formation run");
    run_cmd->add_option("--pattern", cfg.pattern_file, "pattern file (x y [multiplicity] per line)")->required();
    run_cmd->add_option("--init", cfg.init_spec, "initial configuration file or random:n=<int>")->required();
    run_cmd->add_option("--seed", cfg.seed, "random seed");
    run_cmd->add_option("--delta", cfg.delta, "min travel before interruption, fraction of the initial radius");
    run_cmd->add_option("--policy", cfg.policy, "roundrobin|lockstep|async|stutter");
    run_cmd->add_option("--max-events", cfg.max_events, "event budget");
    run_cmd->add_option("--trace", cfg.trace_out, "write the event trace here");

    CLI::App* batch_cmd = app.add_subcommand("batch", "run seeded trials over robot counts");
    batch_cmd->add_option("--seed", cfg.seed, "master seed");
    batch_cmd->add_option("--delta", cfg.delta, "interruption floor");
    batch_cmd->add_option("--policy", cfg.policy, "scheduling policy");
    batch_cmd->add_option("--max-events", cfg.max_events, "event budget per trial");
    batch_cmd->add_option("--trials", trials, "trials per robot count");
    batch_cmd->add_option("--n", n_spec, "robot counts, e.g. 7 or 5,6,7 or 5-8");

    CLI::App* check_cmd = app.add_subcommand("check", "run the brute-force oracle suites");

    try {
        app.parse(argc, argv);
        if (run_cmd->parsed()) return cmd_run(cfg);
        if (batch_cmd->parsed()) return cmd_batch(cfg, trials, n_spec);
        if (check_cmd->parsed()) return swarm::run_self_check(std::cout);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    } catch (const swarm::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
