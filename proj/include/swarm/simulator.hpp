#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "swarm/protocol.hpp"

namespace swarm {

/// Deterministic bit: the same (seed, robot, cycle) always yields the same
/// unbiased coin.
int draw_bit(std::uint64_t seed, int robot, std::uint64_t cycle);

/// splitmix-style stream mixer, also used to derive batch seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

/// Ego-centered observation frame: world -> local is a similarity placing the
/// robot at the origin, with adversary-chosen rotation, reflection and scale.
struct LocalFrame {
    Similarity world_to_local;

    Point to_local(Point world) const { return world_to_local(world); }
    Trajectory to_world(const Trajectory& local) const {
        return transform(local, world_to_local.inverse());
    }
};

enum class PolicyKind { RoundRobin, LockStep, AsyncRandom, AsyncStutter };

struct AdversaryPolicy {
    PolicyKind kind = PolicyKind::AsyncRandom;
    std::string name = "async";
    int fairness_factor = 64;  // activation bound is factor * n events
    double delta = 0.01;       // min travel before an interruption, as a fraction of the initial enclosing radius
};

AdversaryPolicy policy_by_name(const std::string& name);

enum class EventKind { Look, Compute, MoveProgress, MoveEnd };

const char* event_kind_name(EventKind k);

struct TraceEvent {
    std::uint64_t index = 0;
    int robot = -1;
    EventKind kind = EventKind::Look;
    Point pos;
    Phase phase = Phase::FBC2;
    std::uint64_t bits_used = 0; // total bits drawn so far, all robots
};

struct Trace {
    int n = 0;
    std::uint64_t seed = 0;
    double delta = 0.0;
    std::string policy;
    std::uint64_t pattern_hash = 0;
    std::vector<TraceEvent> events;
};

std::uint64_t pattern_hash(const Pattern& f);

enum class Outcome { Formed, BudgetExceeded };

struct RunResult {
    Outcome outcome = Outcome::BudgetExceeded;
    std::uint64_t events = 0;
    std::uint64_t bits = 0;
    double residual = 0.0; // distance of the final configuration from the pattern, per unit radius
};

struct RobotActivity {
    enum class State { Idle, Looked, Moving } state = State::Idle;
    LocalFrame frame;
    std::vector<Point> snapshot; // local coordinates
    Trajectory path;             // world coordinates
    double progress = 0.0;
    std::uint64_t cycle = 0;
    std::uint64_t bits = 0;
    std::uint64_t last_active = 0;
    std::uint64_t last_cycle_end = 0;
};

class World {
public:
    World(Configuration init, Pattern f, AdversaryPolicy policy, std::uint64_t seed,
          const Tolerance& tol);

    /// Advances exactly one adversary-chosen sub-step and appends one event.
    void step();

    bool all_idle() const;
    bool formed_and_stable(); // similarity plus an empty extra look-compute round
    std::uint64_t events() const { return event_count_; }
    std::uint64_t total_bits() const;
    const std::vector<Point>& positions() const { return positions_; }
    const std::vector<RobotActivity>& activities() const { return activities_; }
    const Trace& trace() const { return trace_; }
    Phase current_phase();
    double delta_abs() const { return delta_abs_; }

private:
    friend RunResult run(Configuration, const Pattern&, const AdversaryPolicy&, std::uint64_t,
                         std::uint64_t, Trace*, const Tolerance&);

    void do_look(int robot);
    void do_compute(int robot);
    void do_move(int robot);
    int pick_robot();
    double rng_unit();
    std::uint64_t rng_raw();

    Tolerance tol_;
    Pattern pattern_;
    std::vector<LocalFrame> pattern_frames_; // fixed per-robot pattern presentation
    AdversaryPolicy policy_;
    std::uint64_t seed_;
    std::uint64_t rng_state_;
    double delta_abs_;
    std::vector<Point> positions_;
    std::vector<RobotActivity> activities_;
    std::uint64_t event_count_ = 0;
    Trace trace_;
    Phase last_phase_ = Phase::FBC2;
    bool phase_valid_ = false;
    int lockstep_stage_ = 0;
};

/// Runs until the pattern is formed and stable or the event budget runs out.
RunResult run(Configuration init, const Pattern& f, const AdversaryPolicy& policy,
              std::uint64_t seed, std::uint64_t max_events, Trace* trace_out,
              const Tolerance& tol);

/// Formed means similar including multiplicities, every robot idle, and one
/// more full round of looks and computes producing no movement.
bool check_termination(World& w);

} // namespace swarm
