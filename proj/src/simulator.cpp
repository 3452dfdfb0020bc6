#include "swarm/simulator.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>

namespace swarm {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    return splitmix64(seed ^ splitmix64(salt + 0x6a09e667f3bcc909ULL));
}

int draw_bit(std::uint64_t seed, int robot, std::uint64_t cycle) {
    std::uint64_t h = splitmix64(mix_seed(seed, static_cast<std::uint64_t>(robot) + 1) ^
                                 splitmix64(cycle + 0x12345));
    return static_cast<int>(h >> 63);
}

AdversaryPolicy policy_by_name(const std::string& name) {
    AdversaryPolicy p;
    p.name = name;
    if (name == "roundrobin") {
        p.kind = PolicyKind::RoundRobin;
    } else if (name == "lockstep") {
        p.kind = PolicyKind::LockStep;
    } else if (name == "async") {
        p.kind = PolicyKind::AsyncRandom;
    } else if (name == "stutter") {
        p.kind = PolicyKind::AsyncStutter;
    } else {
        fail(Errc::BadConfig, "unknown policy: " + name);
    }
    return p;
}

const char* event_kind_name(EventKind k) {
    switch (k) {
        case EventKind::Look: return "look";
        case EventKind::Compute: return "compute";
        case EventKind::MoveProgress: return "move-progress";
        case EventKind::MoveEnd: return "move-end";
    }
    return "?";
}

std::uint64_t pattern_hash(const Pattern& f) {
    std::vector<Point> pts = f.points;
    std::sort(pts.begin(), pts.end(), [](Point a, Point b) { return std::tie(a.x, a.y) < std::tie(b.x, b.y); });
    std::uint64_t h = 1469598103934665603ULL;
    auto feed = [&](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        for (char* q = buf; *q; ++q) {
            h ^= static_cast<unsigned char>(*q);
            h *= 1099511628211ULL;
        }
    };
    for (Point p : pts) {
        feed(p.x);
        feed(p.y);
    }
    return h;
}

namespace {

class CountingBits : public BitSource {
public:
    CountingBits(std::uint64_t seed, int robot, std::uint64_t cycle)
        : seed_(seed), robot_(robot), cycle_(cycle) {}
    int draw() override {
        ++draws_;
        // the protocol draws at most one bit per activation; repeated draws in
        // one cycle would silently reuse randomness, so they are rejected
        if (draws_ > 1) fail(Errc::BadConfig, "bit source: more than one draw per cycle");
        return draw_bit(seed_, robot_, cycle_);
    }
    std::uint64_t draws() const { return draws_; }

private:
    std::uint64_t seed_;
    int robot_;
    std::uint64_t cycle_;
    std::uint64_t draws_ = 0;
};

} // namespace

World::World(Configuration init, Pattern f, AdversaryPolicy policy, std::uint64_t seed,
             const Tolerance& tol)
    : tol_(tol), pattern_(std::move(f)), policy_(std::move(policy)), seed_(seed),
      rng_state_(mix_seed(seed, 0xadbeef)), positions_(std::move(init.robots)) {
    if (positions_.size() < 2) fail(Errc::BadConfig, "world: need at least two robots");
    if (positions_.size() != pattern_.size())
        fail(Errc::SizeMismatch, "world: robot count differs from pattern size (with multiplicity)");
    validate_configuration(Configuration{positions_}, tol_);
    preprocess_pattern(pattern_, tol_); // rejects gathering up front
    double r = smallest_enclosing_circle(positions_).radius;
    delta_abs_ = policy_.delta * r;
    activities_.resize(positions_.size());

    // each robot receives the pattern in its own fixed arbitrary frame
    pattern_frames_.reserve(positions_.size());
    for (std::size_t i = 0; i < positions_.size(); ++i) {
        Similarity s;
        s.rotation = rng_unit() * kTwoPi;
        s.reflect = rng_raw() & 1;
        s.scale = std::pow(10.0, rng_unit() * 2.0 - 1.0);
        s.translation = {rng_unit() * 2.0 - 1.0, rng_unit() * 2.0 - 1.0};
        pattern_frames_.push_back(LocalFrame{s});
    }

    trace_.n = static_cast<int>(positions_.size());
    trace_.seed = seed_;
    trace_.delta = policy_.delta;
    trace_.policy = policy_.name;
    trace_.pattern_hash = pattern_hash(pattern_);
}

std::uint64_t World::rng_raw() {
    rng_state_ = splitmix64(rng_state_);
    return rng_state_;
}

double World::rng_unit() {
    return static_cast<double>(rng_raw() >> 11) * 0x1.0p-53;
}

std::uint64_t World::total_bits() const {
    std::uint64_t b = 0;
    for (const RobotActivity& a : activities_) b += a.bits;
    return b;
}

bool World::all_idle() const {
    for (const RobotActivity& a : activities_)
        if (a.state != RobotActivity::State::Idle) return false;
    return true;
}

Phase World::current_phase() {
    if (!phase_valid_) {
        last_phase_ = classify_phase(positions_, pattern_, tol_);
        phase_valid_ = true;
    }
    return last_phase_;
}

void World::do_look(int robot) {
    RobotActivity& a = activities_[static_cast<std::size_t>(robot)];
    Similarity s;
    s.rotation = rng_unit() * kTwoPi;
    s.reflect = rng_raw() & 1;
    s.scale = std::pow(10.0, rng_unit() * 2.0 - 1.0);
    s.translation = {0, 0};
    // place the robot at the local origin
    Point image = s(positions_[static_cast<std::size_t>(robot)]);
    s.translation = Point{-image.x, -image.y};
    a.frame = LocalFrame{s};
    a.snapshot.clear();
    for (Point p : positions_) a.snapshot.push_back(a.frame.to_local(p));
    a.state = RobotActivity::State::Looked;
}

void World::do_compute(int robot) {
    RobotActivity& a = activities_[static_cast<std::size_t>(robot)];
    Pattern local;
    const LocalFrame& pf = pattern_frames_[static_cast<std::size_t>(robot)];
    for (Point p : pattern_.points) local.points.push_back(pf.world_to_local(p));
    CountingBits bits(seed_, robot, a.cycle);
    Trajectory t = compute(a.snapshot, local, bits, tol_);
    a.bits += bits.draws();
    if (t.empty()) {
        a.state = RobotActivity::State::Idle;
        ++a.cycle;
        a.last_cycle_end = event_count_;
    } else {
        a.path = a.frame.to_world(t);
        a.progress = 0.0;
        a.state = RobotActivity::State::Moving;
    }
}

void World::do_move(int robot) {
    RobotActivity& a = activities_[static_cast<std::size_t>(robot)];
    double len = a.path.length();
    double remain = len - a.progress;
    double advance = remain;
    bool stop = true;
    if (policy_.kind == PolicyKind::AsyncRandom || policy_.kind == PolicyKind::AsyncStutter) {
        double u = rng_unit();
        bool partial = (rng_raw() & 3) != 0; // cut or crawl three times out of four
        if (policy_.kind == PolicyKind::AsyncStutter) partial = (rng_raw() & 7) != 0;
        if (partial) {
            advance = std::max(remain * u, delta_abs_ / 4.0);
            stop = (rng_raw() & 1) != 0;
        }
        if (advance >= remain) {
            advance = remain;
            stop = true;
        }
        if (stop) {
            // an interrupted move must have covered at least delta in total
            double total = a.progress + advance;
            double floor_travel = std::min(delta_abs_, len);
            if (total < floor_travel) advance = floor_travel - a.progress;
        }
    }
    // quantized cut points keep replays exactly reproducible
    double q = len * 1e-12;
    if (q > 0 && a.progress + advance < len) advance = std::floor(advance / q) * q;
    if (advance < 0) advance = 0;
    a.progress += advance;
    if (a.progress >= len - 1e-300) {
        a.progress = len;
        stop = true;
    }
    positions_[static_cast<std::size_t>(robot)] = a.path.point_at(a.progress);
    phase_valid_ = false;
    if (stop) {
        a.state = RobotActivity::State::Idle;
        ++a.cycle;
        a.last_cycle_end = event_count_;
    }
}

int World::pick_robot() {
    int n = static_cast<int>(positions_.size());
    std::uint64_t bound = static_cast<std::uint64_t>(policy_.fairness_factor) * static_cast<std::uint64_t>(n);
    // fairness fallback: the most starved robot goes first when at the bound
    int starved = -1;
    std::uint64_t worst = 0;
    for (int i = 0; i < n; ++i) {
        std::uint64_t age = event_count_ - activities_[static_cast<std::size_t>(i)].last_active;
        if (age >= bound / 4 && age > worst) {
            worst = age;
            starved = i;
        }
    }
    if (starved >= 0) return starved;

    switch (policy_.kind) {
        case PolicyKind::RoundRobin: {
            // finish the robot in flight, else the next after the last finisher
            for (int i = 0; i < n; ++i)
                if (activities_[static_cast<std::size_t>(i)].state != RobotActivity::State::Idle) return i;
            std::uint64_t best_end = ~0ULL;
            int pick = 0;
            for (int i = 0; i < n; ++i) {
                std::uint64_t e = activities_[static_cast<std::size_t>(i)].last_active;
                if (e < best_end) {
                    best_end = e;
                    pick = i;
                }
            }
            return pick;
        }
        case PolicyKind::LockStep: {
            // all look, then all compute, then all moves run to completion
            auto want = static_cast<RobotActivity::State>(lockstep_stage_);
            for (int round = 0; round < 3; ++round) {
                for (int i = 0; i < n; ++i)
                    if (activities_[static_cast<std::size_t>(i)].state == want) return i;
                lockstep_stage_ = (lockstep_stage_ + 1) % 3;
                want = static_cast<RobotActivity::State>(lockstep_stage_);
            }
            return 0;
        }
        case PolicyKind::AsyncRandom:
            return static_cast<int>(rng_raw() % static_cast<std::uint64_t>(n));
        case PolicyKind::AsyncStutter: {
            // movers are starved so stale snapshots pile up
            for (int tries = 0; tries < 8; ++tries) {
                int i = static_cast<int>(rng_raw() % static_cast<std::uint64_t>(n));
                bool moving = activities_[static_cast<std::size_t>(i)].state == RobotActivity::State::Moving;
                if (!moving || (rng_raw() & 7) == 0) return i;
            }
            return static_cast<int>(rng_raw() % static_cast<std::uint64_t>(n));
        }
    }
    return 0;
}

void World::step() {
    int robot = pick_robot();
    RobotActivity& a = activities_[static_cast<std::size_t>(robot)];
    EventKind kind = EventKind::Look;
    switch (a.state) {
        case RobotActivity::State::Idle:
            do_look(robot);
            kind = EventKind::Look;
            break;
        case RobotActivity::State::Looked:
            do_compute(robot);
            kind = EventKind::Compute;
            break;
        case RobotActivity::State::Moving: {
            do_move(robot);
            kind = a.state == RobotActivity::State::Idle ? EventKind::MoveEnd : EventKind::MoveProgress;
            break;
        }
    }
    a.last_active = event_count_;
    TraceEvent ev;
    ev.index = event_count_;
    ev.robot = robot;
    ev.kind = kind;
    ev.pos = positions_[static_cast<std::size_t>(robot)];
    ev.phase = current_phase();
    ev.bits_used = total_bits();
    trace_.events.push_back(ev);
    ++event_count_;
}

bool check_termination(World& w) { return w.formed_and_stable(); }

bool World::formed_and_stable() {
    if (!all_idle()) return false;
    std::optional<Similarity> s = find_similarity(positions_, pattern_.points, tol_);
    if (!s) return false;
    // one more silent round: every robot must choose to stay put
    for (std::size_t i = 0; i < positions_.size(); ++i) {
        std::vector<Point> snap;
        for (Point p : positions_) snap.push_back(p - positions_[i]);
        Pattern local;
        const LocalFrame& pf = pattern_frames_[i];
        for (Point p : pattern_.points) local.points.push_back(pf.world_to_local(p));
        CountingBits bits(seed_, static_cast<int>(i), activities_[i].cycle);
        if (!compute(snap, local, bits, tol_).empty()) return false;
    }
    return true;
}

RunResult run(Configuration init, const Pattern& f, const AdversaryPolicy& policy,
              std::uint64_t seed, std::uint64_t max_events, Trace* trace_out, const Tolerance& tol) {
    World w(std::move(init), f, policy, seed, tol);
    RunResult res;
    bool formed = false;
    while (w.events() < max_events) {
        w.step();
        if (w.all_idle() && w.formed_and_stable()) {
            formed = true;
            break;
        }
    }
    res.outcome = formed ? Outcome::Formed : Outcome::BudgetExceeded;
    res.events = w.events();
    res.bits = w.total_bits();
    double r = smallest_enclosing_circle(w.positions()).radius;
    res.residual = 0.0;
    if (auto s = find_similarity(w.positions(), f.points, tol)) {
        // worst leftover distance once the best correspondence is applied
        double worst = 0.0;
        Similarity inv = s->inverse();
        std::vector<Point> back;
        for (Point p : f.points) back.push_back(inv(p));
        for (Point q : w.positions()) {
            double best = 1e300;
            for (Point p : back) best = std::min(best, dist(p, q));
            worst = std::max(worst, best);
        }
        res.residual = worst / std::max(r, 1e-300);
    } else {
        res.residual = 1.0;
    }
    if (trace_out) *trace_out = w.trace();
    return res;
}

} // namespace swarm
