#pragma once

#include "swarm/ceb.hpp"
#include "swarm/trajectory.hpp"

namespace swarm {

/// Target shape as a multiset: repeated points mark multiplicities.
struct Pattern {
    std::vector<Point> points;

    std::size_t size() const { return points.size(); }
};

/// Multiplicity-free working pattern: each point of multiplicity m is replaced
/// by m distinct points on the same circle around the pattern center, the
/// extras offset by chords spacing/(4i).
struct ExpandedPattern {
    std::vector<Point> points;
    std::vector<int> source;   // index of the originating pattern location
    double spacing = 0.0;      // min distance between distinct pattern locations
    bool had_multiplicity = false;
};

ExpandedPattern preprocess_pattern(const Pattern& f, const Tolerance& tol);

enum class Phase { Termination, AlmostPatternFormation, FBC1, FBC2 };

const char* phase_name(Phase p);

/// One fair coin flip per call.
class BitSource {
public:
    virtual ~BitSource() = default;
    virtual int draw() = 0;
};

/// Collapses tolerance-coincident points; robots stacked on a target location
/// appear as one point, matching what a robot can see.
Configuration dedupe_points(const std::vector<Point>& pts, const Tolerance& tol);

Phase classify_phase(const std::vector<Point>& snapshot, const Pattern& f, const Tolerance& tol);

/// The full per-activation rule: classify, then produce this robot's path.
/// The calling robot's own position must be the origin of the snapshot frame.
Trajectory compute(const std::vector<Point>& snapshot_local, const Pattern& pattern_local,
                   BitSource& bits, const Tolerance& tol);

// Per-phase movement rules. `self` indexes the (distinct) configuration.
Trajectory termination_move(const Configuration& p, int self, const Pattern& f, const Tolerance& tol);
Trajectory apf_move(const Configuration& p, int self, const Pattern& f, const Tolerance& tol);
Trajectory fbc1_move(const Configuration& p, int self, const Pattern& f, BitSource& bits,
                     const Tolerance& tol);
Trajectory fbc2_move(const Configuration& p, int self, const Pattern& f, const Tolerance& tol);

} // namespace swarm
