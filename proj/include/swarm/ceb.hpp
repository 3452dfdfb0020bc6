#pragma once

#include <optional>

#include "swarm/ordering.hpp"

namespace swarm {

/// Circular sequence of angular gaps between consecutive robots around a
/// center, starting at a given robot, in a given orientation. Gaps sum to 2*pi.
struct AngleString {
    Point center;
    Point start_robot;
    Orientation orientation = Orientation::CounterClockwise;
    std::vector<double> angles;
};

/// Throws CenterCollision when a robot coincides with the center.
AngleString string_of_angles(const Configuration& p, Point center, Point start, Orientation o,
                             const Tolerance& tol);

struct RegularityInfo {
    Point center;
    int period = 1;
};

/// Center (and minimal period p < n dividing n) around which the gap string is
/// periodic, when one exists.
std::optional<RegularityInfo> find_regularity(const Configuration& p, const Tolerance& tol);

/// True when some clockwise gap string equals some counterclockwise one around
/// the center of the enclosing circle, i.e. the cyclic gap string equals its
/// own reversal up to rotation.
bool is_sym_regular(const Configuration& p, const Tolerance& tol);

enum class CebKind { Equiangular, Biangular };

struct ShiftInfo {
    int robot = -1;            // index into the configuration
    Point actual;              // observed position
    Point corrected;           // slot position restoring the set
    double shift_angle = 0.0;  // angle between them at the set's center
    Orientation shift_orientation = Orientation::CounterClockwise; // corrected -> actual
};

struct CebSet {
    std::vector<int> members; // indices into the configuration, innermost first
    Point center;             // regularity center when members cover everything, else c(P)
    CebKind kind = CebKind::Equiangular;
    std::optional<ShiftInfo> shifted;
};

/// Exact centered equiangular-or-biangular set, grown smallest-class-first.
std::optional<CebSet> construct_ceb_set(const Configuration& p, const Tolerance& tol);

/// Exact set if present, otherwise the unique set reachable by correcting one
/// robot's angle by at most half the minimum angular separation.
std::optional<CebSet> detect_shifted(const Configuration& p, const Tolerance& tol);

/// Minimum angular separation between two robots around the center of the
/// smallest enclosing circle.
double theta(const Configuration& p);

double theta_around(const Configuration& p, Point center);

} // namespace swarm
