#pragma once

#include <utility>
#include <vector>

#include "swarm/geometry.hpp"

namespace swarm {

/// Robot positions at one instant. Positions must be pairwise distinct.
struct Configuration {
    std::vector<Point> robots;

    std::size_t size() const { return robots.size(); }
};

/// Throws BadConfig unless positions are finite, distinct and nonempty.
void validate_configuration(const Configuration& p, const Tolerance& tol);

/// One polar coordinate system: a reference robot on the innermost occupied
/// circle plus an orientation. The sequence lists every robot's (distance to
/// the center of the enclosing circle, angle from the reference ray), sorted
/// increasing lexicographically. Distances are raw lengths.
struct PolarView {
    Point origin_robot;
    int origin_index = -1;
    Orientation orientation = Orientation::CounterClockwise;
    std::vector<std::pair<double, double>> sequence;
};

PolarView view_sequence(const Configuration& p, Point reference, Orientation o, const Tolerance& tol);

struct ConfigurationOrder {
    std::vector<std::vector<int>> classes; // robot indices, minimal class first
    bool total = false;
    int symmetricity = 1;
    // all (reference robot, orientation) pairs whose view is minimal
    std::vector<std::pair<int, Orientation>> min_systems;
    // robot indices sorted by rank in the canonical minimal system
    std::vector<int> ranked;
};

/// Partial ordering of the robots through the minimal polar views.
ConfigurationOrder partial_order(const Configuration& p, const Tolerance& tol);

bool is_ordered(const Configuration& p, const Tolerance& tol);

int symmetricity(const Configuration& p, const Tolerance& tol);

/// Canonical choice among minimal systems: counterclockwise first, then the
/// lowest reference index.
std::size_t canonical_system_index(const ConfigurationOrder& order);

/// Canonical total ordering of a pattern's points: the first point is the
/// smallest one not holding the pattern's enclosing circle, the rest follow
/// the partial-order ranks in the chosen minimal system of the pattern.
/// system_choice picks among the pattern's minimal systems (-1 = canonical).
std::vector<int> pattern_order_indices(const std::vector<Point>& pattern, const Tolerance& tol,
                                       int system_choice = -1);

std::vector<Point> pattern_order(const std::vector<Point>& pattern, const Tolerance& tol,
                                 int system_choice = -1);

/// Embeds an ordered pattern into the configuration's global frame: scaled so
/// the enclosing circles match, mirrored so pattern and robot orderings share
/// an orientation, rotated so the second pattern point sits on the second
/// robot's ray. Returns pattern points in their canonical order.
/// Throws NotOrdered when p has no total order.
std::vector<Point> align_pattern(const Configuration& p, const std::vector<Point>& pattern,
                                 const Tolerance& tol, int system_choice = -1);

/// Same embedding, but out[i] is the aligned position of pattern[i].
std::vector<Point> align_pattern_by_index(const Configuration& p, const std::vector<Point>& pattern,
                                          const Tolerance& tol);

/// Ordered plus the three closeness conditions that let the innermost robot
/// anchor a global frame for the pattern.
bool is_guided(const Configuration& p, const std::vector<Point>& pattern, const Tolerance& tol);

} // namespace swarm
