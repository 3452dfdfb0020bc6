#pragma once

#include <variant>
#include <vector>

#include "swarm/geometry.hpp"

namespace swarm {

/// Straight run along a ray through a center point.
struct RadialSegment {
    Point from;
    Point to;
};

/// Arc at constant radius. Angles are counterclockwise polar angles; the
/// sweep from start to end follows `orientation`.
struct ArcSegment {
    Point center;
    double radius = 0.0;
    double start_angle = 0.0;
    double end_angle = 0.0;
    Orientation orientation = Orientation::CounterClockwise;
};

struct LineSegment {
    Point from;
    Point to;
};

using Segment = std::variant<RadialSegment, ArcSegment, LineSegment>;

double segment_length(const Segment& s);
Point segment_start(const Segment& s);
Point segment_end(const Segment& s);
Point segment_point_at(const Segment& s, double arclen);

/// A computed path: chained segments. Empty means the robot stays put.
struct Trajectory {
    std::vector<Segment> segments;

    bool empty() const { return segments.empty(); }
    double length() const;
    Point start() const;
    Point destination() const;
    Point point_at(double arclen) const; // clamped to [0, length]
    /// Maximum gap between consecutive segment endpoints (chain check).
    double chain_defect() const;
};

Trajectory make_line(Point from, Point to);
Trajectory make_radial(Point from, Point to);
Trajectory make_arc(Point center, Point from, double sweep, Orientation o);

/// Image of a trajectory under a similarity (arcs stay arcs; a reflection
/// flips arc orientations).
Trajectory transform(const Trajectory& t, const Similarity& s);

} // namespace swarm
