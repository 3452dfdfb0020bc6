#include "swarm/trajectory.hpp"

#include <algorithm>

namespace swarm {

namespace {

double arc_sweep(const ArcSegment& a) {
    double d = a.orientation == Orientation::CounterClockwise
                   ? a.end_angle - a.start_angle
                   : a.start_angle - a.end_angle;
    return wrap_angle(d) == 0.0 && a.start_angle != a.end_angle ? kTwoPi : wrap_angle(d);
}

Point arc_point(const ArcSegment& a, double ang) {
    return a.center + Point{std::cos(ang), std::sin(ang)} * a.radius;
}

} // namespace

double segment_length(const Segment& s) {
    if (const auto* r = std::get_if<RadialSegment>(&s)) return dist(r->from, r->to);
    if (const auto* l = std::get_if<LineSegment>(&s)) return dist(l->from, l->to);
    const auto& a = std::get<ArcSegment>(s);
    return arc_sweep(a) * a.radius;
}

Point segment_start(const Segment& s) {
    if (const auto* r = std::get_if<RadialSegment>(&s)) return r->from;
    if (const auto* l = std::get_if<LineSegment>(&s)) return l->from;
    const auto& a = std::get<ArcSegment>(s);
    return arc_point(a, a.start_angle);
}

Point segment_end(const Segment& s) {
    if (const auto* r = std::get_if<RadialSegment>(&s)) return r->to;
    if (const auto* l = std::get_if<LineSegment>(&s)) return l->to;
    const auto& a = std::get<ArcSegment>(s);
    return arc_point(a, a.end_angle);
}

Point segment_point_at(const Segment& s, double arclen) {
    double len = segment_length(s);
    double t = len <= 0 ? 0.0 : std::clamp(arclen / len, 0.0, 1.0);
    if (const auto* r = std::get_if<RadialSegment>(&s)) return r->from + (r->to - r->from) * t;
    if (const auto* l = std::get_if<LineSegment>(&s)) return l->from + (l->to - l->from) * t;
    const auto& a = std::get<ArcSegment>(s);
    double sweep = arc_sweep(a) * t;
    double sign = a.orientation == Orientation::CounterClockwise ? 1.0 : -1.0;
    return arc_point(a, a.start_angle + sign * sweep);
}

double Trajectory::length() const {
    double total = 0;
    for (const Segment& s : segments) total += segment_length(s);
    return total;
}

Point Trajectory::start() const { return segments.empty() ? Point{} : segment_start(segments.front()); }

Point Trajectory::destination() const {
    return segments.empty() ? Point{} : segment_end(segments.back());
}

Point Trajectory::point_at(double arclen) const {
    if (segments.empty()) return Point{};
    double left = std::max(arclen, 0.0);
    for (const Segment& s : segments) {
        double len = segment_length(s);
        if (left <= len) return segment_point_at(s, left);
        left -= len;
    }
    return destination();
}

double Trajectory::chain_defect() const {
    double worst = 0;
    for (std::size_t i = 0; i + 1 < segments.size(); ++i)
        worst = std::max(worst, dist(segment_end(segments[i]), segment_start(segments[i + 1])));
    return worst;
}

Trajectory make_line(Point from, Point to) {
    Trajectory t;
    if (dist(from, to) > 0) t.segments.push_back(LineSegment{from, to});
    return t;
}

Trajectory make_radial(Point from, Point to) {
    Trajectory t;
    if (dist(from, to) > 0) t.segments.push_back(RadialSegment{from, to});
    return t;
}

Trajectory make_arc(Point center, Point from, double sweep, Orientation o) {
    Trajectory t;
    if (sweep <= 0) return t;
    ArcSegment a;
    a.center = center;
    a.radius = dist(center, from);
    a.start_angle = polar_angle(from, center);
    double sign = o == Orientation::CounterClockwise ? 1.0 : -1.0;
    a.end_angle = wrap_angle(a.start_angle + sign * sweep);
    a.orientation = o;
    t.segments.push_back(a);
    return t;
}

Trajectory transform(const Trajectory& t, const Similarity& s) {
    Trajectory out;
    out.segments.reserve(t.segments.size());
    for (const Segment& seg : t.segments) {
        if (const auto* r = std::get_if<RadialSegment>(&seg)) {
            out.segments.push_back(RadialSegment{s(r->from), s(r->to)});
        } else if (const auto* l = std::get_if<LineSegment>(&seg)) {
            out.segments.push_back(LineSegment{s(l->from), s(l->to)});
        } else {
            const auto& a = std::get<ArcSegment>(seg);
            ArcSegment b;
            b.center = s(a.center);
            b.radius = a.radius * s.scale;
            b.start_angle = polar_angle(s(segment_start(seg)), b.center);
            b.end_angle = polar_angle(s(segment_end(seg)), b.center);
            b.orientation = s.reflect ? opposite(a.orientation) : a.orientation;
            out.segments.push_back(b);
        }
    }
    return out;
}

} // namespace swarm
