#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "swarm/error.hpp"

namespace swarm {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Single tolerance policy threaded through every real-number comparison.
/// eps_len is relative to a caller-supplied scale, eps_ang is absolute radians.
struct Tolerance {
    double eps_len = 1e-9;
    double eps_ang = 1e-9;

    bool len_eq(double a, double b, double scale) const {
        return std::abs(a - b) <= eps_len * std::max(scale, 1e-300);
    }
    bool ang_eq(double a, double b) const;
};

struct Point {
    double x = 0.0;
    double y = 0.0;

    Point operator+(Point o) const { return {x + o.x, y + o.y}; }
    Point operator-(Point o) const { return {x - o.x, y - o.y}; }
    Point operator*(double s) const { return {x * s, y * s}; }
    Point operator/(double s) const { return {x / s, y / s}; }
    bool operator==(const Point&) const = default;

    double norm() const { return std::hypot(x, y); }
};

inline double dist(Point a, Point b) { return (a - b).norm(); }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }

struct Circle {
    Point center;
    double radius = 0.0;

    bool contains(Point p, double slack) const { return dist(center, p) <= radius + slack; }
};

enum class Orientation { Clockwise, CounterClockwise };

inline Orientation opposite(Orientation o) {
    return o == Orientation::Clockwise ? Orientation::CounterClockwise : Orientation::Clockwise;
}

/// Wraps an angle into [0, 2*pi).
double wrap_angle(double a);

/// Polar angle of p around center, counterclockwise from +x, in [0, 2*pi).
double polar_angle(Point p, Point center);

/// Angle swept from ray v->u to ray v->w in the given orientation, in [0, 2*pi).
/// Throws DegenerateAngle when u == v or w == v.
double angle(Point u, Point v, Point w, Orientation o);

/// Smaller of the two sweep orientations, in [0, pi].
double min_angle(Point u, Point v, Point w);

/// Smallest enclosing circle (Welzl, randomized incremental with move-to-front).
Circle smallest_enclosing_circle(std::span<const Point> points);

bool circle_eq(const Circle& a, const Circle& b, const Tolerance& tol);

/// True iff removing some nonempty B within subset changes the smallest enclosing
/// circle of points. Throws NotASubset if subset is not contained in points.
bool holds_enclosing_circle(std::span<const Point> subset, std::span<const Point> points,
                            const Tolerance& tol);

/// Orientation-preserving or reflecting similarity p -> scale*R(rotation)*(reflect? conj(p) : p) + translation.
struct Similarity {
    double scale = 1.0;
    double rotation = 0.0;
    bool reflect = false;
    Point translation;

    Point operator()(Point p) const;
    Similarity inverse() const;
};

/// Composition: (a * b)(p) == a(b(p)).
Similarity compose(const Similarity& a, const Similarity& b);

/// Searches for a similarity mapping multiset A onto multiset B within tol.
/// Throws SizeMismatch when |A| != |B|.
std::optional<Similarity> find_similarity(std::span<const Point> a, std::span<const Point> b,
                                          const Tolerance& tol);

/// Minimizer of the summed distances to all points (Weiszfeld iteration with
/// vertex handling, Newton-polished). step_tol is relative to the point spread.
Point weber_point(std::span<const Point> points, double step_tol = 1e-12);

/// The unique point around which the circular gap sequence of the points is
/// periodic with period p < n dividing n, if such a point exists.
std::optional<Point> center_of_regularity(std::span<const Point> points, const Tolerance& tol);

/// Angular gaps of points around center, starting from the point with the
/// smallest polar angle, counterclockwise. Helper shared by the regularity tests.
std::vector<double> circular_gaps(std::span<const Point> points, Point center);

/// Minimal period p dividing n of a circular sequence, under angle tolerance.
int cyclic_period(std::span<const double> gaps, double eps);

} // namespace swarm
