#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "swarm/ceb.hpp"
#include "swarm/ordering.hpp"

// Slow, independent reference implementations. These deliberately avoid the
// library's code paths so disagreements point at real bugs.

namespace swarm::oracle {

// deterministic test randomness
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed ^ 0x9e3779b97f4a7c15ULL) {}
    std::uint64_t next();
    double unit();               // [0, 1)
    double range(double a, double b);
    int pick(int n);             // [0, n)
};

// minimum circle over all 2- and 3-point supports
Circle brute_enclosing_circle(std::span<const Point> pts);

// exhaustive subset check of the holding definition
bool brute_holds(std::span<const Point> subset, std::span<const Point> pts, const Tolerance& tol);

// nested grid refinement of the distance-sum minimizer
Point grid_weber(std::span<const Point> pts, int levels = 14);

// similarity existence by trying every correspondence (n <= 8)
bool brute_similar(std::span<const Point> a, std::span<const Point> b, double tol_abs);

std::vector<Point> random_points(Rng& rng, int n, double radius = 1.0, double min_sep = 1e-3);

// configurations with k-fold rotational symmetry: k rotated copies of a motif
Configuration rotated_motif(Rng& rng, int copies, int motif_size, Point center);

// whole-configuration regular sets: equal or alternating gaps, random radii
Configuration equiangular_config(Rng& rng, int n, Point center);
Configuration biangular_config(Rng& rng, int n, Point center);

struct Shifted {
    Configuration config;  // with one member rotated off its slot
    int robot = -1;
    Point slot;            // the position the detection must recover
    double shift = 0.0;
    Point center;
};

// Builds a set with an exact centered structure, then rotates one innermost
// member about the structure's center by at most half the minimum separation,
// in the direction that shrinks its smallest angle.
Shifted make_shifted(Rng& rng, int n, bool whole_config);

} // namespace swarm::oracle
