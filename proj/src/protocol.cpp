#include "swarm/protocol.hpp"

#include <algorithm>
#include <numeric>

namespace swarm {

const char* phase_name(Phase p) {
    switch (p) {
        case Phase::Termination: return "TERM";
        case Phase::AlmostPatternFormation: return "APF";
        case Phase::FBC1: return "FBC1";
        case Phase::FBC2: return "FBC2";
    }
    return "?";
}

namespace {

double spread_of(std::span<const Point> pts) {
    Point lo = pts[0], hi = pts[0];
    for (Point p : pts) {
        lo.x = std::min(lo.x, p.x);
        lo.y = std::min(lo.y, p.y);
        hi.x = std::max(hi.x, p.x);
        hi.y = std::max(hi.y, p.y);
    }
    return std::max({hi.x - lo.x, hi.y - lo.y, 1e-300});
}

} // namespace

Configuration dedupe_points(const std::vector<Point>& pts, const Tolerance& tol) {
    if (pts.empty()) fail(Errc::BadConfig, "dedupe_points: empty snapshot");
    double eps = tol.eps_len * spread_of(pts) * 4.0;
    std::vector<Point> reps;
    std::vector<int> counts;
    for (Point p : pts) {
        bool merged = false;
        for (std::size_t g = 0; g < reps.size(); ++g) {
            if (dist(reps[g], p) <= eps) {
                reps[g] = (reps[g] * static_cast<double>(counts[g]) + p) /
                          static_cast<double>(counts[g] + 1);
                ++counts[g];
                merged = true;
                break;
            }
        }
        if (!merged) {
            reps.push_back(p);
            counts.push_back(1);
        }
    }
    return Configuration{reps};
}

ExpandedPattern preprocess_pattern(const Pattern& f, const Tolerance& tol) {
    if (f.points.empty()) fail(Errc::InvalidPattern, "pattern: empty");
    for (Point p : f.points)
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            fail(Errc::InvalidPattern, "pattern: non-finite coordinate");

    double sc = spread_of(f.points);
    double eps = std::max(tol.eps_len * sc, 1e-300);

    // group into distinct locations
    std::vector<Point> locations;
    std::vector<int> mult;
    std::vector<int> loc_of(f.points.size());
    for (std::size_t i = 0; i < f.points.size(); ++i) {
        int found = -1;
        for (std::size_t g = 0; g < locations.size(); ++g)
            if (dist(locations[g], f.points[i]) <= eps) found = static_cast<int>(g);
        if (found < 0) {
            locations.push_back(f.points[i]);
            mult.push_back(1);
            loc_of[i] = static_cast<int>(locations.size()) - 1;
        } else {
            ++mult[static_cast<std::size_t>(found)];
            loc_of[i] = found;
        }
    }
    if (locations.size() < 2) fail(Errc::GatheringExcluded, "pattern: single gathering point");

    double d = 1e300;
    for (std::size_t i = 0; i < locations.size(); ++i)
        for (std::size_t j = i + 1; j < locations.size(); ++j)
            d = std::min(d, dist(locations[i], locations[j]));

    ExpandedPattern out;
    out.spacing = d;
    out.had_multiplicity = locations.size() < f.points.size();
    if (!out.had_multiplicity) {
        out.points = f.points;
        out.source.resize(f.points.size());
        for (std::size_t i = 0; i < f.points.size(); ++i) out.source[i] = loc_of[i];
        return out;
    }

    Circle sec = smallest_enclosing_circle(locations);
    Orientation o = Orientation::CounterClockwise;
    {
        ConfigurationOrder of = partial_order(Configuration{locations}, tol);
        o = of.min_systems[canonical_system_index(of)].second;
    }
    double sign = o == Orientation::CounterClockwise ? 1.0 : -1.0;

    for (std::size_t g = 0; g < locations.size(); ++g) {
        Point p = locations[g];
        out.points.push_back(p);
        out.source.push_back(static_cast<int>(g));
        if (mult[g] == 1) continue;
        double rho = dist(p, sec.center);
        if (rho <= eps)
            fail(Errc::InvalidPattern, "pattern: multiplicity point at the pattern center");
        double base = polar_angle(p, sec.center);
        for (int i = 1; i < mult[g]; ++i) {
            double chord = d / (4.0 * i);
            if (chord >= 2.0 * rho)
                fail(Errc::InvalidPattern, "pattern: multiplicity point too close to the center");
            double delta = 2.0 * std::asin(chord / (2.0 * rho));
            double a = base + sign * delta;
            out.points.push_back(sec.center + Point{std::cos(a), std::sin(a)} * rho);
            out.source.push_back(static_cast<int>(g));
        }
    }
    return out;
}

namespace {

// ---------------------------------------------------------------------------
// shared frame for the deterministic phases

struct Frame {
    Circle sec;
    ConfigurationOrder order;
    int r1 = -1;
    int r2 = -1;
    Orientation o = Orientation::CounterClockwise;
    double zero = 0.0; // polar angle of r2

    double sign() const { return o == Orientation::CounterClockwise ? 1.0 : -1.0; }
    double ang(Point x) const { return wrap_angle(sign() * (polar_angle(x, sec.center) - zero)); }
    Point at(double frame_angle, double radius) const {
        double a = zero + sign() * frame_angle;
        return sec.center + Point{std::cos(a), std::sin(a)} * radius;
    }
};

std::optional<Frame> make_frame(const Configuration& p, const Tolerance& tol) {
    Frame f;
    f.order = partial_order(p, tol);
    if (!f.order.total) return std::nullopt;
    f.sec = smallest_enclosing_circle(p.robots);
    f.r1 = f.order.ranked[0];
    f.r2 = f.order.ranked[1];
    f.o = f.order.min_systems[canonical_system_index(f.order)].second;
    f.zero = polar_angle(p.robots[static_cast<std::size_t>(f.r2)], f.sec.center);
    return f;
}

double radius_of(const Configuration& p, int i, Point c) {
    return dist(p.robots[static_cast<std::size_t>(i)], c);
}

// smallest angular gap between the second pattern point and another pattern
// point on the same circle; effectively infinite when it is alone there
double pattern_gap_at_f2(const std::vector<Point>& ordered, Point cf, double rf,
                         const Tolerance& tol) {
    double gap = kTwoPi;
    double r2 = dist(ordered[1], cf);
    for (std::size_t i = 0; i < ordered.size(); ++i) {
        if (i == 1) continue;
        if (!tol.len_eq(dist(ordered[i], cf), r2, rf)) continue;
        gap = std::min(gap, min_angle(ordered[1], cf, ordered[i]));
    }
    return gap;
}

// ---------------------------------------------------------------------------
// termination

std::vector<int> closest_f_candidates(const std::vector<Point>& pattern, const Tolerance& tol) {
    ConfigurationOrder of = partial_order(Configuration{pattern}, tol);
    for (const std::vector<int>& cls : of.classes) {
        std::vector<int> ok;
        for (int i : cls) {
            Point cand = pattern[static_cast<std::size_t>(i)];
            if (!holds_enclosing_circle(std::span<const Point>(&cand, 1), pattern, tol))
                ok.push_back(i);
        }
        if (!ok.empty()) return ok;
    }
    return {};
}

bool matches_pattern_minus_one(const Configuration& v, int drop, const Pattern& f,
                               const Tolerance& tol) {
    if (v.size() != f.size()) return false;
    std::vector<Point> rest;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (static_cast<int>(i) != drop) rest.push_back(v.robots[i]);
    for (int fi : closest_f_candidates(f.points, tol)) {
        std::vector<Point> fr;
        for (std::size_t i = 0; i < f.points.size(); ++i)
            if (static_cast<int>(i) != fi) fr.push_back(f.points[i]);
        if (find_similarity(rest, fr, tol)) return true;
    }
    return false;
}

struct MultiplicityView {
    std::vector<Point> slot;      // aligned expanded points, input order
    std::vector<Point> location;  // aligned original locations
    int f1_location = -1;
    double d_world = 0.0; // expanded spacing in configuration units
};

std::optional<MultiplicityView> multiplicity_view(const Configuration& v, const ExpandedPattern& ft,
                                                  const Tolerance& tol) {
    if (v.size() < 2) return std::nullopt;
    MultiplicityView mv;
    mv.slot = align_pattern_by_index(v, ft.points, tol);
    int locs = 1 + *std::max_element(ft.source.begin(), ft.source.end());
    mv.location.assign(static_cast<std::size_t>(locs), Point{});
    std::vector<bool> anchored(static_cast<std::size_t>(locs), false);
    Circle secf = smallest_enclosing_circle(ft.points);
    for (std::size_t i = 0; i < ft.points.size(); ++i) {
        // the anchor of a location is the expanded point placed exactly on it
        std::size_t g = static_cast<std::size_t>(ft.source[i]);
        if (!anchored[g]) {
            anchored[g] = true;
            mv.location[g] = mv.slot[i];
        }
    }
    std::vector<int> ord = pattern_order_indices(ft.points, tol);
    mv.f1_location = ft.source[static_cast<std::size_t>(ord[0])];
    double scale = smallest_enclosing_circle(v.robots).radius / std::max(secf.radius, 1e-300);
    mv.d_world = ft.spacing * scale;
    return mv;
}

bool termination_ready_multiplicity(const Configuration& v, int r1, const ExpandedPattern& ft,
                                    const Tolerance& tol) {
    std::optional<MultiplicityView> mv = multiplicity_view(v, ft, tol);
    if (!mv) return false;
    double r = smallest_enclosing_circle(v.robots).radius;
    double eps = std::max(tol.eps_len * r * 100.0, 1e-9 * r);
    Point r1p = v.robots[static_cast<std::size_t>(r1)];

    // every target location except the first must already host a robot
    for (std::size_t g = 0; g < mv->location.size(); ++g) {
        if (static_cast<int>(g) == mv->f1_location) continue;
        bool hosted = false;
        for (Point q : v.robots)
            if (dist(q, mv->location[g]) <= eps) hosted = true;
        if (!hosted) return false;
    }
    // every other robot must sit within a quarter spacing of a working slot
    double limit = mv->d_world / 4.0 + eps;
    std::vector<int> ord = pattern_order_indices(ft.points, tol);
    for (Point q : v.robots) {
        if (q == r1p) continue;
        double best = 1e300;
        for (std::size_t i = 0; i < mv->slot.size(); ++i) {
            if (static_cast<int>(i) == ord[0]) continue;
            best = std::min(best, dist(q, mv->slot[i]));
        }
        if (best > limit) return false;
    }
    return true;
}

Phase classify_config(const Configuration& v, const Pattern& f, const ExpandedPattern& ft,
                      const Tolerance& tol) {
    if (v.size() >= 2) {
        ConfigurationOrder order = partial_order(v, tol);
        if (order.total) {
            int r1 = order.ranked[0];
            if (!ft.had_multiplicity) {
                if (matches_pattern_minus_one(v, r1, f, tol)) return Phase::Termination;
            } else {
                if (termination_ready_multiplicity(v, r1, ft, tol)) return Phase::Termination;
            }
        }
    }
    if (v.size() >= 2 && is_guided(v, ft.points, tol)) return Phase::AlmostPatternFormation;
    if (detect_shifted(v, tol)) return Phase::FBC1;
    return Phase::FBC2;
}

// ---------------------------------------------------------------------------
// movement helpers

// ordered radii strictly below `radius` (robot circles and an optional floor)
double lower_constraint(const Configuration& p, Point c, double radius, double floor_radius,
                        double eps) {
    double lo = floor_radius;
    for (std::size_t i = 0; i < p.size(); ++i) {
        double ri = dist(p.robots[i], c);
        if (ri < radius - eps) lo = std::max(lo, ri);
    }
    return lo;
}

double upper_constraint(const Configuration& p, Point c, double radius, double ceil_radius,
                        double eps) {
    double hi = ceil_radius;
    for (std::size_t i = 0; i < p.size(); ++i) {
        double ri = dist(p.robots[i], c);
        if (ri > radius + eps) hi = std::min(hi, ri);
    }
    return hi;
}

Trajectory radial_to(Point c, Point from, double target_radius) {
    double r = dist(from, c);
    if (r <= 0) return {};
    Point to = c + (from - c) * (target_radius / r);
    return make_radial(from, to);
}

// arc on the robot's own circle toward a frame angle, staying on the same
// side of the zero ray, yielding half the distance to a blocking robot on the
// same circle, and capped so the enclosing circle survives when on it
Trajectory circle_move(const Frame& fr, const Configuration& p, int self, double target,
                       const Tolerance& tol) {
    Point me = p.robots[static_cast<std::size_t>(self)];
    double radius = dist(me, fr.sec.center);
    double cur = fr.ang(me);
    if (std::abs(target - cur) <= tol.eps_ang) return {};
    bool up = target > cur;
    double span = std::abs(target - cur);

    double eps_r = tol.eps_len * fr.sec.radius * 100.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (static_cast<int>(i) == self) continue;
        if (std::abs(dist(p.robots[i], fr.sec.center) - radius) > eps_r) continue;
        double a = fr.ang(p.robots[i]);
        double ahead = up ? a - cur : cur - a;
        if (ahead > tol.eps_ang && ahead < span + tol.eps_ang) span = std::min(span, ahead / 2.0);
    }

    bool on_sec = std::abs(radius - fr.sec.radius) <= eps_r;
    if (on_sec) {
        // the gap opening behind must not exceed pi
        double behind = kTwoPi;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (static_cast<int>(i) == self) continue;
            if (std::abs(dist(p.robots[i], fr.sec.center) - fr.sec.radius) > eps_r) continue;
            double a = fr.ang(p.robots[i]);
            double back = up ? cur - a : a - cur;
            back = wrap_angle(back);
            behind = std::min(behind, back);
        }
        if (behind < kTwoPi) span = std::min(span, std::max(0.0, kTwoPi / 2.0 - behind));
    }

    if (span <= tol.eps_ang) return {};
    Orientation dir = up ? fr.o : opposite(fr.o);
    return make_arc(fr.sec.center, me, span, dir);
}

// ---------------------------------------------------------------------------
// almost pattern formation

struct ApfContext {
    Frame fr;
    std::vector<Point> aligned;  // expanded pattern, canonical order, global frame
    std::vector<double> radii;   // distinct working-circle radii, largest first
    std::vector<int> quota;      // pattern points per circle
    double eps_r;

    int circle_of(double r) const {
        for (std::size_t i = 0; i < radii.size(); ++i)
            if (std::abs(r - radii[i]) <= eps_r) return static_cast<int>(i);
        return -1;
    }
};

ApfContext make_apf_context(const Configuration& p, const Frame& fr, const ExpandedPattern& ft,
                            const Tolerance& tol) {
    ApfContext ctx;
    ctx.fr = fr;
    ctx.aligned = align_pattern(p, ft.points, tol);
    ctx.eps_r = std::max(tol.eps_len * fr.sec.radius * 100.0, 1e-12 * fr.sec.radius);
    std::vector<double> rs;
    for (std::size_t i = 1; i < ctx.aligned.size(); ++i)
        rs.push_back(dist(ctx.aligned[i], fr.sec.center));
    std::sort(rs.rbegin(), rs.rend());
    for (double r : rs) {
        if (!ctx.radii.empty() && std::abs(ctx.radii.back() - r) <= ctx.eps_r) {
            ++ctx.quota.back();
        } else {
            ctx.radii.push_back(r);
            ctx.quota.push_back(1);
        }
    }
    return ctx;
}

std::vector<int> robots_on_circle(const ApfContext& ctx, const Configuration& p, int i) {
    std::vector<int> out;
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (static_cast<int>(k) == ctx.fr.r1) continue;
        if (std::abs(dist(p.robots[k], ctx.fr.sec.center) - ctx.radii[static_cast<std::size_t>(i)]) <=
            ctx.eps_r)
            out.push_back(static_cast<int>(k));
    }
    return out;
}

std::vector<int> robots_between(const ApfContext& ctx, const Configuration& p, double hi, double lo) {
    std::vector<int> out;
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (static_cast<int>(k) == ctx.fr.r1) continue;
        double r = dist(p.robots[k], ctx.fr.sec.center);
        if (r < hi - ctx.eps_r && r > lo + ctx.eps_r) out.push_back(static_cast<int>(k));
    }
    return out;
}

std::vector<int> robots_inside(const ApfContext& ctx, const Configuration& p, double hi) {
    std::vector<int> out;
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (static_cast<int>(k) == ctx.fr.r1) continue;
        if (dist(p.robots[k], ctx.fr.sec.center) < hi - ctx.eps_r) out.push_back(static_cast<int>(k));
    }
    return out;
}

int extreme_by_rank(const std::vector<int>& ids, const ConfigurationOrder& order, bool smallest) {
    if (ids.empty()) return -1;
    std::vector<int> rank(order.ranked.size());
    for (std::size_t pos = 0; pos < order.ranked.size(); ++pos)
        rank[static_cast<std::size_t>(order.ranked[pos])] = static_cast<int>(pos);
    int best = ids[0];
    for (int id : ids) {
        bool better = smallest ? rank[static_cast<std::size_t>(id)] < rank[static_cast<std::size_t>(best)]
                               : rank[static_cast<std::size_t>(id)] > rank[static_cast<std::size_t>(best)];
        if (better) best = id;
    }
    return best;
}

// pattern slots (frame angles) on circle i, ascending
std::vector<double> slot_angles(const ApfContext& ctx, int i) {
    std::vector<double> out;
    for (std::size_t k = 1; k < ctx.aligned.size(); ++k) {
        double r = dist(ctx.aligned[k], ctx.fr.sec.center);
        if (std::abs(r - ctx.radii[static_cast<std::size_t>(i)]) <= ctx.eps_r)
            out.push_back(ctx.fr.ang(ctx.aligned[k]));
    }
    std::sort(out.begin(), out.end());
    return out;
}

// cleanExterior: push the strays between consecutive working circles inward
std::optional<Trajectory> clean_exterior(const ApfContext& ctx, const Configuration& p, int self,
                                         int i, const Tolerance& tol) {
    if (i == 0) return std::nullopt;
    std::vector<int> strays =
        robots_between(ctx, p, ctx.radii[static_cast<std::size_t>(i - 1)], ctx.radii[static_cast<std::size_t>(i)]);
    if (strays.empty()) return std::nullopt;
    int mover = extreme_by_rank(strays, ctx.fr.order, true);
    if (mover != self) return Trajectory{};
    Point me = p.robots[static_cast<std::size_t>(self)];
    Point c = ctx.fr.sec.center;
    double my_r = dist(me, c);
    double ci = ctx.radii[static_cast<std::size_t>(i)];

    bool shared = false;
    for (std::size_t k = 0; k < p.size(); ++k)
        if (static_cast<int>(k) != self && std::abs(dist(p.robots[k], c) - my_r) <= ctx.eps_r)
            shared = true;
    if (shared) {
        double lo = lower_constraint(p, c, my_r, ci, ctx.eps_r);
        return radial_to(c, me, (my_r + lo) / 2.0);
    }
    std::vector<int> on = robots_on_circle(ctx, p, i);
    double a = 0.0;
    for (int id : on) a = std::max(a, ctx.fr.ang(p.robots[static_cast<std::size_t>(id)]));
    double upper = kTwoPi;
    if (i + 1 == static_cast<int>(ctx.radii.size())) {
        Point r1p = p.robots[static_cast<std::size_t>(ctx.fr.r1)];
        if (dist(r1p, c) > tol.eps_len * ctx.fr.sec.radius)
            upper = kTwoPi - min_angle(r1p, c, p.robots[static_cast<std::size_t>(ctx.fr.r2)]);
    }
    double my_a = ctx.fr.ang(me);
    if (my_a > a && my_a < upper) return radial_to(c, me, ci);
    return circle_move(ctx.fr, p, self, (a + upper) / 2.0, tol);
}

std::optional<Trajectory> locate_enough(const ApfContext& ctx, const Configuration& p, int self,
                                        int i, const Tolerance& tol) {
    std::vector<int> on = robots_on_circle(ctx, p, i);
    if (static_cast<int>(on.size()) >= ctx.quota[static_cast<std::size_t>(i)]) return std::nullopt;
    std::vector<int> inside = robots_inside(ctx, p, ctx.radii[static_cast<std::size_t>(i)]);
    if (inside.empty()) return std::nullopt; // transient shortage, another stage will restock
    int mover = extreme_by_rank(inside, ctx.fr.order, false);
    if (mover != self) return Trajectory{};
    Point me = p.robots[static_cast<std::size_t>(self)];
    Point c = ctx.fr.sec.center;
    double my_r = dist(me, c);
    double ci = ctx.radii[static_cast<std::size_t>(i)];

    bool shared = false;
    for (std::size_t k = 0; k < p.size(); ++k)
        if (static_cast<int>(k) != self && std::abs(dist(p.robots[k], c) - my_r) <= ctx.eps_r)
            shared = true;
    if (shared) {
        double hi = upper_constraint(p, c, my_r, ci, ctx.eps_r);
        return radial_to(c, me, (my_r + hi) / 2.0);
    }
    double a = kTwoPi;
    for (int id : on) a = std::min(a, ctx.fr.ang(p.robots[static_cast<std::size_t>(id)]));
    double my_a = ctx.fr.ang(me);
    if (my_a < a || on.empty()) return radial_to(c, me, ci);
    return circle_move(ctx.fr, p, self, a / 2.0, tol);
}

std::optional<Trajectory> remove_excess(const ApfContext& ctx, const Configuration& p, int self,
                                        int i, const Tolerance& tol) {
    std::vector<int> on = robots_on_circle(ctx, p, i);
    int quota = ctx.quota[static_cast<std::size_t>(i)];
    if (static_cast<int>(on.size()) <= quota) return std::nullopt;
    Point c = ctx.fr.sec.center;
    double ci = ctx.radii[static_cast<std::size_t>(i)];

    if (i > 0) {
        int mover = extreme_by_rank(on, ctx.fr.order, true);
        if (mover != self) return Trajectory{};
        double next = i + 1 < static_cast<int>(ctx.radii.size())
                          ? ctx.radii[static_cast<std::size_t>(i + 1)]
                          : radius_of(p, ctx.fr.r1, c);
        double lo = lower_constraint(p, c, ci, next, ctx.eps_r);
        return radial_to(c, p.robots[static_cast<std::size_t>(self)], (ci + lo) / 2.0);
    }

    // outermost circle: the excess leaves only once the largest robots pin the
    // circle as a regular polygon symmetric about the zero ray
    std::sort(on.begin(), on.end(), [&](int a, int b) {
        return ctx.fr.ang(p.robots[static_cast<std::size_t>(a)]) < ctx.fr.ang(p.robots[static_cast<std::size_t>(b)]);
    });
    int b = static_cast<int>(on.size()) - quota;
    std::vector<double> slots;
    for (int j = 1; j <= b; ++j)
        slots.push_back(static_cast<double>(j) * (kTwoPi / 2.0) / (quota * (b + 1)));
    for (int k = 0; k < quota; ++k)
        slots.push_back((2.0 * k + 1.0) * (kTwoPi / 2.0) / quota);

    bool gon_formed = true;
    for (int k = 0; k < quota; ++k) {
        double want = slots[static_cast<std::size_t>(b + k)];
        double have = ctx.fr.ang(p.robots[static_cast<std::size_t>(on[static_cast<std::size_t>(b + k)])]);
        if (std::abs(want - have) > tol.eps_ang * 100.0) gon_formed = false;
    }
    if (gon_formed) {
        int mover = on[0]; // smallest angle = smallest robot on the circle
        if (mover != self) return Trajectory{};
        double next = ctx.radii.size() > 1 ? ctx.radii[1] : radius_of(p, ctx.fr.r1, c);
        double lo = lower_constraint(p, c, ci, next, ctx.eps_r);
        return radial_to(c, p.robots[static_cast<std::size_t>(self)], (ci + lo) / 2.0);
    }
    for (std::size_t k = 0; k < on.size(); ++k) {
        if (on[k] != self) continue;
        return circle_move(ctx.fr, p, self, slots[k], tol);
    }
    return Trajectory{};
}

std::optional<Trajectory> fix_enclosing(const ApfContext& ctx, const Configuration& p, int self,
                                        const Tolerance& tol) {
    if (ctx.quota[0] != 2) return std::nullopt;
    std::vector<int> on = robots_on_circle(ctx, p, 0);
    std::vector<double> slots = slot_angles(ctx, 0);
    Point c = ctx.fr.sec.center;

    auto at_slot = [&](int id, double slot) {
        return std::abs(ctx.fr.ang(p.robots[static_cast<std::size_t>(id)]) - slot) <= tol.eps_ang * 10.0;
    };
    if (on.size() == 2) {
        bool placed = (at_slot(on[0], slots[0]) && at_slot(on[1], slots[1])) ||
                      (at_slot(on[0], slots[1]) && at_slot(on[1], slots[0]));
        if (placed) return std::nullopt;
        // fewer than three on the circle: raise one more before rearranging
        std::vector<int> inside = robots_inside(ctx, p, ctx.radii[0]);
        if (inside.empty()) return Trajectory{};
        int mover = extreme_by_rank(inside, ctx.fr.order, false);
        if (mover != self) return Trajectory{};
        Point me = p.robots[static_cast<std::size_t>(self)];
        double my_r = dist(me, c);
        bool shared = false;
        for (std::size_t k = 0; k < p.size(); ++k)
            if (static_cast<int>(k) != self && std::abs(dist(p.robots[k], c) - my_r) <= ctx.eps_r)
                shared = true;
        if (shared) {
            double hi = upper_constraint(p, c, my_r, ctx.radii[0], ctx.eps_r);
            return radial_to(c, me, (my_r + hi) / 2.0);
        }
        double a = kTwoPi;
        for (int id : on) a = std::min(a, ctx.fr.ang(p.robots[static_cast<std::size_t>(id)]));
        if (ctx.fr.ang(me) < a) return radial_to(c, me, ctx.radii[0]);
        return circle_move(ctx.fr, p, self, a / 2.0, tol);
    }

    // three or more on the circle: greatest and smallest head for the two
    // boundary slots, the rest spread out in between, then leave smallest-first
    std::sort(on.begin(), on.end(), [&](int a, int b) {
        return ctx.fr.ang(p.robots[static_cast<std::size_t>(a)]) < ctx.fr.ang(p.robots[static_cast<std::size_t>(b)]);
    });
    int great = on.back();
    int small = on.front();
    if (at_slot(great, slots[1]) && at_slot(small, slots[0])) {
        int mover = on[1]; // second smallest leaves first
        if (mover != self) return Trajectory{};
        double next = ctx.radii.size() > 1 ? ctx.radii[1] : radius_of(p, ctx.fr.r1, c);
        double lo = lower_constraint(p, c, ctx.radii[0], next, ctx.eps_r);
        return radial_to(c, p.robots[static_cast<std::size_t>(self)], (ctx.radii[0] + lo) / 2.0);
    }
    std::vector<double> targets;
    targets.push_back(slots[0]);
    for (std::size_t j = 1; j + 1 < on.size(); ++j)
        targets.push_back(slots[0] + static_cast<double>(j) * (slots[1] - slots[0]) /
                                          static_cast<double>(on.size() - 1));
    targets.push_back(slots[1]);
    for (std::size_t k = 0; k < on.size(); ++k)
        if (on[k] == self) return circle_move(ctx.fr, p, self, targets[k], tol);
    return Trajectory{};
}

std::optional<Trajectory> rotate_on_circles(const ApfContext& ctx, const Configuration& p, int self,
                                            const Tolerance& tol) {
    Point c = ctx.fr.sec.center;
    double my_r = dist(p.robots[static_cast<std::size_t>(self)], c);
    int i = ctx.circle_of(my_r);
    if (i < 0) return Trajectory{};
    std::vector<int> on = robots_on_circle(ctx, p, i);
    std::vector<double> slots = slot_angles(ctx, i);
    if (on.size() != slots.size()) return Trajectory{};
    std::sort(on.begin(), on.end(), [&](int a, int b) {
        return ctx.fr.ang(p.robots[static_cast<std::size_t>(a)]) < ctx.fr.ang(p.robots[static_cast<std::size_t>(b)]);
    });
    for (std::size_t k = 0; k < on.size(); ++k)
        if (on[k] == self) return circle_move(ctx.fr, p, self, slots[k], tol);
    return Trajectory{};
}

Trajectory apf_move_impl(const Configuration& p, int self, const ExpandedPattern& ft,
                         const Tolerance& tol) {
    std::optional<Frame> fr = make_frame(p, tol);
    if (!fr) return {};
    if (self == fr->r1) return {};
    ApfContext ctx = make_apf_context(p, *fr, ft, tol);

    // clear the zero ray first so staged placements stay unambiguous
    {
        std::vector<int> movers;
        for (std::size_t k = 0; k < p.size(); ++k) {
            int id = static_cast<int>(k);
            if (id == fr->r1 || id == fr->r2) continue;
            if (fr->ang(p.robots[k]) <= tol.eps_ang) movers.push_back(id);
        }
        if (!movers.empty()) {
            for (int id : movers) {
                if (id != self) continue;
                double my_r = dist(p.robots[static_cast<std::size_t>(id)], fr->sec.center);
                double a = kTwoPi / 16.0;
                for (std::size_t k = 0; k < p.size(); ++k) {
                    if (static_cast<int>(k) == id) continue;
                    if (std::abs(dist(p.robots[k], fr->sec.center) - my_r) > ctx.eps_r) continue;
                    double other = fr->ang(p.robots[k]);
                    if (other > tol.eps_ang) a = std::min(a, other / 2.0);
                }
                return circle_move(*fr, p, self, a, tol);
            }
            return {};
        }
    }

    if (auto t = fix_enclosing(ctx, p, self, tol)) return *t;
    for (int i = 0; i < static_cast<int>(ctx.radii.size()); ++i) {
        if (auto t = clean_exterior(ctx, p, self, i, tol)) return *t;
        if (auto t = locate_enough(ctx, p, self, i, tol)) return *t;
        if (auto t = remove_excess(ctx, p, self, i, tol)) return *t;
    }
    if (auto t = rotate_on_circles(ctx, p, self, tol)) return *t;
    return {};
}

// ---------------------------------------------------------------------------
// termination moves

Trajectory termination_move_impl(const Configuration& p, int self, const ExpandedPattern& ft,
                                 const Tolerance& tol) {
    std::optional<Frame> fr = make_frame(p, tol);
    if (!fr) return {};
    double eps = std::max(tol.eps_len * fr->sec.radius * 100.0, 1e-9 * fr->sec.radius);
    Point me = p.robots[static_cast<std::size_t>(self)];

    if (!ft.had_multiplicity) {
        std::vector<Point> slots = align_pattern(p, ft.points, tol);
        auto at_some_slot = [&](Point q, std::size_t skip_first) {
            for (std::size_t i = skip_first; i < slots.size(); ++i)
                if (dist(q, slots[i]) <= eps) return static_cast<int>(i);
            return -1;
        };
        bool others_placed = true;
        for (std::size_t k = 0; k < p.size(); ++k)
            if (static_cast<int>(k) != fr->r1 && at_some_slot(p.robots[k], 1) < 0)
                others_placed = false;
        if (others_placed) {
            if (self != fr->r1) return {};
            if (dist(me, slots[0]) <= eps) return {};
            return make_line(me, slots[0]);
        }
        if (self == fr->r1) return {};
        if (at_some_slot(me, 1) >= 0) return {};
        // arc home on the own circle
        double my_r = dist(me, fr->sec.center);
        double best = 1e300;
        Point target{};
        for (std::size_t i = 1; i < slots.size(); ++i) {
            if (std::abs(dist(slots[i], fr->sec.center) - my_r) > eps) continue;
            double d = dist(slots[i], me);
            if (d < best) {
                best = d;
                target = slots[i];
            }
        }
        if (best == 1e300) return {};
        double sweep = min_angle(me, fr->sec.center, target);
        double ccw = angle(me, fr->sec.center, target, Orientation::CounterClockwise);
        Orientation o = ccw <= kTwoPi - ccw ? Orientation::CounterClockwise : Orientation::Clockwise;
        return make_arc(fr->sec.center, me, sweep, o);
    }

    std::optional<MultiplicityView> mv = multiplicity_view(p, ft, tol);
    if (!mv) return {};
    auto at_location = [&](Point q) {
        for (std::size_t g = 0; g < mv->location.size(); ++g)
            if (dist(q, mv->location[g]) <= eps) return static_cast<int>(g);
        return -1;
    };
    if (self != fr->r1) {
        if (at_location(me) >= 0) return {};
        double best = 1e300;
        Point target{};
        for (Point loc : mv->location) {
            double d = dist(loc, me);
            if (d < best) {
                best = d;
                target = loc;
            }
        }
        double sweep = min_angle(me, fr->sec.center, target);
        double ccw = angle(me, fr->sec.center, target, Orientation::CounterClockwise);
        Orientation o = ccw <= kTwoPi - ccw ? Orientation::CounterClockwise : Orientation::Clockwise;
        return make_arc(fr->sec.center, me, sweep, o);
    }
    for (std::size_t k = 0; k < p.size(); ++k)
        if (static_cast<int>(k) != fr->r1 && at_location(p.robots[k]) < 0) return {};
    Point dest = mv->location[static_cast<std::size_t>(mv->f1_location)];
    if (dist(me, dest) <= eps) return {};
    return make_line(me, dest);
}

// ---------------------------------------------------------------------------
// FBC1

struct BGuard {
    bool active = false;
    std::vector<int> movers;
    double target = 0.0;
    double cap = 1e300; // destinations at or beyond this radius are frozen
};

BGuard b_guard(const Configuration& p, const CebSet& ceb, const ExpandedPattern& ft,
               const Tolerance& tol) {
    BGuard g;
    Point c = ceb.center;
    double r_world = smallest_enclosing_circle(p.robots).radius;
    Circle secf = smallest_enclosing_circle(ft.points);
    double sf = r_world / std::max(secf.radius, 1e-300);
    double eps = std::max(tol.eps_len * r_world * 1000.0, 1e-8 * r_world);

    std::vector<int> outsiders;
    std::vector<bool> member(p.size(), false);
    for (int m : ceb.members) member[static_cast<std::size_t>(m)] = true;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (!member[i]) outsiders.push_back(static_cast<int>(i));

    std::vector<double> f_rad(ft.points.size()), f_ang(ft.points.size());
    for (std::size_t i = 0; i < ft.points.size(); ++i) {
        f_rad[i] = dist(ft.points[i], secf.center) * sf;
        f_ang[i] = polar_angle(ft.points[i], secf.center);
    }

    // candidate rotations take one pattern point onto one outside robot (any
    // pairing when every robot is a member)
    std::vector<double> rotations;
    auto add_rot = [&](double r) {
        r = wrap_angle(r);
        for (double q : rotations)
            if (std::abs(q - r) < 1e-9 || kTwoPi - std::abs(q - r) < 1e-9) return;
        rotations.push_back(r);
    };
    const std::vector<int>& anchors = outsiders.empty() ? ceb.members : outsiders;
    for (int b : anchors) {
        Point rb = p.robots[static_cast<std::size_t>(b)];
        double rr = dist(rb, c);
        for (std::size_t a = 0; a < ft.points.size(); ++a) {
            if (std::abs(f_rad[a] - rr) > eps && !outsiders.empty()) continue;
            add_rot(polar_angle(rb, c) - f_ang[a]);
        }
    }

    for (double rot : rotations) {
        std::vector<Point> placed(ft.points.size());
        for (std::size_t a = 0; a < ft.points.size(); ++a) {
            double ang_a = f_ang[a] + rot;
            placed[a] = c + Point{std::cos(ang_a), std::sin(ang_a)} * f_rad[a];
        }
        // outsiders must all stand on pattern points
        std::vector<bool> used(placed.size(), false);
        bool all = true;
        for (int b : outsiders) {
            bool hit = false;
            for (std::size_t a = 0; a < placed.size() && !hit; ++a) {
                if (used[a]) continue;
                if (dist(placed[a], p.robots[static_cast<std::size_t>(b)]) <= eps) {
                    used[a] = true;
                    hit = true;
                }
            }
            if (!hit) all = false;
        }
        if (!all) continue;
        std::vector<std::size_t> remaining;
        for (std::size_t a = 0; a < placed.size(); ++a)
            if (!used[a]) remaining.push_back(a);
        // all but one remaining point must share a ray with a distinct member
        int aligned = 0;
        std::vector<bool> taken(p.size(), false);
        for (std::size_t a : remaining) {
            for (int m : ceb.members) {
                if (taken[static_cast<std::size_t>(m)]) continue;
                Point rm = p.robots[static_cast<std::size_t>(m)];
                if (dist(rm, c) <= eps) continue;
                double da = std::abs(wrap_angle(polar_angle(rm, c) - wrap_angle(f_ang[a] + rot)));
                da = std::min(da, kTwoPi - da);
                if (da <= 1e-6) {
                    taken[static_cast<std::size_t>(m)] = true;
                    ++aligned;
                    break;
                }
            }
        }
        if (aligned + 1 < static_cast<int>(remaining.size())) continue;

        double d1 = 0.0;
        for (std::size_t a : remaining) d1 = std::max(d1, f_rad[a]);
        double d2 = 0.0;
        for (std::size_t a : remaining)
            if (f_rad[a] < d1 - eps) d2 = std::max(d2, f_rad[a]);
        if (d2 == 0.0) d2 = d1; // every remaining point sits on one circle
        double d = (d1 + d2) / 2.0;

        g.active = true;
        for (int m : ceb.members)
            if (dist(p.robots[static_cast<std::size_t>(m)], c) > d1 + eps) g.movers.push_back(m);
        if (!g.movers.empty()) {
            g.target = d1;
            return g;
        }
        for (int m : ceb.members) {
            double rm = dist(p.robots[static_cast<std::size_t>(m)], c);
            if (rm > d + eps && rm <= d1 + eps) g.movers.push_back(m);
        }
        if (!g.movers.empty()) {
            g.target = d;
            return g;
        }
        g.cap = d;
        return g;
    }
    return g;
}

Trajectory fbc1_move_impl(const Configuration& p, int self, const ExpandedPattern& ft,
                          BitSource& bits, const Tolerance& tol) {
    std::optional<CebSet> ceb = detect_shifted(p, tol);
    if (!ceb) return {};
    Point c = ceb->center;
    double r_world = smallest_enclosing_circle(p.robots).radius;
    double eps_r = std::max(tol.eps_len * r_world * 100.0, 1e-10 * r_world);
    Point me = p.robots[static_cast<std::size_t>(self)];

    // theta of the corrected structure: stable while the shifted robot arcs
    Configuration fixed = p;
    if (ceb->shifted) fixed.robots[static_cast<std::size_t>(ceb->shifted->robot)] = ceb->shifted->corrected;
    double th = theta_around(fixed, c);

    std::vector<bool> member(p.size(), false);
    for (int m : ceb->members) member[static_cast<std::size_t>(m)] = true;

    // pattern radii in world units
    std::vector<Point> fo = pattern_order(ft.points, tol);
    Circle secf = smallest_enclosing_circle(ft.points);
    double sf = r_world / std::max(secf.radius, 1e-300);
    double f2 = dist(fo[1], secf.center) * sf;

    if (ceb->shifted) {
        const ShiftInfo& sh = *ceb->shifted;
        int e = sh.robot;
        Point ep = p.robots[static_cast<std::size_t>(e)];
        double er = dist(ep, c);
        double epsilon = sh.shift_angle;
        std::vector<int> joiners;
        for (int m : ceb->members)
            if (m != e && dist(p.robots[static_cast<std::size_t>(m)], c) > er + eps_r) joiners.push_back(m);

        auto arc_to_shift = [&](double target_shift) -> Trajectory {
            double corrected_angle = polar_angle(sh.corrected, c);
            double sign = sh.shift_orientation == Orientation::CounterClockwise ? 1.0 : -1.0;
            double target_angle = corrected_angle + sign * target_shift;
            Point target = c + Point{std::cos(target_angle), std::sin(target_angle)} * er;
            double sweep = min_angle(ep, c, target);
            if (sweep <= tol.eps_ang) return {};
            double ccw = angle(ep, c, target, Orientation::CounterClockwise);
            Orientation o = ccw <= kTwoPi - ccw ? Orientation::CounterClockwise : Orientation::Clockwise;
            return make_arc(c, ep, sweep, o);
        };

        if (epsilon < th / 4.0 - tol.eps_ang * 10.0) {
            if (!joiners.empty()) {
                // members first gather on the shifted robot's circle at the
                // eighth-theta mark, then the shift grows to a quarter
                if (std::abs(epsilon - th / 8.0) <= tol.eps_ang * 10.0) {
                    for (int m : joiners)
                        if (m == self) return radial_to(c, me, er);
                    return {};
                }
                return self == e ? arc_to_shift(th / 8.0) : Trajectory{};
            }
            return self == e ? arc_to_shift(th / 4.0) : Trajectory{};
        }

        // exit: descend, then square the guided preconditions
        double rho2 = 1e300;
        for (int m : ceb->members)
            if (m != e) rho2 = std::min(rho2, dist(p.robots[static_cast<std::size_t>(m)], c));
        double target_e = std::min(rho2 / 2.0, f2 / 2.0);
        if (er > target_e + eps_r) return self == e ? radial_to(c, ep, target_e) : Trajectory{};
        if (rho2 > f2 + eps_r) {
            // second robot must come inside the second pattern circle
            int pick = -1;
            double best = 1e300;
            for (int m : ceb->members) {
                if (m == e) continue;
                double a = min_angle(p.robots[static_cast<std::size_t>(m)], c, ep);
                if (a < best) {
                    best = a;
                    pick = m;
                }
            }
            if (pick == self) return radial_to(c, me, f2);
            return {};
        }
        // remaining blocker can only be the angular condition
        std::optional<Frame> fr = make_frame(p, tol);
        if (fr && self == e) {
            double gap = pattern_gap_at_f2(fo, secf.center, secf.radius, tol);
            Point r2p = p.robots[static_cast<std::size_t>(fr->r2)];
            double a = min_angle(ep, c, r2p);
            if (2.0 * a >= gap - tol.eps_ang) {
                double sweep = a - gap / 4.0;
                if (sweep > tol.eps_ang) {
                    double ccw = angle(ep, c, r2p, Orientation::CounterClockwise);
                    Orientation o =
                        ccw <= kTwoPi - ccw ? Orientation::CounterClockwise : Orientation::Clockwise;
                    return make_arc(c, ep, sweep, o);
                }
            }
        }
        return {};
    }

    // exact set: election
    BGuard guard = b_guard(p, *ceb, ft, tol);
    if (guard.active && !guard.movers.empty()) {
        for (int m : guard.movers)
            if (m == self) return radial_to(c, me, guard.target);
        return {};
    }

    double min_member = 1e300, min_other = 1e300;
    for (int m : ceb->members) {
        double r = dist(p.robots[static_cast<std::size_t>(m)], c);
        if (m != self) min_other = std::min(min_other, r);
        min_member = std::min(min_member, r);
    }
    double my_r = dist(me, c);

    // already elected by distance: mark yourself by arcing an eighth of theta
    for (int m : ceb->members) {
        double r = dist(p.robots[static_cast<std::size_t>(m)], c);
        double others = 1e300;
        for (int m2 : ceb->members)
            if (m2 != m) others = std::min(others, dist(p.robots[static_cast<std::size_t>(m2)], c));
        if (r < (7.0 / 8.0) * others - eps_r) {
            if (m != self) return {};
            // shift toward the angularly nearest robot
            Point mp = p.robots[static_cast<std::size_t>(m)];
            double best = 1e300;
            Point nearest{};
            for (std::size_t k = 0; k < p.size(); ++k) {
                if (static_cast<int>(k) == m) continue;
                if (dist(p.robots[k], c) <= eps_r) continue;
                double a = min_angle(mp, c, p.robots[k]);
                if (a < best) {
                    best = a;
                    nearest = p.robots[k];
                }
            }
            if (best >= 1e300) return {};
            double sweep = th / 8.0;
            double ccw = angle(mp, c, nearest, Orientation::CounterClockwise);
            Orientation o = ccw <= kTwoPi - ccw ? Orientation::CounterClockwise : Orientation::Clockwise;
            return make_arc(c, mp, sweep, o);
        }
    }

    if (!member[static_cast<std::size_t>(self)]) return {};
    if (my_r > min_other + eps_r) return {}; // someone is strictly closer

    // tied near the center: flip a coin
    double d_out = 1e300;
    for (std::size_t k = 0; k < p.size(); ++k)
        if (!member[k]) d_out = std::min(d_out, dist(p.robots[k], c));

    int bit = bits.draw();
    if (bit) return radial_to(c, me, my_r * (7.0 / 8.0));
    double step = my_r / 7.0;
    if (d_out < 1e300) step = std::min(step, (d_out - my_r) / 2.0);
    if (step <= 0) return {};
    if (my_r + step >= guard.cap) return {};
    return radial_to(c, me, my_r + step);
}

// ---------------------------------------------------------------------------
// FBC2

// exact regularity points on the segment from the smallest robot toward the
// center: coarse residual sweep, then golden-section refinement
std::optional<double> sweep_regularity(const Configuration& p, int r1, const Tolerance& tol) {
    Point c = smallest_enclosing_circle(p.robots).center;
    Point a = p.robots[static_cast<std::size_t>(r1)];
    double len = dist(a, c);
    double r_world = smallest_enclosing_circle(p.robots).radius;
    if (len <= tol.eps_len * r_world) return std::nullopt;
    int n = static_cast<int>(p.size());

    auto config_at = [&](double s) {
        Configuration q = p;
        q.robots[static_cast<std::size_t>(r1)] = a + (c - a) * s;
        return q;
    };
    auto residual = [&](double s) -> double {
        Configuration q = config_at(s);
        Point w = weber_point(q.robots, 1e-10);
        for (Point r : q.robots)
            if (dist(r, w) < 1e-9 * r_world) return 1e3;
        std::vector<double> gaps = circular_gaps(q.robots, w);
        double g1 = 0;
        for (double g : gaps) g1 = std::max(g1, std::abs(g - kTwoPi / n));
        double best = g1;
        if (n % 2 == 0) {
            for (int phase = 0; phase < 2; ++phase) {
                double x = 0, y = 0;
                int cx = 0, cy = 0;
                for (int i = 0; i < n; ++i)
                    if (i % 2 == phase) {
                        x += gaps[static_cast<std::size_t>(i)];
                        ++cx;
                    } else {
                        y += gaps[static_cast<std::size_t>(i)];
                        ++cy;
                    }
                x /= cx;
                y /= cy;
                double dev = 0;
                for (int i = 0; i < n; ++i)
                    dev = std::max(dev, std::abs(gaps[static_cast<std::size_t>(i)] - (i % 2 == phase ? x : y)));
                best = std::min(best, dev);
            }
        }
        return best;
    };

    double step = theta(p) * r_world / 1024.0;
    int samples = static_cast<int>(std::clamp(len / std::max(step, 1e-12), 96.0, 4096.0));
    double coarse_best = 1e300;
    for (int k = 1; k < 96; ++k) coarse_best = std::min(coarse_best, residual(k / 96.0));
    if (coarse_best > 0.5) return std::nullopt;

    double prev2 = 1e300, prev1 = 1e300;
    double prev_s = 0.0;
    for (int k = 1; k <= samples; ++k) {
        double s = static_cast<double>(k) / (samples + 1);
        double r = residual(s);
        if (prev1 < prev2 && prev1 < r && prev1 < 0.05) {
            // local minimum near prev_s: refine
            double lo = prev_s - 1.0 / (samples + 1);
            double hi = s;
            const double phi = 0.6180339887498949;
            double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
            double f1 = residual(x1), f2v = residual(x2);
            for (int it = 0; it < 90; ++it) {
                if (f1 < f2v) {
                    hi = x2;
                    x2 = x1;
                    f2v = f1;
                    x1 = hi - phi * (hi - lo);
                    f1 = residual(x1);
                } else {
                    lo = x1;
                    x1 = x2;
                    f1 = f2v;
                    x2 = lo + phi * (hi - lo);
                    f2v = residual(x2);
                }
            }
            double s_star = (lo + hi) / 2.0;
            if (residual(s_star) < 1e-7 && construct_ceb_set(config_at(s_star), tol))
                return s_star;
        }
        prev2 = prev1;
        prev1 = r;
        prev_s = s;
    }
    return std::nullopt;
}

Trajectory fbc2_move_impl(const Configuration& p, int self, const ExpandedPattern& ft,
                          const Tolerance& tol) {
    std::optional<Frame> fr = make_frame(p, tol);
    if (!fr) return {};
    Point c = fr->sec.center;
    double r_world = fr->sec.radius;
    double eps_r = std::max(tol.eps_len * r_world * 100.0, 1e-10 * r_world);
    Point r1p = p.robots[static_cast<std::size_t>(fr->r1)];
    Point r2p = p.robots[static_cast<std::size_t>(fr->r2)];
    double d1 = dist(r1p, c), d2 = dist(r2p, c);

    std::vector<Point> fo = pattern_order(ft.points, tol);
    Circle secf = smallest_enclosing_circle(ft.points);
    double sf = r_world / std::max(secf.radius, 1e-300);
    double f2 = dist(fo[1], secf.center) * sf;
    double gap = pattern_gap_at_f2(fo, secf.center, secf.radius, tol);

    bool c1 = d1 <= d2 / 2.0 + eps_r;
    bool c2 = d2 <= f2 + eps_r;
    double alpha = d1 <= eps_r ? 0.0 : min_angle(r1p, c, r2p);
    bool c3 = 2.0 * alpha < gap - tol.eps_ang;

    if (self == fr->r1) {
        if (auto s = sweep_regularity(p, fr->r1, tol)) {
            Point dest = r1p + (c - r1p) * (*s);
            return make_radial(r1p, dest);
        }
        if (!c3) {
            if (c1 && c2) return radial_to(c, r1p, d2 * 0.75); // leave the guided band before arcing
            double sweep = alpha - gap / 4.0;
            if (sweep <= tol.eps_ang) return {};
            double ccw = angle(r1p, c, r2p, Orientation::CounterClockwise);
            Orientation o = ccw <= kTwoPi - ccw ? Orientation::CounterClockwise : Orientation::Clockwise;
            return make_arc(c, r1p, sweep, o);
        }
        if (!c2) {
            if (d1 > f2 / 4.0 + eps_r) return radial_to(c, r1p, f2 / 4.0);
            return {};
        }
        if (d1 > d2 / 2.0 + eps_r) return radial_to(c, r1p, d2 / 2.0);
        return {};
    }
    if (self == fr->r2 && c3 && !c2 && d1 <= f2 / 4.0 + eps_r) {
        // second robot holding the enclosing circle cannot come in safely
        if (std::abs(d2 - r_world) <= eps_r) return {};
        return radial_to(c, r2p, f2);
    }
    return {};
}

} // namespace

Phase classify_phase(const std::vector<Point>& snapshot, const Pattern& f, const Tolerance& tol) {
    Configuration v = dedupe_points(snapshot, tol);
    ExpandedPattern ft = preprocess_pattern(f, tol);
    return classify_config(v, f, ft, tol);
}

Trajectory termination_move(const Configuration& p, int self, const Pattern& f, const Tolerance& tol) {
    return termination_move_impl(p, self, preprocess_pattern(f, tol), tol);
}

Trajectory apf_move(const Configuration& p, int self, const Pattern& f, const Tolerance& tol) {
    return apf_move_impl(p, self, preprocess_pattern(f, tol), tol);
}

Trajectory fbc1_move(const Configuration& p, int self, const Pattern& f, BitSource& bits,
                     const Tolerance& tol) {
    return fbc1_move_impl(p, self, preprocess_pattern(f, tol), bits, tol);
}

Trajectory fbc2_move(const Configuration& p, int self, const Pattern& f, const Tolerance& tol) {
    return fbc2_move_impl(p, self, preprocess_pattern(f, tol), tol);
}

Trajectory compute(const std::vector<Point>& snapshot_local, const Pattern& pattern_local,
                   BitSource& bits, const Tolerance& tol) {
    Configuration v = dedupe_points(snapshot_local, tol);
    double sc = spread_of(v.robots);
    int self = -1;
    double best = 1e300;
    for (std::size_t i = 0; i < v.size(); ++i) {
        double d = v.robots[i].norm();
        if (d < best) {
            best = d;
            self = static_cast<int>(i);
        }
    }
    if (self < 0 || best > tol.eps_len * sc * 16.0)
        fail(Errc::BadConfig, "compute: calling robot is not at the snapshot origin");

    ExpandedPattern ft = preprocess_pattern(pattern_local, tol);
    switch (classify_config(v, pattern_local, ft, tol)) {
        case Phase::Termination: return termination_move_impl(v, self, ft, tol);
        case Phase::AlmostPatternFormation: return apf_move_impl(v, self, ft, tol);
        case Phase::FBC1: return fbc1_move_impl(v, self, ft, bits, tol);
        case Phase::FBC2: return fbc2_move_impl(v, self, ft, tol);
    }
    return {};
}

} // namespace swarm
