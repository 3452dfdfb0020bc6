#include "swarm/ordering.hpp"

#include <algorithm>
#include <map>

namespace swarm {

void validate_configuration(const Configuration& p, const Tolerance& tol) {
    if (p.robots.empty()) fail(Errc::BadConfig, "configuration: empty");
    for (Point r : p.robots)
        if (!std::isfinite(r.x) || !std::isfinite(r.y))
            fail(Errc::BadConfig, "configuration: non-finite coordinate");
    double sc = smallest_enclosing_circle(p.robots).radius;
    for (std::size_t i = 0; i < p.robots.size(); ++i)
        for (std::size_t j = i + 1; j < p.robots.size(); ++j)
            if (dist(p.robots[i], p.robots[j]) <= tol.eps_len * std::max(sc, 1e-300))
                fail(Errc::BadConfig, "configuration: coincident robots");
}

namespace {

struct ViewContext {
    Point center;
    double radius;
    double min_dist;              // innermost occupied distance (excluding a center robot)
    std::vector<int> reference_set; // robots at min_dist
};

ViewContext view_context(const Configuration& p, const Tolerance& tol) {
    ViewContext ctx;
    Circle sec = smallest_enclosing_circle(p.robots);
    ctx.center = sec.center;
    ctx.radius = std::max(sec.radius, 1e-300);
    double best = -1;
    for (Point r : p.robots) {
        double d = dist(r, ctx.center);
        if (d <= tol.eps_len * ctx.radius) continue; // robot at the center
        if (best < 0 || d < best) best = d;
    }
    if (best < 0) fail(Errc::BadConfig, "view_context: all robots at the center");
    ctx.min_dist = best;
    for (std::size_t i = 0; i < p.robots.size(); ++i) {
        double d = dist(p.robots[i], ctx.center);
        if (d > tol.eps_len * ctx.radius && d <= best + tol.eps_len * ctx.radius)
            ctx.reference_set.push_back(static_cast<int>(i));
    }
    return ctx;
}

std::vector<std::pair<double, double>> coords_in_system(const Configuration& p, const ViewContext& ctx,
                                                        int ref, Orientation o, const Tolerance& tol) {
    std::vector<std::pair<double, double>> out(p.size());
    Point rm = p.robots[ref];
    for (std::size_t i = 0; i < p.size(); ++i) {
        Point r = p.robots[i];
        double d = dist(r, ctx.center);
        double a = 0.0;
        if (d > tol.eps_len * ctx.radius && static_cast<int>(i) != ref)
            a = angle(rm, ctx.center, r, o);
        out[i] = {d, a};
    }
    return out;
}

// -1 / 0 / +1 lexicographic comparison with the tolerance policy
int cmp_coord(const std::pair<double, double>& a, const std::pair<double, double>& b, double radius,
              const Tolerance& tol) {
    if (!tol.len_eq(a.first, b.first, radius)) return a.first < b.first ? -1 : 1;
    if (!tol.ang_eq(a.second, b.second)) {
        // equality is circular but ordering is on the plain [0, 2pi) value
        return a.second < b.second ? -1 : 1;
    }
    return 0;
}

int cmp_sequence(const std::vector<std::pair<double, double>>& a,
                 const std::vector<std::pair<double, double>>& b, double radius, const Tolerance& tol) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        int c = cmp_coord(a[i], b[i], radius, tol);
        if (c != 0) return c;
    }
    return 0;
}

// Tolerance-bucketed lexicographic order: distances equal within the policy
// compare by angle, so cocircular points rank consistently in every frame.
bool coord_less(const std::pair<double, double>& a, const std::pair<double, double>& b,
                double radius, const Tolerance& tol) {
    if (!tol.len_eq(a.first, b.first, radius)) return a.first < b.first;
    if (!tol.ang_eq(a.second, b.second)) return a.second < b.second;
    return a < b; // fully tied within tolerance: exact order keeps sorting strict
}

std::vector<std::pair<double, double>> sorted_coords(std::vector<std::pair<double, double>> coords,
                                                     double radius, const Tolerance& tol) {
    std::sort(coords.begin(), coords.end(),
              [&](const auto& a, const auto& b) { return coord_less(a, b, radius, tol); });
    return coords;
}

std::vector<int> ranks_of(const std::vector<std::pair<double, double>>& coords, double radius,
                          const Tolerance& tol) {
    std::vector<int> idx(coords.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        return coord_less(coords[static_cast<std::size_t>(a)], coords[static_cast<std::size_t>(b)],
                          radius, tol);
    });
    std::vector<int> rank(coords.size());
    for (std::size_t pos = 0; pos < idx.size(); ++pos)
        rank[static_cast<std::size_t>(idx[pos])] = static_cast<int>(pos);
    return rank;
}

} // namespace

PolarView view_sequence(const Configuration& p, Point reference, Orientation o, const Tolerance& tol) {
    ViewContext ctx = view_context(p, tol);
    int ref = -1;
    for (int i : ctx.reference_set)
        if (p.robots[static_cast<std::size_t>(i)] == reference) ref = i;
    if (ref < 0)
        fail(Errc::NotAReferenceRobot, "view_sequence: reference robot is not on the innermost circle");
    PolarView v;
    v.origin_robot = reference;
    v.origin_index = ref;
    v.orientation = o;
    v.sequence = sorted_coords(coords_in_system(p, ctx, ref, o, tol), ctx.radius, tol);
    return v;
}

ConfigurationOrder partial_order(const Configuration& p, const Tolerance& tol) {
    if (p.size() < 2) fail(Errc::BadConfig, "partial_order: need at least two robots");
    ViewContext ctx = view_context(p, tol);
    std::size_t n = p.size();

    struct System {
        int ref;
        Orientation o;
        std::vector<std::pair<double, double>> coords;
        std::vector<std::pair<double, double>> sorted;
        std::vector<int> rank;
    };
    std::vector<System> systems;
    for (int ref : ctx.reference_set) {
        for (Orientation o : {Orientation::CounterClockwise, Orientation::Clockwise}) {
            System s;
            s.ref = ref;
            s.o = o;
            s.coords = coords_in_system(p, ctx, ref, o, tol);
            s.sorted = sorted_coords(s.coords, ctx.radius, tol);
            s.rank = ranks_of(s.coords, ctx.radius, tol);
            systems.push_back(std::move(s));
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < systems.size(); ++i)
        if (cmp_sequence(systems[i].sorted, systems[best].sorted, ctx.radius, tol) < 0) best = i;
    std::vector<std::size_t> minimal;
    for (std::size_t i = 0; i < systems.size(); ++i)
        if (cmp_sequence(systems[i].sorted, systems[best].sorted, ctx.radius, tol) == 0)
            minimal.push_back(i);

    ConfigurationOrder out;
    for (std::size_t i : minimal) out.min_systems.emplace_back(systems[i].ref, systems[i].o);

    // distinct rank functions among the minimal systems
    std::vector<const std::vector<int>*> rank_fns;
    for (std::size_t i : minimal) {
        bool dup = false;
        for (const auto* r : rank_fns)
            if (*r == systems[i].rank) dup = true;
        if (!dup) rank_fns.push_back(&systems[i].rank);
    }
    out.total = rank_fns.size() == 1;

    // r < r' iff ranked below in every minimal system
    auto less_than = [&](std::size_t a, std::size_t b) {
        for (const auto* r : rank_fns)
            if ((*r)[a] >= (*r)[b]) return false;
        return true;
    };
    std::vector<bool> is_minimal(n, true);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (a != b && less_than(a, b)) is_minimal[b] = false;
    int mins = 0;
    for (bool m : is_minimal)
        if (m) ++mins;
    out.symmetricity = mins;

    // classes by rank multiset across the minimal systems
    std::map<std::vector<int>, std::vector<int>> groups;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<int> key;
        key.reserve(rank_fns.size());
        for (const auto* r : rank_fns) key.push_back((*r)[i]);
        std::sort(key.begin(), key.end());
        groups[key].push_back(static_cast<int>(i));
    }
    for (auto& [key, members] : groups) out.classes.push_back(members);

    out.ranked.resize(n);
    const std::vector<int>& rank0 = systems[minimal[0]].rank;
    for (std::size_t i = 0; i < n; ++i) out.ranked[static_cast<std::size_t>(rank0[i])] = static_cast<int>(i);
    return out;
}

bool is_ordered(const Configuration& p, const Tolerance& tol) { return partial_order(p, tol).total; }

int symmetricity(const Configuration& p, const Tolerance& tol) {
    return partial_order(p, tol).symmetricity;
}

std::size_t canonical_system_index(const ConfigurationOrder& order) {
    const auto& systems = order.min_systems;
    std::size_t best = 0;
    auto key = [&](std::size_t i) {
        return std::make_pair(systems[i].second == Orientation::CounterClockwise ? 0 : 1,
                              systems[i].first);
    };
    for (std::size_t i = 1; i < systems.size(); ++i)
        if (key(i) < key(best)) best = i;
    return best;
}

std::vector<int> pattern_order_indices(const std::vector<Point>& pattern, const Tolerance& tol,
                                       int system_choice) {
    Configuration f{pattern};
    ConfigurationOrder of = partial_order(f, tol);
    std::size_t pick = system_choice >= 0 ? static_cast<std::size_t>(system_choice)
                                          : canonical_system_index(of);
    if (pick >= of.min_systems.size()) fail(Errc::BadConfig, "pattern_order: bad system choice");
    auto [ref, o] = of.min_systems[pick];
    Circle sec = smallest_enclosing_circle(pattern);
    std::vector<std::pair<std::pair<double, double>, int>> keyed;
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        double d = dist(pattern[i], sec.center);
        double a = 0.0;
        if (d > tol.eps_len * sec.radius && static_cast<int>(i) != ref)
            a = angle(pattern[static_cast<std::size_t>(ref)], sec.center, pattern[i], o);
        keyed.push_back({{d, a}, static_cast<int>(i)});
    }
    std::sort(keyed.begin(), keyed.end(), [&](const auto& a, const auto& b) {
        if (!tol.len_eq(a.first.first, b.first.first, sec.radius))
            return a.first.first < b.first.first;
        if (!tol.ang_eq(a.first.second, b.first.second)) return a.first.second < b.first.second;
        return a < b;
    });

    // first point must not hold the enclosing circle
    std::size_t first = 0;
    while (first < keyed.size()) {
        Point cand = pattern[static_cast<std::size_t>(keyed[first].second)];
        if (!holds_enclosing_circle(std::span<const Point>(&cand, 1), pattern, tol)) break;
        ++first;
    }
    if (first == keyed.size()) fail(Errc::BadConfig, "pattern_order: every point holds the circle");

    std::vector<int> out;
    out.reserve(pattern.size());
    out.push_back(keyed[first].second);
    for (std::size_t i = 0; i < keyed.size(); ++i)
        if (i != first) out.push_back(keyed[i].second);
    return out;
}

std::vector<Point> pattern_order(const std::vector<Point>& pattern, const Tolerance& tol,
                                 int system_choice) {
    std::vector<int> idx = pattern_order_indices(pattern, tol, system_choice);
    std::vector<Point> out;
    out.reserve(idx.size());
    for (int i : idx) out.push_back(pattern[static_cast<std::size_t>(i)]);
    return out;
}

std::vector<Point> align_pattern(const Configuration& p, const std::vector<Point>& pattern,
                                 const Tolerance& tol, int system_choice) {
    ConfigurationOrder op = partial_order(p, tol);
    if (!op.total) fail(Errc::NotOrdered, "align_pattern: configuration is not totally ordered");

    Circle secp = smallest_enclosing_circle(p.robots);
    Circle secf = smallest_enclosing_circle(pattern);
    if (secf.radius <= 0) fail(Errc::BadConfig, "align_pattern: degenerate pattern");
    double scale = secp.radius / secf.radius;

    // pick the canonical minimal system of p for the global orientation
    std::size_t pick = canonical_system_index(op);
    Orientation o = op.min_systems[pick].second;
    double sign = o == Orientation::CounterClockwise ? 1.0 : -1.0;

    Point r2 = p.robots[static_cast<std::size_t>(op.ranked[1])];
    double a2 = polar_angle(r2, secp.center);

    std::vector<Point> fo = pattern_order(pattern, tol, system_choice);
    // angles of the ordered pattern points in the pattern's own frame,
    // measured in the pattern system's orientation
    Configuration fc{pattern};
    ConfigurationOrder of = partial_order(fc, tol);
    std::size_t fpick = system_choice >= 0 ? static_cast<std::size_t>(system_choice)
                                           : canonical_system_index(of);
    Orientation of_o = of.min_systems[fpick].second;
    double fsign = of_o == Orientation::CounterClockwise ? 1.0 : -1.0;

    std::vector<double> ang_f(fo.size()), rad_f(fo.size());
    for (std::size_t i = 0; i < fo.size(); ++i) {
        rad_f[i] = dist(fo[i], secf.center);
        ang_f[i] = rad_f[i] > tol.eps_len * secf.radius ? polar_angle(fo[i], secf.center) : 0.0;
    }
    double base = ang_f[1];

    std::vector<Point> out(fo.size());
    for (std::size_t i = 0; i < fo.size(); ++i) {
        double rel = fsign * wrap_angle(ang_f[i] - base); // angle past f2 in the pattern's orientation
        double ga = a2 + sign * rel;
        double rr = rad_f[i] * scale;
        out[i] = secp.center + Point{std::cos(ga), std::sin(ga)} * rr;
    }
    return out;
}

std::vector<Point> align_pattern_by_index(const Configuration& p, const std::vector<Point>& pattern,
                                          const Tolerance& tol) {
    std::vector<int> idx = pattern_order_indices(pattern, tol);
    std::vector<Point> ordered = align_pattern(p, pattern, tol);
    std::vector<Point> out(pattern.size());
    for (std::size_t k = 0; k < idx.size(); ++k) out[static_cast<std::size_t>(idx[k])] = ordered[k];
    return out;
}

bool is_guided(const Configuration& p, const std::vector<Point>& pattern, const Tolerance& tol) {
    ConfigurationOrder op = partial_order(p, tol);
    if (!op.total) return false;

    Circle secp = smallest_enclosing_circle(p.robots);
    Circle secf = smallest_enclosing_circle(pattern);
    double scale = secp.radius / std::max(secf.radius, 1e-300);

    Point r1 = p.robots[static_cast<std::size_t>(op.ranked[0])];
    Point r2 = p.robots[static_cast<std::size_t>(op.ranked[1])];
    double d1 = dist(r1, secp.center);
    double d2 = dist(r2, secp.center);
    double slack = tol.eps_len * secp.radius;

    if (d1 > d2 / 2.0 + slack) return false;

    std::vector<Point> fo = pattern_order(pattern, tol);
    double f2 = dist(fo[1], secf.center) * scale;
    if (d2 > f2 + slack) return false;

    double gap = kTwoPi; // min angle at f2's radius; empty minimum stays effectively infinite
    for (std::size_t i = 0; i < fo.size(); ++i) {
        if (i == 1) continue;
        double rf = dist(fo[i], secf.center);
        if (!tol.len_eq(rf, dist(fo[1], secf.center), secf.radius)) continue;
        gap = std::min(gap, min_angle(fo[1], secf.center, fo[i]));
    }
    double a = d1 <= slack ? 0.0 : min_angle(r1, secp.center, r2);
    return 2.0 * a < gap - tol.eps_ang;
}

} // namespace swarm
