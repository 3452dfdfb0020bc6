#include "swarm/ceb.hpp"

#include <algorithm>
#include <numeric>

namespace swarm {

namespace {

double config_scale(const Configuration& p) {
    return std::max(smallest_enclosing_circle(p.robots).radius, 1e-300);
}

// polar angles around center, robots at the center excluded
std::vector<double> angles_around(std::span<const Point> pts, Point center, double skip_radius) {
    std::vector<double> out;
    out.reserve(pts.size());
    for (Point p : pts)
        if (dist(p, center) > skip_radius) out.push_back(polar_angle(p, center));
    return out;
}

std::vector<double> gaps_of_sorted(std::vector<double> angles) {
    std::sort(angles.begin(), angles.end());
    std::vector<double> gaps(angles.size());
    for (std::size_t i = 0; i + 1 < angles.size(); ++i) gaps[i] = angles[i + 1] - angles[i];
    if (!angles.empty()) gaps.back() = kTwoPi - angles.back() + angles.front();
    return gaps;
}

} // namespace

AngleString string_of_angles(const Configuration& p, Point center, Point start, Orientation o,
                             const Tolerance& tol) {
    double sc = config_scale(p);
    bool found = false;
    for (Point r : p.robots) {
        if (dist(r, center) <= tol.eps_len * sc)
            fail(Errc::CenterCollision, "string_of_angles: robot at the center");
        if (r == start) found = true;
    }
    if (!found) fail(Errc::BadConfig, "string_of_angles: start robot not in configuration");

    double base = polar_angle(start, center);
    double sign = o == Orientation::CounterClockwise ? 1.0 : -1.0;
    struct Key {
        double ang;
        bool not_start;
        double d;
    };
    std::vector<Key> keys;
    keys.reserve(p.size());
    for (Point r : p.robots)
        keys.push_back({wrap_angle(sign * (polar_angle(r, center) - base)), r != start, dist(r, center)});
    std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
        return std::tie(a.ang, a.not_start, a.d) < std::tie(b.ang, b.not_start, b.d);
    });

    AngleString s;
    s.center = center;
    s.start_robot = start;
    s.orientation = o;
    s.angles.resize(keys.size());
    for (std::size_t i = 0; i + 1 < keys.size(); ++i) s.angles[i] = keys[i + 1].ang - keys[i].ang;
    s.angles.back() = kTwoPi - keys.back().ang;
    return s;
}

std::optional<RegularityInfo> find_regularity(const Configuration& p, const Tolerance& tol) {
    if (p.size() < 3) return std::nullopt;
    std::optional<Point> c = center_of_regularity(p.robots, tol);
    if (!c) return std::nullopt;
    std::vector<double> gaps = circular_gaps(p.robots, *c);
    return RegularityInfo{*c, cyclic_period(gaps, tol.eps_ang)};
}

bool is_sym_regular(const Configuration& p, const Tolerance& tol) {
    if (p.size() < 3) return false;
    Circle sec = smallest_enclosing_circle(p.robots);
    std::vector<double> angs = angles_around(p.robots, sec.center, tol.eps_len * sec.radius);
    if (angs.size() < 3) return false;
    std::vector<double> gaps = gaps_of_sorted(angs);
    std::vector<double> rev(gaps.rbegin(), gaps.rend());
    int n = static_cast<int>(gaps.size());
    for (int k = 0; k < n; ++k) {
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
            if (std::abs(gaps[i] - rev[(i + k) % n]) > tol.eps_ang) ok = false;
        if (ok) return true;
    }
    return false;
}

double theta_around(const Configuration& p, Point center) {
    std::vector<double> angs = angles_around(p.robots, center, 1e-300);
    if (angs.size() < 2) return kTwoPi;
    std::vector<double> gaps = gaps_of_sorted(angs);
    return *std::min_element(gaps.begin(), gaps.end());
}

double theta(const Configuration& p) {
    return theta_around(p, smallest_enclosing_circle(p.robots).center);
}

namespace {

std::vector<Point> gather(const Configuration& p, const std::vector<int>& idx) {
    std::vector<Point> out;
    out.reserve(idx.size());
    for (int i : idx) out.push_back(p.robots[static_cast<std::size_t>(i)]);
    return out;
}

void sort_members_by_distance(std::vector<int>& members, const Configuration& p, Point center) {
    std::sort(members.begin(), members.end(), [&](int a, int b) {
        double da = dist(p.robots[static_cast<std::size_t>(a)], center);
        double db = dist(p.robots[static_cast<std::size_t>(b)], center);
        return da < db;
    });
}

} // namespace

std::optional<CebSet> construct_ceb_set(const Configuration& p, const Tolerance& tol) {
    if (p.size() < 3) return std::nullopt;
    std::optional<RegularityInfo> reg = find_regularity(p, tol);
    bool symreg = is_sym_regular(p, tol);
    if (!reg && !symreg) return std::nullopt;

    if (reg && reg->period <= 2) {
        CebSet s;
        s.members.resize(p.size());
        std::iota(s.members.begin(), s.members.end(), 0);
        s.center = reg->center;
        s.kind = reg->period == 1 ? CebKind::Equiangular : CebKind::Biangular;
        sort_members_by_distance(s.members, p, s.center);
        return s;
    }

    Circle sec = smallest_enclosing_circle(p.robots);
    ConfigurationOrder order = partial_order(p, tol);
    std::vector<int> q;
    for (const std::vector<int>& cls : order.classes) {
        std::vector<int> t = q;
        t.insert(t.end(), cls.begin(), cls.end());
        std::vector<Point> tp = gather(p, t);
        if (holds_enclosing_circle(tp, p.robots, tol)) continue; // ignore this class
        bool center_member = false;
        for (Point r : tp)
            if (dist(r, sec.center) <= tol.eps_len * sec.radius) center_member = true;
        if (center_member) break;
        std::vector<double> gaps = gaps_of_sorted(angles_around(tp, sec.center, 0.0));
        if (cyclic_period(gaps, tol.eps_ang) > 2) break;
        q = t;
    }
    if (q.empty()) return std::nullopt;

    CebSet s;
    s.members = q;
    s.center = sec.center;
    std::vector<double> gaps = gaps_of_sorted(angles_around(gather(p, q), sec.center, 0.0));
    s.kind = cyclic_period(gaps, tol.eps_ang) == 1 ? CebKind::Equiangular : CebKind::Biangular;
    sort_members_by_distance(s.members, p, s.center);
    return s;
}

namespace {

// Insertion angles that make the n-length gap string around a known center
// periodic with some period p | n, p < n. `angles` lists the other robots'
// polar angles (unsorted).
std::vector<double> regular_insertions(std::vector<double> angles, int n, double eps) {
    std::vector<double> out;
    int m = static_cast<int>(angles.size());
    if (m + 1 != n || m < 2) return out;
    std::sort(angles.begin(), angles.end());
    std::vector<double> h(static_cast<std::size_t>(m));
    for (int i = 0; i + 1 < m; ++i) h[static_cast<std::size_t>(i)] = angles[static_cast<std::size_t>(i + 1)] - angles[static_cast<std::size_t>(i)];
    h[static_cast<std::size_t>(m - 1)] = kTwoPi - angles[static_cast<std::size_t>(m - 1)] + angles[0];

    for (int period = 1; period < n; ++period) {
        if (n % period != 0) continue;
        for (int j = 0; j < m; ++j) {
            // corrected string s[0..n-1]: s[k<j] = h[k], s[j] = x, s[j+1] = h[j]-x, s[k>j+1] = h[k-1]
            auto known = [&](int pos) -> std::optional<double> {
                if (pos == j || pos == j + 1) return std::nullopt;
                return pos < j ? h[static_cast<std::size_t>(pos)] : h[static_cast<std::size_t>(pos - 1)];
            };
            std::optional<double> x;
            bool bad = false;
            for (int pos = (j % period); pos < n && !bad; pos += period) {
                if (auto v = known(pos)) {
                    if (x && std::abs(*x - *v) > eps) bad = true;
                    x = v;
                }
            }
            if (bad || !x) continue;
            double split = h[static_cast<std::size_t>(j)] - *x;
            if (split < -eps) continue;
            // verify the full string
            auto value_at = [&](int pos) { return pos == j ? *x : (pos == j + 1 ? split : *known(pos)); };
            bool ok = true;
            for (int pos = 0; pos < n && ok; ++pos)
                if (std::abs(value_at(pos) - value_at((pos + period) % n)) > eps) ok = false;
            if (!ok) continue;
            out.push_back(wrap_angle(angles[static_cast<std::size_t>(j)] + *x));
        }
    }
    // dedupe
    std::vector<double> uniq;
    for (double a : out) {
        bool dup = false;
        for (double b : uniq) {
            double d = std::abs(a - b);
            if (d < eps || kTwoPi - d < eps) dup = true;
        }
        if (!dup) uniq.push_back(a);
    }
    return uniq;
}

// true when the angle multiset is closed under reflection x -> 2a - x
bool reflection_closed(const std::vector<double>& sorted_angles, double two_a, double eps) {
    std::vector<bool> used(sorted_angles.size(), false);
    for (std::size_t i = 0; i < sorted_angles.size(); ++i) {
        if (used[i]) continue;
        double want = wrap_angle(two_a - sorted_angles[i]);
        bool found = false;
        for (std::size_t j = 0; j < sorted_angles.size() && !found; ++j) {
            if (used[j] && j != i) continue;
            double d = std::abs(wrap_angle(sorted_angles[j]) - want);
            if (d < eps || kTwoPi - d < eps) {
                if (j == i) {
                    used[i] = true;
                } else if (!used[j]) {
                    used[i] = used[j] = true;
                }
                found = true;
            }
        }
        if (!found) return false;
    }
    return true;
}

// Insertion angles that make the full angle multiset mirror symmetric about
// some axis through the center.
std::vector<double> palindromic_insertions(std::vector<double> angles, double eps) {
    std::vector<double> out;
    std::sort(angles.begin(), angles.end());
    std::size_t m = angles.size();
    if (m < 2) return out;

    auto push = [&](double a) {
        a = wrap_angle(a);
        for (double b : out) {
            double d = std::abs(a - b);
            if (d < eps || kTwoPi - d < eps) return;
        }
        out.push_back(a);
    };

    // new robot on the axis: the rest must already be mirror closed
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
            double two_a = angles[i] + angles[j];
            if (!reflection_closed(angles, two_a, eps)) continue;
            push(two_a / 2.0);
            push(two_a / 2.0 + kTwoPi / 2.0);
        }
    // new robot mirrors an existing one
    for (std::size_t s = 0; s < m; ++s) {
        std::vector<double> rest;
        for (std::size_t i = 0; i < m; ++i)
            if (i != s) rest.push_back(angles[i]);
        if (rest.empty()) continue;
        for (std::size_t i = 0; i < rest.size(); ++i)
            for (std::size_t j = i; j < rest.size(); ++j) {
                double two_a = rest[i] + rest[j];
                if (!reflection_closed(rest, two_a, eps)) continue;
                push(two_a - angles[s]);
            }
        if (rest.size() == 1) push(2.0 * rest[0] - angles[s]); // degenerate axis through the single point
    }
    return out;
}

struct Candidate {
    CebSet set;
    double shift;
};

// Full verification of a hypothesised correction: the corrected configuration
// must have an exact set containing the robot among its closest members, the
// shift must respect the half-theta cap, and moving back must have reduced the
// robot's minimum angle.
std::optional<CebSet> verify_candidate(const Configuration& p, int ri, Point corrected,
                                       const Tolerance& tol) {
    double sc = config_scale(p);
    std::size_t i = static_cast<std::size_t>(ri);
    for (std::size_t j = 0; j < p.size(); ++j)
        if (j != i && dist(p.robots[j], corrected) <= tol.eps_len * sc) return std::nullopt;
    Point actual = p.robots[i];
    if (dist(actual, corrected) <= tol.eps_len * sc) return std::nullopt;

    Configuration fixed = p;
    fixed.robots[i] = corrected;
    std::optional<CebSet> ceb = construct_ceb_set(fixed, tol);
    if (!ceb) return std::nullopt;
    if (std::find(ceb->members.begin(), ceb->members.end(), ri) == ceb->members.end())
        return std::nullopt;

    Point c = ceb->center;
    double rc = dist(corrected, c);
    if (rc <= tol.eps_len * sc || dist(actual, c) <= tol.eps_len * sc) return std::nullopt;
    // the correction is an arc: the radius about the set's center is preserved
    if (std::abs(dist(actual, c) - rc) > 1e-6 * sc) return std::nullopt;
    double dmin = rc;
    for (int m : ceb->members) dmin = std::min(dmin, dist(fixed.robots[static_cast<std::size_t>(m)], c));
    if (rc > dmin + 1e-6 * sc) return std::nullopt; // must sit among the innermost members

    double cap = theta_around(p, c) / 2.0;
    double shift = min_angle(actual, c, corrected);
    if (shift > cap + tol.eps_ang) return std::nullopt;

    auto min_gap = [&](Point x, const Configuration& cfg) {
        double g = kTwoPi;
        for (std::size_t j = 0; j < cfg.size(); ++j) {
            if (cfg.robots[j] == x) continue;
            if (dist(cfg.robots[j], c) <= tol.eps_len * sc) continue;
            g = std::min(g, min_angle(x, c, cfg.robots[j]));
        }
        return g;
    };
    if (min_gap(actual, p) > min_gap(corrected, fixed) + tol.eps_ang) return std::nullopt;

    ShiftInfo info;
    info.robot = ri;
    info.actual = actual;
    info.corrected = corrected;
    info.shift_angle = shift;
    double ccw = angle(corrected, c, actual, Orientation::CounterClockwise);
    info.shift_orientation = ccw <= kTwoPi - ccw ? Orientation::CounterClockwise : Orientation::Clockwise;
    ceb->shifted = info;
    return ceb;
}

} // namespace

std::optional<CebSet> detect_shifted(const Configuration& p, const Tolerance& tol) {
    std::optional<CebSet> exact = construct_ceb_set(p, tol);
    if (exact) return exact;
    if (p.size() < 4) return std::nullopt;

    int n = static_cast<int>(p.size());
    double sc = config_scale(p);
    Circle sec = smallest_enclosing_circle(p.robots);
    double solver_eps = 1e-7;

    std::vector<Candidate> found;
    auto consider = [&](int ri, Point corrected) {
        if (auto v = verify_candidate(p, ri, corrected, tol)) {
            for (const Candidate& c : found)
                if (c.set.shifted->robot == ri && dist(c.set.shifted->corrected, corrected) < 1e-6 * sc)
                    return;
            found.push_back({*v, v->shifted->shift_angle});
        }
    };

    for (int ri = 0; ri < n; ++ri) {
        std::size_t i = static_cast<std::size_t>(ri);
        std::vector<Point> rest;
        for (std::size_t j = 0; j < p.size(); ++j)
            if (j != i) rest.push_back(p.robots[j]);

        // corrections around the enclosing-circle center (partial sets, and
        // whole-configuration regularity centered there)
        if (dist(p.robots[i], sec.center) > tol.eps_len * sec.radius) {
            std::vector<double> angs = angles_around(rest, sec.center, tol.eps_len * sec.radius);
            if (static_cast<int>(angs.size()) == n - 1) {
                double radius = dist(p.robots[i], sec.center);
                for (double a : regular_insertions(angs, n, solver_eps))
                    consider(ri, sec.center + Point{std::cos(a), std::sin(a)} * radius);
                for (double a : palindromic_insertions(angs, solver_eps))
                    consider(ri, sec.center + Point{std::cos(a), std::sin(a)} * radius);
            }
        }

        // whole-configuration regularity about its own center: fixed-point
        // iteration between the Weber point and the slot solution
        Point c = weber_point(p.robots);
        Point prev_corr{1e300, 1e300};
        for (int round = 0; round < 16; ++round) {
            if (dist(p.robots[i], c) <= tol.eps_len * sc) break;
            std::vector<double> angs = angles_around(rest, c, tol.eps_len * sc);
            if (static_cast<int>(angs.size()) != n - 1) break;
            double radius = dist(p.robots[i], c);
            double loose = round < 8 ? 0.35 : solver_eps * 100;
            std::vector<double> sols = regular_insertions(angs, n, loose);
            if (sols.empty()) break;
            double own = polar_angle(p.robots[i], c);
            double best = sols[0], bd = 1e300;
            for (double a : sols) {
                double d = std::abs(wrap_angle(a - own));
                d = std::min(d, kTwoPi - d);
                if (d < bd) {
                    bd = d;
                    best = a;
                }
            }
            Point corr = c + Point{std::cos(best), std::sin(best)} * radius;
            if (dist(corr, prev_corr) < 1e-13 * sc) {
                consider(ri, corr);
                break;
            }
            prev_corr = corr;
            std::vector<Point> fixed = rest;
            fixed.push_back(corr);
            c = weber_point(fixed);
            if (round == 15) consider(ri, corr);
        }
    }

    if (found.empty()) return std::nullopt;
    std::size_t best = 0;
    for (std::size_t i = 1; i < found.size(); ++i)
        if (found[i].shift < found[best].shift) best = i;
    return found[best].set;
}

} // namespace swarm
