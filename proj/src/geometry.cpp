#include "swarm/geometry.hpp"

#include <algorithm>
#include <functional>
#include <random>

namespace swarm {

bool Tolerance::ang_eq(double a, double b) const {
    double d = std::abs(wrap_angle(a) - wrap_angle(b));
    return d <= eps_ang || kTwoPi - d <= eps_ang;
}

double wrap_angle(double a) {
    double w = std::fmod(a, kTwoPi);
    if (w < 0) w += kTwoPi;
    if (w >= kTwoPi) w = 0.0;
    return w;
}

double polar_angle(Point p, Point center) {
    Point d = p - center;
    return wrap_angle(std::atan2(d.y, d.x));
}

double angle(Point u, Point v, Point w, Orientation o) {
    if (u == v || w == v) fail(Errc::DegenerateAngle, "angle: ray endpoint equals vertex");
    double from = std::atan2(u.y - v.y, u.x - v.x);
    double to = std::atan2(w.y - v.y, w.x - v.x);
    double ccw = wrap_angle(to - from);
    return o == Orientation::CounterClockwise ? ccw : wrap_angle(-ccw);
}

double min_angle(Point u, Point v, Point w) {
    double a = angle(u, v, w, Orientation::CounterClockwise);
    return std::min(a, kTwoPi - a);
}

namespace {

Circle circle_from_two(Point a, Point b) {
    Point c = (a + b) / 2.0;
    return {c, std::max(dist(c, a), dist(c, b))};
}

Circle circle_from_three(Point a, Point b, Point c) {
    double d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
    if (std::abs(d) < 1e-300) {
        Circle best = circle_from_two(a, b);
        for (const Circle& cand : {circle_from_two(a, c), circle_from_two(b, c)})
            if (cand.radius > best.radius) best = cand;
        return best;
    }
    double a2 = dot(a, a), b2 = dot(b, b), c2 = dot(c, c);
    Point o{(a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d,
            (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d};
    double r = std::max({dist(o, a), dist(o, b), dist(o, c)});
    return {o, r};
}

bool inside(const Circle& c, Point p) { return dist(c.center, p) <= c.radius * (1.0 + 1e-12) + 1e-306; }

Circle sec_two_fixed(std::span<Point> pts, std::size_t n, Point q1, Point q2) {
    Circle c = circle_from_two(q1, q2);
    for (std::size_t i = 0; i < n; ++i)
        if (!inside(c, pts[i])) c = circle_from_three(q1, q2, pts[i]);
    return c;
}

Circle sec_one_fixed(std::span<Point> pts, std::size_t n, Point q) {
    Circle c{q, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        if (inside(c, pts[i])) continue;
        c = sec_two_fixed(pts, i, q, pts[i]);
        Point p = pts[i];
        for (std::size_t j = i; j > 0; --j) pts[j] = pts[j - 1];
        pts[0] = p;
    }
    return c;
}

} // namespace

Circle smallest_enclosing_circle(std::span<const Point> points) {
    if (points.empty()) fail(Errc::EmptySet, "smallest_enclosing_circle: empty input");
    for (Point p : points)
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            fail(Errc::BadConfig, "smallest_enclosing_circle: non-finite coordinate");
    std::vector<Point> pts(points.begin(), points.end());
    std::mt19937 rng(0x5ec0de);
    std::shuffle(pts.begin(), pts.end(), rng);
    Circle c{pts[0], 0.0};
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (inside(c, pts[i])) continue;
        c = sec_one_fixed(std::span<Point>(pts), i, pts[i]);
        Point p = pts[i];
        for (std::size_t j = i; j > 0; --j) pts[j] = pts[j - 1];
        pts[0] = p;
    }
    return c;
}

bool circle_eq(const Circle& a, const Circle& b, const Tolerance& tol) {
    double scale = std::max({a.radius, b.radius, 1e-300});
    return std::abs(a.radius - b.radius) <= tol.eps_len * scale &&
           dist(a.center, b.center) <= tol.eps_len * scale;
}

bool holds_enclosing_circle(std::span<const Point> subset, std::span<const Point> points,
                            const Tolerance& tol) {
    std::vector<bool> used(points.size(), false);
    for (Point s : subset) {
        bool found = false;
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (!used[i] && points[i] == s) {
                used[i] = true;
                found = true;
                break;
            }
        }
        if (!found) fail(Errc::NotASubset, "holds_enclosing_circle: subset not contained in points");
    }
    if (subset.empty()) return false;
    std::vector<Point> rest;
    rest.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i)
        if (!used[i]) rest.push_back(points[i]);
    if (rest.empty()) return true;
    // Removing the whole subset minimizes the reduced circle over all B, so a
    // single comparison decides the existential.
    Circle whole = smallest_enclosing_circle(points);
    Circle reduced = smallest_enclosing_circle(rest);
    return !circle_eq(whole, reduced, tol);
}

Point Similarity::operator()(Point p) const {
    if (reflect) p.y = -p.y;
    double c = std::cos(rotation), s = std::sin(rotation);
    Point r{c * p.x - s * p.y, s * p.x + c * p.y};
    return r * scale + translation;
}

Similarity Similarity::inverse() const {
    Similarity inv;
    inv.scale = 1.0 / scale;
    inv.reflect = reflect;
    inv.rotation = reflect ? rotation : wrap_angle(-rotation);
    inv.translation = {0, 0};
    Point t = inv(translation);
    inv.translation = Point{-t.x, -t.y};
    return inv;
}

Similarity compose(const Similarity& a, const Similarity& b) {
    Similarity r;
    r.scale = a.scale * b.scale;
    r.reflect = a.reflect != b.reflect;
    r.rotation = a.reflect ? wrap_angle(a.rotation - b.rotation) : wrap_angle(a.rotation + b.rotation);
    r.translation = a(b.translation);
    return r;
}

namespace {

// Perfect matching between a and b under distance <= tol_abs (Kuhn's algorithm).
bool match_multisets(std::span<const Point> a, std::span<const Point> b, double tol_abs) {
    std::size_t n = a.size();
    std::vector<int> match_b(n, -1);
    std::function<bool(std::size_t, std::vector<bool>&)> try_row =
        [&](std::size_t row, std::vector<bool>& seen) -> bool {
        for (std::size_t j = 0; j < n; ++j) {
            if (seen[j] || dist(a[row], b[j]) > tol_abs) continue;
            seen[j] = true;
            if (match_b[j] < 0 || try_row(static_cast<std::size_t>(match_b[j]), seen)) {
                match_b[j] = static_cast<int>(row);
                return true;
            }
        }
        return false;
    };
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<bool> seen(n, false);
        if (!try_row(i, seen)) return false;
    }
    return true;
}

} // namespace

std::optional<Similarity> find_similarity(std::span<const Point> a, std::span<const Point> b,
                                          const Tolerance& tol) {
    if (a.size() != b.size()) fail(Errc::SizeMismatch, "find_similarity: size mismatch");
    std::size_t n = a.size();
    if (n == 0) return Similarity{};

    Point ca{}, cb{};
    for (Point p : a) ca = ca + p;
    for (Point p : b) cb = cb + p;
    ca = ca / static_cast<double>(n);
    cb = cb / static_cast<double>(n);

    double ra = 0, rb = 0;
    for (Point p : a) ra += dot(p - ca, p - ca);
    for (Point p : b) rb += dot(p - cb, p - cb);
    ra = std::sqrt(ra / static_cast<double>(n));
    rb = std::sqrt(rb / static_cast<double>(n));

    if (ra < 1e-15 || rb < 1e-15) {
        if (ra < 1e-15 && rb < 1e-15) {
            Similarity t;
            t.translation = cb - ca;
            return t;
        }
        return std::nullopt;
    }

    std::vector<Point> na(n), nb(n);
    for (std::size_t i = 0; i < n; ++i) na[i] = (a[i] - ca) / ra;
    for (std::size_t i = 0; i < n; ++i) nb[i] = (b[i] - cb) / rb;

    std::size_t ia = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (na[i].norm() > na[ia].norm()) ia = i;
    double rad_a = na[ia].norm();
    double ang_a = std::atan2(na[ia].y, na[ia].x);

    // normalized units: RMS radius is 1
    double tol_abs = std::max(tol.eps_len * 16.0, 1e-12);

    for (int refl = 0; refl < 2; ++refl) {
        std::vector<Point> ma(n);
        for (std::size_t i = 0; i < n; ++i)
            ma[i] = refl ? Point{na[i].x, -na[i].y} : na[i];
        double ang_m = refl ? -ang_a : ang_a;
        for (std::size_t j = 0; j < n; ++j) {
            if (std::abs(nb[j].norm() - rad_a) > tol_abs) continue;
            double rot = std::atan2(nb[j].y, nb[j].x) - ang_m;
            double c = std::cos(rot), s = std::sin(rot);
            std::vector<Point> rotated(n);
            for (std::size_t i = 0; i < n; ++i)
                rotated[i] = {c * ma[i].x - s * ma[i].y, s * ma[i].x + c * ma[i].y};
            if (!match_multisets(rotated, nb, tol_abs)) continue;
            Similarity t;
            t.scale = rb / ra;
            t.reflect = refl != 0;
            t.rotation = wrap_angle(rot);
            t.translation = {0, 0};
            Point image = t(ca);
            t.translation = cb - image;
            return t;
        }
    }
    return std::nullopt;
}

namespace {

double spread(std::span<const Point> points) {
    Point lo = points[0], hi = points[0];
    for (Point p : points) {
        lo.x = std::min(lo.x, p.x);
        lo.y = std::min(lo.y, p.y);
        hi.x = std::max(hi.x, p.x);
        hi.y = std::max(hi.y, p.y);
    }
    return std::max({hi.x - lo.x, hi.y - lo.y, 1e-12});
}

Point unit_sum(std::span<const Point> points, Point x, double snap) {
    Point g{};
    for (Point p : points) {
        double d = dist(x, p);
        if (d < snap) continue;
        g = g + (x - p) / d;
    }
    return g;
}

} // namespace

Point weber_point(std::span<const Point> points, double step_tol) {
    if (points.empty()) fail(Errc::EmptySet, "weber_point: empty input");
    std::size_t n = points.size();
    if (n == 1) return points[0];
    if (n == 2) return (points[0] + points[1]) / 2.0;

    double sc = spread(points);
    double snap = 1e-13 * sc;

    Point x{};
    for (Point p : points) x = x + p;
    x = x / static_cast<double>(n);

    for (int iter = 0; iter < 300; ++iter) {
        Point num{};
        double den = 0;
        const Point* at = nullptr;
        for (const Point& p : points) {
            double d = dist(x, p);
            if (d < snap) {
                at = &p;
                continue;
            }
            num = num + p / d;
            den += 1.0 / d;
        }
        Point next;
        if (at) {
            // sitting on an anchor: subgradient test, then push off along the residual
            Point r = unit_sum(points, x, snap);
            double rn = r.norm();
            if (rn <= 1.0 + 1e-12) return *at;
            next = x - (r / rn) * ((rn - 1.0) / std::max(den, 1e-300));
        } else {
            next = num / den;
        }
        double moved = dist(next, x);
        x = next;
        if (moved < 1e-6 * sc) break;
    }

    // Newton polish with backtracking: gradient is the unit-vector sum
    auto objective = [&](Point q) {
        double s = 0;
        for (const Point& p : points) s += dist(q, p);
        return s;
    };
    double fx = objective(x);
    for (int iter = 0; iter < 80; ++iter) {
        bool on_anchor = false;
        for (const Point& p : points)
            if (dist(x, p) < snap * 100) on_anchor = true;
        if (on_anchor) break;
        Point g{};
        double hxx = 0, hxy = 0, hyy = 0;
        for (const Point& p : points) {
            Point d = x - p;
            double r = d.norm();
            g = g + d / r;
            double r3 = r * r * r;
            hxx += (d.y * d.y) / r3;
            hyy += (d.x * d.x) / r3;
            hxy -= (d.x * d.y) / r3;
        }
        double det = hxx * hyy - hxy * hxy;
        if (std::abs(det) < 1e-300) break;
        Point step{(hyy * g.x - hxy * g.y) / det, (-hxy * g.x + hxx * g.y) / det};
        double sn = step.norm();
        if (sn > sc) step = step * (sc / sn);
        Point next = x - step;
        if (sn < 1e-4 * sc) {
            // quadratic zone: objective differences drown in rounding, take it
            x = next;
            if (sn < step_tol * sc) break;
            continue;
        }
        double fn = objective(next);
        int halvings = 0;
        while (fn > fx && halvings < 40) {
            step = step / 2.0;
            next = x - step;
            fn = objective(next);
            ++halvings;
        }
        if (fn > fx) break;
        x = next;
        fx = fn;
        if (step.norm() < step_tol * sc) break;
    }
    return x;
}

std::vector<double> circular_gaps(std::span<const Point> points, Point center) {
    std::vector<double> angles;
    angles.reserve(points.size());
    for (Point p : points) {
        if (dist(p, center) < 1e-300) fail(Errc::CenterCollision, "circular_gaps: point at center");
        angles.push_back(polar_angle(p, center));
    }
    std::sort(angles.begin(), angles.end());
    std::vector<double> gaps(angles.size());
    for (std::size_t i = 0; i + 1 < angles.size(); ++i) gaps[i] = angles[i + 1] - angles[i];
    gaps.back() = kTwoPi - angles.back() + angles.front();
    return gaps;
}

int cyclic_period(std::span<const double> gaps, double eps) {
    int n = static_cast<int>(gaps.size());
    for (int p = 1; p <= n; ++p) {
        if (n % p != 0) continue;
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
            if (std::abs(gaps[i] - gaps[(i + p) % n]) > eps) ok = false;
        if (ok) return p;
    }
    return n;
}

std::optional<Point> center_of_regularity(std::span<const Point> points, const Tolerance& tol) {
    if (points.size() < 3) return std::nullopt;
    Point w = weber_point(points);
    for (Point p : points)
        if (dist(p, w) < 1e-12 * spread(points)) return std::nullopt;
    std::vector<double> gaps = circular_gaps(points, w);
    int n = static_cast<int>(points.size());
    int period = cyclic_period(gaps, tol.eps_ang);
    if (period < n) return w;
    return std::nullopt;
}

} // namespace swarm
