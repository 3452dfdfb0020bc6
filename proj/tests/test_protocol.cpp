#include <doctest.h>

#include "oracles.hpp"
#include "swarm/protocol.hpp"

using namespace swarm;

namespace {
const Tolerance tol;

struct FixedBits : BitSource {
    int value;
    int draws = 0;
    explicit FixedBits(int v) : value(v) {}
    int draw() override {
        ++draws;
        return value;
    }
};
} // namespace

TEST_CASE("pattern preprocessing") {
    // no multiplicity: unchanged
    Pattern plain{{{0, 0}, {1, 0}, {0, 1}}};
    ExpandedPattern e = preprocess_pattern(plain, tol);
    CHECK_FALSE(e.had_multiplicity);
    CHECK(e.points == plain.points);

    // a doubled point splits at the same radius with a quarter-spacing chord
    Pattern dup{{{1, 0}, {1, 0}, {0, 1}}};
    ExpandedPattern d = preprocess_pattern(dup, tol);
    REQUIRE(d.points.size() == 3);
    CHECK(d.spacing == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    Circle sec = smallest_enclosing_circle(std::vector<Point>{{1, 0}, {0, 1}});
    int extras = 0;
    for (std::size_t i = 0; i < d.points.size(); ++i) {
        if (d.source[i] != 0) continue;
        double r = dist(d.points[i], sec.center);
        CHECK(r == doctest::Approx(dist(Point{1, 0}, sec.center)).epsilon(1e-9));
        if (dist(d.points[i], {1, 0}) > 1e-12) {
            CHECK(dist(d.points[i], {1, 0}) == doctest::Approx(std::sqrt(2.0) / 4.0).epsilon(1e-9));
            ++extras;
        }
    }
    CHECK(extras == 1);

    // multiplicity three: chords d/4 and d/8
    Pattern tri{{{1, 0}, {1, 0}, {1, 0}, {0, 1}, {-1, -1}}};
    ExpandedPattern t3 = preprocess_pattern(tri, tol);
    REQUIRE(t3.points.size() == 5);
    std::vector<double> chords;
    for (std::size_t i = 0; i < t3.points.size(); ++i)
        if (t3.source[i] == 0 && dist(t3.points[i], {1, 0}) > 1e-12)
            chords.push_back(dist(t3.points[i], {1, 0}));
    std::sort(chords.begin(), chords.end());
    REQUIRE(chords.size() == 2);
    CHECK(chords[0] == doctest::Approx(t3.spacing / 8.0).epsilon(1e-9));
    CHECK(chords[1] == doctest::Approx(t3.spacing / 4.0).epsilon(1e-9));

    // gathering is rejected
    Pattern gather{{{2, 2}, {2, 2}, {2, 2}}};
    CHECK_THROWS_AS(preprocess_pattern(gather, tol), Error);
}

TEST_CASE("formed configurations classify as termination and stay put") {
    oracle::Rng rng(5);
    for (int t = 0; t < 10; ++t) {
        std::vector<Point> pts = oracle::random_points(rng, 6);
        Pattern f{pts};
        Phase ph = classify_phase(pts, f, tol);
        CHECK(ph == Phase::Termination);
        FixedBits bits(0);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            std::vector<Point> snap;
            for (Point p : pts) snap.push_back(p - pts[i]);
            Pattern local = f;
            Trajectory tr = compute(snap, local, bits, tol);
            CHECK(tr.empty());
        }
        CHECK(bits.draws == 0);
    }
}

TEST_CASE("symmetric configurations classify as the election phase") {
    oracle::Rng rng(11);
    Pattern f{oracle::random_points(rng, 6)};
    Configuration p = oracle::rotated_motif(rng, 3, 2, {0, 0});
    CHECK(classify_phase(p.robots, f, tol) == Phase::FBC1);
}

TEST_CASE("generic configurations classify as the ordered descent phase") {
    oracle::Rng rng(13);
    for (int t = 0; t < 10; ++t) {
        Pattern f{oracle::random_points(rng, 7)};
        Configuration p{oracle::random_points(rng, 7)};
        Phase ph = classify_phase(p.robots, f, tol);
        CHECK((ph == Phase::FBC2 || ph == Phase::AlmostPatternFormation));
    }
}

TEST_CASE("termination: only the innermost robot approaches its point") {
    oracle::Rng rng(17);
    std::vector<Point> pts = oracle::random_points(rng, 6);
    Pattern f{pts};
    Configuration p{pts};
    ConfigurationOrder o = partial_order(p, tol);
    REQUIRE(o.total);
    int r1 = o.ranked[0];
    // pull the innermost robot halfway toward the center
    Circle sec = smallest_enclosing_circle(pts);
    Configuration q = p;
    q.robots[static_cast<std::size_t>(r1)] =
        sec.center + (pts[static_cast<std::size_t>(r1)] - sec.center) * 0.5;
    REQUIRE(classify_phase(q.robots, f, tol) == Phase::Termination);
    for (std::size_t i = 0; i < q.size(); ++i) {
        Trajectory tr = termination_move(q, static_cast<int>(i), f, tol);
        if (static_cast<int>(i) == r1) {
            REQUIRE_FALSE(tr.empty());
            CHECK(tr.segments.size() == 1);
            CHECK(std::holds_alternative<LineSegment>(tr.segments[0]));
        } else {
            CHECK(tr.empty());
        }
    }
}

TEST_CASE("termination: a displaced robot arcs home on its circle") {
    oracle::Rng rng(19);
    std::vector<Point> pts = oracle::random_points(rng, 6);
    Configuration formed{pts};
    if (!is_ordered(formed, tol)) return;
    Pattern f{pts};
    ConfigurationOrder o = partial_order(formed, tol);
    Circle sec = smallest_enclosing_circle(pts);
    int pick = o.ranked[3];
    Point cur = pts[static_cast<std::size_t>(pick)];
    double phi = 0.18;
    double a = polar_angle(cur, sec.center) + phi;
    Configuration q = formed;
    q.robots[static_cast<std::size_t>(pick)] =
        sec.center + Point{std::cos(a), std::sin(a)} * dist(cur, sec.center);

    Trajectory tr = termination_move(q, pick, f, tol);
    REQUIRE_FALSE(tr.empty());
    REQUIRE(std::holds_alternative<ArcSegment>(tr.segments[0]));
    // the radius never changes along the path
    double r = dist(cur, sec.center);
    double len = tr.length();
    CHECK(len == doctest::Approx(phi * r).epsilon(1e-6));
    for (double s = 0; s <= len; s += len / 7)
        CHECK(dist(tr.point_at(s), sec.center) == doctest::Approx(r).epsilon(1e-9));
}

TEST_CASE("election formulas") {
    oracle::Rng rng(23);
    Pattern f{oracle::random_points(rng, 6)};

    // equiangular set, all members tied: the active robot flips its coin
    Configuration p = oracle::equiangular_config(rng, 6, {0, 0});
    // make every robot the same radius so all are closest members
    for (Point& q : p.robots) q = q * (1.0 / q.norm());
    auto ceb = construct_ceb_set(p, tol);
    REQUIRE(ceb.has_value());
    REQUIRE(ceb->members.size() == 6);

    FixedBits toward(1);
    Trajectory tr = fbc1_move(p, 0, f, toward, tol);
    REQUIRE_FALSE(tr.empty());
    double r0 = dist(p.robots[0], ceb->center);
    CHECK(dist(tr.destination(), ceb->center) == doctest::Approx(r0 * 7.0 / 8.0).epsilon(1e-9));

    FixedBits away(0);
    Trajectory ta = fbc1_move(p, 0, f, away, tol);
    REQUIRE_FALSE(ta.empty());
    // no outsiders: the outward step is a seventh of the radius
    CHECK(dist(ta.destination(), ceb->center) == doctest::Approx(r0 * 8.0 / 7.0).epsilon(1e-9));
}

TEST_CASE("a robot strictly farther than another member stays put") {
    oracle::Rng rng(29);
    Pattern f{oracle::random_points(rng, 6)};
    Configuration p = oracle::equiangular_config(rng, 6, {0, 0});
    for (Point& q : p.robots) q = q * (1.0 / q.norm());
    p.robots[2] = p.robots[2] * 1.3; // strictly farther member
    FixedBits bits(1);
    CHECK(fbc1_move(p, 2, f, bits, tol).empty());
    CHECK(bits.draws == 0);
}

TEST_CASE("an elected robot arcs an eighth of the separation") {
    oracle::Rng rng(31);
    Pattern f{oracle::random_points(rng, 6)};
    Configuration p = oracle::equiangular_config(rng, 6, {0, 0});
    for (Point& q : p.robots) q = q * (1.0 / q.norm());
    p.robots[1] = p.robots[1] * 0.8; // 0.8 < 7/8 of everyone else
    FixedBits bits(0);
    Trajectory tr = fbc1_move(p, 1, f, bits, tol);
    CHECK(bits.draws == 0);
    REQUIRE_FALSE(tr.empty());
    REQUIRE(std::holds_alternative<ArcSegment>(tr.segments[0]));
    auto ceb = construct_ceb_set(p, tol);
    REQUIRE(ceb.has_value());
    double th = theta_around(p, ceb->center);
    CHECK(tr.length() == doctest::Approx(0.8 * th / 8.0).epsilon(1e-6));
    // everyone else stays
    FixedBits other(0);
    CHECK(fbc1_move(p, 0, f, other, tol).empty());
}

TEST_CASE("deterministic phases draw no bits") {
    oracle::Rng rng(37);
    Pattern f{oracle::random_points(rng, 7)};
    Configuration p{oracle::random_points(rng, 7)};
    FixedBits bits(1);
    for (std::size_t i = 0; i < p.size(); ++i) {
        std::vector<Point> snap;
        for (Point q : p.robots) snap.push_back(q - p.robots[i]);
        compute(snap, f, bits, tol);
    }
    CHECK(bits.draws == 0);
}

TEST_CASE("frame equivariance of compute") {
    oracle::Rng rng(41);
    int checked = 0;
    for (int t = 0; t < 40; ++t) {
        Pattern f{oracle::random_points(rng, 6)};
        Configuration p{oracle::random_points(rng, 6)};
        Similarity s;
        s.scale = std::pow(10.0, rng.range(-1, 1));
        s.rotation = rng.range(0, kTwoPi);
        s.reflect = rng.pick(2);
        s.translation = {0, 0};

        for (std::size_t i = 0; i < p.size(); ++i) {
            std::vector<Point> snap, snap2;
            for (Point q : p.robots) {
                snap.push_back(q - p.robots[i]);
                snap2.push_back(s(q - p.robots[i]));
            }
            FixedBits b1(1), b2(1);
            Trajectory t1 = compute(snap, f, b1, tol);
            Trajectory t2 = compute(snap2, f, b2, tol);
            REQUIRE(t1.empty() == t2.empty());
            if (t1.empty()) continue;
            Trajectory mapped = transform(t1, s);
            CHECK(dist(mapped.destination(), t2.destination()) <= 1e-7 * s.scale);
            CHECK(mapped.length() == doctest::Approx(t2.length()).epsilon(1e-7));
            ++checked;
        }
    }
    CHECK(checked > 0);
}
