#include <doctest.h>
#include <tuple>

#include "oracles.hpp"
#include "swarm/ceb.hpp"

using namespace swarm;

namespace {
const Tolerance tol;
const double pi = kTwoPi / 2.0;
}

TEST_CASE("string of angles around a square") {
    Configuration p{{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}};
    for (Orientation o : {Orientation::CounterClockwise, Orientation::Clockwise}) {
        AngleString s = string_of_angles(p, {0, 0}, {1, 0}, o, tol);
        REQUIRE(s.angles.size() == 4);
        for (double a : s.angles) CHECK(a == doctest::Approx(pi / 2).epsilon(1e-9));
    }
    CHECK_THROWS_AS(string_of_angles(p, {1, 0}, {1, 0}, Orientation::Clockwise, tol), Error);
}

TEST_CASE("string of angles alternates for biangular sets and sums to full turns") {
    oracle::Rng rng(7);
    Configuration p = oracle::biangular_config(rng, 6, {0, 0});
    AngleString s = string_of_angles(p, {0, 0}, p.robots[0], Orientation::CounterClockwise, tol);
    REQUIRE(s.angles.size() == 6);
    CHECK(s.angles[0] == doctest::Approx(s.angles[2]).epsilon(1e-9));
    CHECK(s.angles[1] == doctest::Approx(s.angles[3]).epsilon(1e-9));
    CHECK(s.angles[0] != doctest::Approx(s.angles[1]).epsilon(1e-6));

    for (int t = 0; t < 30; ++t) {
        Configuration q{oracle::random_points(rng, 5 + rng.pick(6))};
        AngleString u = string_of_angles(q, {0, 0}, q.robots[0], Orientation::CounterClockwise, tol);
        double sum = 0;
        for (double a : u.angles) {
            CHECK(a >= 0);
            sum += a;
        }
        CHECK(sum == doctest::Approx(kTwoPi).epsilon(1e-9));
    }
}

TEST_CASE("strings from different start robots are rotations of each other") {
    oracle::Rng rng(17);
    for (int t = 0; t < 20; ++t) {
        Configuration q{oracle::random_points(rng, 7)};
        AngleString a = string_of_angles(q, {0, 0}, q.robots[0], Orientation::CounterClockwise, tol);
        AngleString b = string_of_angles(q, {0, 0}, q.robots[3], Orientation::CounterClockwise, tol);
        bool rotation = false;
        int n = static_cast<int>(a.angles.size());
        for (int k = 0; k < n && !rotation; ++k) {
            bool ok = true;
            for (int i = 0; i < n && ok; ++i)
                if (std::abs(a.angles[static_cast<std::size_t>(i)] -
                             b.angles[static_cast<std::size_t>((i + k) % n)]) > 1e-9)
                    ok = false;
            rotation = ok;
        }
        CHECK(rotation);
    }
}

TEST_CASE("regularity detection") {
    oracle::Rng rng(23);
    Configuration eq = oracle::equiangular_config(rng, 5, {1, 1});
    auto r = find_regularity(eq, tol);
    REQUIRE(r.has_value());
    CHECK(r->period == 1);
    CHECK(dist(r->center, {1, 1}) <= 1e-7);

    Configuration bi = oracle::biangular_config(rng, 6, {0.5, -0.5});
    auto rb = find_regularity(bi, tol);
    REQUIRE(rb.has_value());
    CHECK(rb->period == 2);

    Configuration gen{oracle::random_points(rng, 7)};
    CHECK_FALSE(find_regularity(gen, tol).has_value());
}

TEST_CASE("mirror symmetry and chirality in sym-regularity") {
    // any mirror-symmetric configuration is sym-regular
    Configuration mirror{{{1, 0.4}, {1, -0.4}, {-0.7, 1.1}, {-0.7, -1.1}, {-1.4, 0}}};
    CHECK(is_sym_regular(mirror, tol));

    // rotationally symmetric but chiral: regular, not sym-regular
    oracle::Rng rng(31);
    int found = 0;
    for (int t = 0; t < 20; ++t) {
        Configuration p = oracle::rotated_motif(rng, 3, 2, {0, 0});
        Circle sec = smallest_enclosing_circle(p.robots);
        std::vector<double> gaps = circular_gaps(p.robots, sec.center);
        if (cyclic_period(gaps, tol.eps_ang) == static_cast<int>(p.size())) continue; // center off the rotation pivot
        if (!is_sym_regular(p, tol)) ++found;
    }
    CHECK(found > 0);

    Configuration gen{oracle::random_points(rng, 8)};
    CHECK_FALSE(is_sym_regular(gen, tol));
}

TEST_CASE("whole-configuration sets keep their regularity center") {
    oracle::Rng rng(37);
    Configuration bi = oracle::biangular_config(rng, 6, {0.3, 0.2});
    auto ceb = construct_ceb_set(bi, tol);
    REQUIRE(ceb.has_value());
    CHECK(ceb->members.size() == bi.size());
    CHECK(dist(ceb->center, {0.3, 0.2}) <= 1e-7);
    CHECK(ceb->kind == CebKind::Biangular);
}

TEST_CASE("rotated motifs always have a nonempty unique set") {
    oracle::Rng rng(41);
    for (int t = 0; t < 60; ++t) {
        int copies = 2 + rng.pick(4);
        int motif = 1 + rng.pick(3);
        if (copies * motif < 5) continue;
        Configuration p = oracle::rotated_motif(rng, copies, motif, {0, 0});
        auto ceb = construct_ceb_set(p, tol);
        REQUIRE(ceb.has_value());
        CHECK_FALSE(ceb->members.empty());

        // permuting the input does not change the member identity set
        std::vector<std::size_t> perm(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) perm[i] = (i * 7 + 3) % p.size();
        Configuration q;
        for (std::size_t i : perm) q.robots.push_back(p.robots[i]);
        auto ceb2 = construct_ceb_set(q, tol);
        REQUIRE(ceb2.has_value());
        std::vector<Point> a, b;
        for (int m : ceb->members) a.push_back(p.robots[static_cast<std::size_t>(m)]);
        for (int m : ceb2->members) b.push_back(q.robots[static_cast<std::size_t>(m)]);
        auto key = [](Point x, Point y) { return std::tie(x.x, x.y) < std::tie(y.x, y.y); };
        std::sort(a.begin(), a.end(), key);
        std::sort(b.begin(), b.end(), key);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(dist(a[i], b[i]) <= 1e-12);
    }
}

TEST_CASE("generic configurations have no set") {
    oracle::Rng rng(47);
    for (int t = 0; t < 30; ++t) {
        Configuration p{oracle::random_points(rng, 5 + rng.pick(8))};
        CHECK_FALSE(construct_ceb_set(p, tol).has_value());
    }
}

TEST_CASE("members may move radially without changing the set") {
    oracle::Rng rng(53);
    for (int t = 0; t < 30; ++t) {
        Configuration p = oracle::rotated_motif(rng, 3, 2, {0, 0});
        auto ceb = construct_ceb_set(p, tol);
        REQUIRE(ceb.has_value());
        if (ceb->members.size() == p.size()) continue;
        Point c = ceb->center;
        // non-member floor for the radial move
        double floor = 1e300;
        std::vector<bool> member(p.size(), false);
        for (int m : ceb->members) member[static_cast<std::size_t>(m)] = true;
        for (std::size_t i = 0; i < p.size(); ++i)
            if (!member[i]) floor = std::min(floor, dist(p.robots[i], c));
        int pick = ceb->members[static_cast<std::size_t>(rng.pick(static_cast<int>(ceb->members.size())))];
        Point cur = p.robots[static_cast<std::size_t>(pick)];
        double r = dist(cur, c);
        double nr = rng.range(0.2 * r, std::min(floor * 0.9, r * 1.5));
        Configuration q = p;
        q.robots[static_cast<std::size_t>(pick)] = c + (cur - c) * (nr / r);
        auto ceb2 = construct_ceb_set(q, tol);
        REQUIRE(ceb2.has_value());
        std::vector<int> a = ceb->members, b = ceb2->members;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        CHECK(a == b);
    }
}

TEST_CASE("theta") {
    Configuration sq{{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}};
    CHECK(theta(sq) == doctest::Approx(pi / 2).epsilon(1e-9));

    Configuration ray{{{1, 0}, {2, 0}, {0, 3}, {0, -3}}};
    Circle sec = smallest_enclosing_circle(ray.robots);
    CHECK(theta_around(ray, sec.center) >= 0.0);

    oracle::Rng rng(59);
    for (int t = 0; t < 30; ++t) {
        Configuration p{oracle::random_points(rng, 6)};
        Circle s = smallest_enclosing_circle(p.robots);
        double brute = kTwoPi;
        for (std::size_t i = 0; i < p.size(); ++i)
            for (std::size_t j = i + 1; j < p.size(); ++j)
                brute = std::min(brute, min_angle(p.robots[i], s.center, p.robots[j]));
        CHECK(theta(p) == doctest::Approx(brute).epsilon(1e-9));
    }
}

TEST_CASE("two robots on one ray give theta zero") {
    Configuration p{{{0.5, 0.5}, {1.0, 1.0}, {-1, 0.3}, {0.2, -1}}};
    Circle sec = smallest_enclosing_circle(p.robots);
    Point c = sec.center;
    // place a robot exactly behind another on the same ray from the center
    Point dir = p.robots[0] - c;
    p.robots[1] = c + dir * 1.7;
    CHECK(theta(p) <= 1e-12);
}

TEST_CASE("shifted robot round trip") {
    oracle::Rng rng(61);
    int done = 0;
    for (int t = 0; t < 40 && done < 20; ++t) {
        oracle::Shifted s = oracle::make_shifted(rng, 6 + rng.pick(5), t % 2 == 0);
        if (s.robot < 0) continue;
        ++done;
        auto det = detect_shifted(s.config, tol);
        REQUIRE(det.has_value());
        REQUIRE(det->shifted.has_value());
        CHECK(det->shifted->robot == s.robot);
        CHECK(det->shifted->shift_angle == doctest::Approx(s.shift).epsilon(1e-6));
        CHECK(dist(det->shifted->corrected, s.slot) <= 1e-6);
    }
    CHECK(done >= 10);
}

TEST_CASE("unperturbed sets report no shift") {
    oracle::Rng rng(67);
    Configuration p = oracle::rotated_motif(rng, 3, 2, {0, 0});
    auto det = detect_shifted(p, tol);
    REQUIRE(det.has_value());
    CHECK_FALSE(det->shifted.has_value());
}

TEST_CASE("perturbing two robots defeats detection") {
    oracle::Rng rng(71);
    int done = 0;
    for (int t = 0; t < 60 && done < 10; ++t) {
        oracle::Shifted s = oracle::make_shifted(rng, 8, t % 2 == 0);
        if (s.robot < 0) continue;
        Configuration p = s.config;
        // rotate a second, different robot as well
        int other = (s.robot + 1) % static_cast<int>(p.size());
        Point c = s.center;
        Point q = p.robots[static_cast<std::size_t>(other)];
        double a = polar_angle(q, c) + s.shift * 0.8;
        p.robots[static_cast<std::size_t>(other)] = c + Point{std::cos(a), std::sin(a)} * dist(q, c);
        auto det = detect_shifted(p, tol);
        if (det && det->shifted) continue; // a different single-robot repair may exist by chance
        CHECK_FALSE(det.has_value());
        ++done;
    }
    CHECK(done >= 5);
}

TEST_CASE("cyclic order around the Weber point survives small shifts") {
    oracle::Rng rng(73);
    int done = 0;
    for (int t = 0; t < 120 && done < 60; ++t) {
        Configuration p{oracle::random_points(rng, 5 + rng.pick(5))};
        Point w = weber_point(p.robots);
        // pick the robot closest to the Weber point and rotate it slightly
        int pick = 0;
        for (std::size_t i = 1; i < p.size(); ++i)
            if (dist(p.robots[i], w) < dist(p.robots[static_cast<std::size_t>(pick)], w))
                pick = static_cast<int>(i);
        if (dist(p.robots[static_cast<std::size_t>(pick)], w) < 1e-6) continue;
        double th = theta_around(p, w);
        if (th < 1e-6) continue;
        double shift = rng.range(0.05, 0.5) * th;
        Point q = p.robots[static_cast<std::size_t>(pick)];
        double a = polar_angle(q, w) + shift;
        Configuration moved = p;
        moved.robots[static_cast<std::size_t>(pick)] = w + Point{std::cos(a), std::sin(a)} * dist(q, w);
        Point w2 = weber_point(moved.robots);

        auto cyclic = [&](const Configuration& cfg, Point center) {
            std::vector<std::pair<double, int>> order;
            for (std::size_t i = 0; i < cfg.size(); ++i)
                order.push_back({polar_angle(cfg.robots[i], center), static_cast<int>(i)});
            std::sort(order.begin(), order.end());
            std::vector<int> ids;
            for (auto& [a2, id] : order) ids.push_back(id);
            return ids;
        };
        std::vector<int> before = cyclic(p, w);
        std::vector<int> after = cyclic(moved, w2);
        // compare as cyclic sequences
        int n = static_cast<int>(before.size());
        int at = -1;
        for (int i = 0; i < n; ++i)
            if (after[static_cast<std::size_t>(i)] == before[0]) at = i;
        REQUIRE(at >= 0);
        bool same = true;
        for (int i = 0; i < n; ++i)
            if (after[static_cast<std::size_t>((at + i) % n)] != before[static_cast<std::size_t>(i)])
                same = false;
        CHECK(same);
        ++done;
    }
    CHECK(done >= 40);
}
