#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "cislunar/geometry.hpp"
#include "cislunar/units.hpp"

using namespace cislunar;
using namespace cislunar::geometry;

namespace {

std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

Vec3 random_point(std::mt19937_64& rng, double scale) {
    std::uniform_real_distribution<double> d(-scale, scale);
    return {d(rng), d(rng), d(rng)};
}

// Reference angle computation in extended precision, written separately
// from the production path.
long double reference_angle(const Vec3& earth, const Vec3& ris, const Vec3& moon) {
    const long double ax = static_cast<long double>(ris.x) - earth.x;
    const long double ay = static_cast<long double>(ris.y) - earth.y;
    const long double az = static_cast<long double>(ris.z) - earth.z;
    const long double bx = static_cast<long double>(moon.x) - ris.x;
    const long double by = static_cast<long double>(moon.y) - ris.y;
    const long double bz = static_cast<long double>(moon.z) - ris.z;
    const long double dot = ax * bx + ay * by + az * bz;
    const long double na = std::sqrt(ax * ax + ay * ay + az * az);
    const long double nb = std::sqrt(bx * bx + by * by + bz * bz);
    long double c = dot / (na * nb);
    if (c > 1.0L) c = 1.0L;
    if (c < -1.0L) c = -1.0L;
    return std::acos(c);
}

// Dense-sampling occlusion reference: 10^4 points along the segment.
bool brute_force_visible(const Vec3& p, const Vec3& q, const Vec3& center, double radius) {
    constexpr int kSamples = 10000;
    for (int i = 0; i <= kSamples; ++i) {
        const double t = static_cast<double>(i) / kSamples;
        const Vec3 point = p + (q - p) * t;
        if ((point - center).norm() < radius) {
            return false;
        }
    }
    return true;
}

Vec3 rotate(const Vec3& v, const Vec3& axis_unit, double angle) {
    // Rodrigues rotation.
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return v * c + axis_unit.cross(v) * s + axis_unit * (axis_unit.dot(v) * (1.0 - c));
}

}  // namespace

TEST_CASE("euclidean distance examples") {
    CHECK(euclidean_distance({0, 0, 0}, {0, 0, 35786}) == doctest::Approx(35786.0).epsilon(1e-15));
    CHECK(euclidean_distance({1.5, -2.0, 7.0}, {1.5, -2.0, 7.0}) == 0.0);
    CHECK(euclidean_distance({3, 4, 0}, {0, 0, 0}) == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("euclidean distance: symmetry and triangle inequality") {
    auto rng = make_rng(11);
    for (int i = 0; i < 1000; ++i) {
        const Vec3 a = random_point(rng, 1e6);
        const Vec3 b = random_point(rng, 1e6);
        const Vec3 c = random_point(rng, 1e6);
        CHECK(euclidean_distance(a, b) == euclidean_distance(b, a));
        CHECK(euclidean_distance(a, c) <=
              euclidean_distance(a, b) + euclidean_distance(b, c) + 1e-9);
    }
}

TEST_CASE("reflection angle: collinear and orthogonal cases") {
    const Vec3 earth{0, 0, 0};
    const Vec3 ris{0, 0, 35786};
    CHECK(optimal_reflection_angle(earth, ris, {0, 0, 384400}) == 0.0);
    CHECK(optimal_reflection_angle(earth, ris, {0, 384400, 35786}) ==
          doctest::Approx(std::numbers::pi / 2.0).epsilon(1e-15));
    // Anti-parallel second leg.
    CHECK(optimal_reflection_angle(earth, ris, {0, 0, 1000.0}) ==
          doctest::Approx(std::numbers::pi).epsilon(1e-15));
}

TEST_CASE("reflection angle: reference value for an offset lunar position") {
    // acos of the normalized dot product, evaluated in extended precision:
    // 0.36181907754031992 rad.
    const double phi = optimal_reflection_angle({0, 0, 0}, {0, 0, 35786}, {100000, 0, 300000});
    CHECK(phi == doctest::Approx(0.36181907754031992).epsilon(1e-13));
}

TEST_CASE("reflection angle matches the extended-precision reference on random triples") {
    auto rng = make_rng(21);
    for (int i = 0; i < 10000; ++i) {
        const Vec3 earth = random_point(rng, 5e5);
        const Vec3 ris = random_point(rng, 5e5);
        const Vec3 moon = random_point(rng, 5e5);
        if ((ris - earth).norm() < 1.0 || (moon - ris).norm() < 1.0) {
            continue;
        }
        const double phi = optimal_reflection_angle(earth, ris, moon);
        CHECK(std::abs(phi - static_cast<double>(reference_angle(earth, ris, moon))) < 1e-12);
    }
}

TEST_CASE("reflection angle: invariant under scaling about the origin and rigid rotation") {
    auto rng = make_rng(31);
    std::uniform_real_distribution<double> scale_dist(0.1, 50.0);
    std::uniform_real_distribution<double> angle_dist(0.0, kTwoPi);
    for (int i = 0; i < 300; ++i) {
        const Vec3 earth = random_point(rng, 1e5);
        const Vec3 ris = random_point(rng, 1e5);
        const Vec3 moon = random_point(rng, 1e5);
        if ((ris - earth).norm() < 1.0 || (moon - ris).norm() < 1.0) {
            continue;
        }
        const double phi = optimal_reflection_angle(earth, ris, moon);

        const double s = scale_dist(rng);
        CHECK(optimal_reflection_angle(earth * s, ris * s, moon * s) ==
              doctest::Approx(phi).epsilon(1e-10));

        Vec3 axis = random_point(rng, 1.0);
        if (axis.norm() < 1e-3) {
            axis = {0.0, 0.0, 1.0};
        }
        axis = axis / axis.norm();
        const double theta = angle_dist(rng);
        CHECK(optimal_reflection_angle(rotate(earth, axis, theta), rotate(ris, axis, theta),
                                       rotate(moon, axis, theta)) ==
              doctest::Approx(phi).epsilon(5e-9));
    }
}

TEST_CASE("reflection angle: clamped cosine never raises a domain error") {
    // Collinear points whose floating-point cosine can land just past 1.
    auto rng = make_rng(41);
    std::uniform_real_distribution<double> d(0.1, 1e6);
    for (int i = 0; i < 2000; ++i) {
        const Vec3 dir{d(rng), d(rng), d(rng)};
        const Vec3 earth{0, 0, 0};
        const Vec3 ris = dir * d(rng);
        const Vec3 moon = ris + dir * d(rng);
        const double phi = optimal_reflection_angle(earth, ris, moon);
        CHECK(std::isfinite(phi));
        CHECK(phi >= 0.0);
        CHECK(phi <= 1e-6);  // same direction: exactly 0 up to rounding in the dot product
    }
}

TEST_CASE("reflection angle rejects degenerate legs") {
    const Vec3 p{1, 2, 3};
    CHECK_THROWS_AS(optimal_reflection_angle(p, p, {4, 5, 6}), std::domain_error);
    CHECK_THROWS_AS(optimal_reflection_angle({4, 5, 6}, p, p), std::domain_error);
}

TEST_CASE("line of sight: through the body center is blocked") {
    CHECK_FALSE(line_of_sight({400000, 0, 0}, {-400000, 0, 0}, {0, 0, 0}, 1737.4));
}

TEST_CASE("line of sight: same-side points are visible") {
    // Both endpoints at LLO radius on the near side of the body.
    const Vec3 a{1837.4, 100.0, 0.0};
    const Vec3 b{1837.4, -200.0, 50.0};
    CHECK(line_of_sight(a, b, {0, 0, 0}, 1737.4));
}

TEST_CASE("line of sight: endpoints on the sphere count as visible") {
    CHECK(line_of_sight({1737.4, 0, 0}, {5000, 0, 0}, {0, 0, 0}, 1737.4));
    // Tangent segment grazing the limb.
    CHECK(line_of_sight({1737.4, -5000, 0}, {1737.4, 5000, 0}, {0, 0, 0}, 1737.4));
}

TEST_CASE("line of sight: symmetric in its endpoints") {
    auto rng = make_rng(51);
    for (int i = 0; i < 2000; ++i) {
        const Vec3 p = random_point(rng, 10000.0);
        const Vec3 q = random_point(rng, 10000.0);
        if ((p - q).norm() < 1.0) {
            continue;
        }
        CHECK(line_of_sight(p, q, {0, 0, 0}, 1737.4) == line_of_sight(q, p, {0, 0, 0}, 1737.4));
    }
}

TEST_CASE("line of sight agrees with dense segment sampling") {
    auto rng = make_rng(61);
    std::uniform_real_distribution<double> r_dist(2000.0, 400000.0);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int checked = 0;
    for (int i = 0; i < 500; ++i) {
        Vec3 p = random_point(rng, 1.0);
        Vec3 q = random_point(rng, 1.0);
        if (p.norm() < 1e-3 || q.norm() < 1e-3) {
            continue;
        }
        p = p / p.norm() * r_dist(rng);
        q = q / q.norm() * r_dist(rng);
        const double radius = 1737.4;
        // Skip grazing geometries where a sampled reference is ambiguous.
        const Vec3 seg = q - p;
        const double t = std::clamp((Vec3{0, 0, 0} - p).dot(seg) / seg.norm_squared(), 0.0, 1.0);
        const double closest = (p + seg * t).norm();
        if (std::abs(closest - radius) < 5.0) {
            continue;
        }
        CHECK(line_of_sight(p, q, {0, 0, 0}, radius) == brute_force_visible(p, q, {0, 0, 0}, radius));
        ++checked;
    }
    CHECK(checked > 300);
}

TEST_CASE("link geometry bundles distances and the reflection angle") {
    const Vec3 earth{0, 0, 0};
    const Vec3 ris{0, 0, 35786};
    const Vec3 dest{100000, 0, 300000};
    const LinkGeometry g = make_link_geometry(earth, ris, dest);
    CHECK(g.d_er == doctest::Approx(35786.0).epsilon(1e-15));
    CHECK(g.d_rm == doctest::Approx(euclidean_distance(ris, dest)).epsilon(1e-15));
    CHECK(g.phi_opt == doctest::Approx(0.36181907754031992).epsilon(1e-13));
}
