#include <doctest.h>

#include <cmath>
#include <random>

#include "orthosonar/geometry.hpp"

using namespace osr;

namespace {
constexpr double kPi = 3.14159265358979323846;
double deg(double d) { return d * kPi / 180.0; }
}  // namespace

TEST_CASE("spherical_to_cartesian axis cases") {
    CartesianPoint p = spherical_to_cartesian({1.0, 0.0, 0.0});
    CHECK(p.isApprox(CartesianPoint(1, 0, 0), 1e-12));
    p = spherical_to_cartesian({2.0, kPi / 2, 0.0});
    CHECK(std::abs(p.x()) < 1e-12);
    CHECK(p.y() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::abs(p.z()) < 1e-12);
}

TEST_CASE("spherical_to_cartesian general point") {
    const CartesianPoint p = spherical_to_cartesian({5.0, deg(10.0), deg(3.0)});
    CHECK(p.x() == doctest::Approx(4.9172).epsilon(1e-4));
    CHECK(p.y() == doctest::Approx(0.8669).epsilon(1e-4));
    CHECK(p.z() == doctest::Approx(0.2617).epsilon(1e-4));
}

TEST_CASE("cartesian_to_spherical basics") {
    SphericalPoint s = cartesian_to_spherical({1, 0, 0});
    CHECK(s.range == doctest::Approx(1.0));
    CHECK(s.bearing == doctest::Approx(0.0));
    CHECK(s.elevation == doctest::Approx(0.0));

    // pole: bearing defined as 0
    s = cartesian_to_spherical({0, 0, -3});
    CHECK(s.range == doctest::Approx(3.0));
    CHECK(s.bearing == 0.0);
    CHECK(s.elevation == doctest::Approx(-kPi / 2));

    s = cartesian_to_spherical({4.9172, 0.8669, 0.2617});
    CHECK(s.range == doctest::Approx(5.0).epsilon(1e-4));
    CHECK(s.bearing == doctest::Approx(deg(10.0)).epsilon(1e-3));
    CHECK(s.elevation == doctest::Approx(deg(3.0)).epsilon(1e-3));

    CHECK_THROWS(cartesian_to_spherical({0, 0, 0}));
}

TEST_CASE("round trip and norm preservation") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> r(0.1, 50.0);
    std::uniform_real_distribution<double> b(-kPi, kPi - 1e-6);
    std::uniform_real_distribution<double> e(-kPi / 2 + 1e-3, kPi / 2 - 1e-3);
    for (int i = 0; i < 20000; ++i) {
        const SphericalPoint s{r(rng), b(rng), e(rng)};
        const CartesianPoint p = spherical_to_cartesian(s);
        CHECK(std::abs(p.norm() - s.range) < 1e-12 * s.range + 1e-12);
        const SphericalPoint back = cartesian_to_spherical(p);
        CHECK(std::abs(back.range - s.range) < 1e-9);
        CHECK(std::abs(back.bearing - s.bearing) < 1e-9);
        CHECK(std::abs(back.elevation - s.elevation) < 1e-9);
    }
}

TEST_CASE("compensate_extrinsics identity is identity") {
    SonarExtrinsics e;  // identity transform
    const Detection d{10, 20, 5.0, deg(30.0), 0.7};
    const Detection out = compensate_extrinsics(d, e);
    CHECK(std::abs(out.range - d.range) < 1e-9);
    CHECK(std::abs(out.angle - d.angle) < 1e-9);
    CHECK(out.intensity == d.intensity);
    CHECK(out.range_bin == d.range_bin);
    CHECK(out.beam == d.beam);
}

TEST_CASE("compensate_extrinsics pure translation") {
    SonarExtrinsics e;
    e.transform_v_to_h.translation = Eigen::Vector3d(0, 0, -0.10);

    Detection d{0, 0, 5.0, 0.0, 1.0};
    Detection out = compensate_extrinsics(d, e);
    CHECK(out.range == doctest::Approx(std::sqrt(25.0 + 0.01)).epsilon(1e-12));

    // independent oracle: lift / translate / invert with raw trig
    d.angle = deg(30.0);
    out = compensate_extrinsics(d, e);
    const double x = 5.0 * std::cos(deg(30.0));
    const double y = 5.0 * std::sin(deg(30.0));
    const double z = -0.10;
    CHECK(out.range == doctest::Approx(std::sqrt(x * x + y * y + z * z)).epsilon(1e-12));
    CHECK(out.angle == doctest::Approx(std::atan2(y, x)).epsilon(1e-12));
}

TEST_CASE("compensate_extrinsics rejects degenerate result") {
    SonarExtrinsics e;
    e.transform_v_to_h.translation = Eigen::Vector3d(-1.0, 0, 0);
    const Detection d{0, 0, 1.0, 0.0, 1.0};
    CHECK_THROWS(compensate_extrinsics(d, e));
}

TEST_CASE("fuse_match") {
    const Detection h{0, 0, 5.0, deg(10.0), 1.0};
    const Detection v{0, 0, 5.2, deg(3.0), 1.0};
    SphericalPoint f = fuse_match(h, v);
    CHECK(f.range == doctest::Approx(5.1));
    CHECK(f.bearing == doctest::Approx(deg(10.0)));
    CHECK(f.elevation == doctest::Approx(deg(3.0)));

    // symmetric in ranges
    Detection h2 = h, v2 = v;
    std::swap(h2.range, v2.range);
    CHECK(fuse_match(h2, v2).range == f.range);

    CHECK(fuse_match({0, 0, 1.0, 0, 0}, {0, 0, 3.0, 0, 0}).range == doctest::Approx(2.0));
    CHECK(fuse_match({0, 0, 4.0, 0, 0}, {0, 0, 4.0, 0, 0}).range == doctest::Approx(4.0));
}

TEST_CASE("transform_to_world") {
    const std::vector<CartesianPoint> cloud{{0, 0, 0}, {1, 0, 0}, {0.3, -0.2, 0.9}};

    SUBCASE("identity") {
        const auto out = transform_to_world(cloud, RigidTransform::identity());
        for (std::size_t i = 0; i < cloud.size(); ++i) CHECK(out[i].isApprox(cloud[i], 1e-15));
    }
    SUBCASE("pure translation") {
        RigidTransform t;
        t.translation = Eigen::Vector3d(1, 0, 0);
        const auto out = transform_to_world({{0, 0, 0}}, t);
        CHECK(out[0].isApprox(CartesianPoint(1, 0, 0), 1e-15));
    }
    SUBCASE("90 degree yaw") {
        RigidTransform t;
        t.rotation = Eigen::AngleAxisd(kPi / 2, Eigen::Vector3d::UnitZ()).toRotationMatrix();
        const auto out = transform_to_world({{1, 0, 0}}, t);
        CHECK((out[0] - CartesianPoint(0, 1, 0)).norm() < 1e-9);
    }
    SUBCASE("rigidity: pairwise distances preserved") {
        RigidTransform t;
        t.rotation = (Eigen::AngleAxisd(0.3, Eigen::Vector3d::UnitZ()) *
                      Eigen::AngleAxisd(-0.8, Eigen::Vector3d::UnitY()))
                         .toRotationMatrix();
        t.translation = Eigen::Vector3d(2, -1, 4);
        REQUIRE(t.is_valid());
        const auto out = transform_to_world(cloud, t);
        for (std::size_t i = 0; i < cloud.size(); ++i)
            for (std::size_t j = i + 1; j < cloud.size(); ++j)
                CHECK(std::abs((out[i] - out[j]).norm() - (cloud[i] - cloud[j]).norm()) < 1e-9);
        CHECK(out.size() == cloud.size());
    }
}

TEST_CASE("RigidTransform validity and inverse") {
    RigidTransform t;
    t.rotation = Eigen::AngleAxisd(1.1, Eigen::Vector3d(1, 2, 3).normalized()).toRotationMatrix();
    t.translation = Eigen::Vector3d(0.5, -2, 1);
    CHECK(t.is_valid());
    const RigidTransform inv = t.inverse();
    const CartesianPoint p(3, 1, -2);
    CHECK((inv.apply(t.apply(p)) - p).norm() < 1e-12);

    RigidTransform bad;
    bad.rotation(0, 0) = 2.0;
    CHECK_FALSE(bad.is_valid());
}
