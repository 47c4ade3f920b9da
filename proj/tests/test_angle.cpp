#include <cmath>
#include <complex>
#include <numbers>

#include "minkflex/angle.hpp"
#include "support.hpp"

using namespace minkflex;
using namespace testing;
using cd = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

// Eq. defining the angle: cosh(angle) = (x, y) / (|x| |y|) with complex lengths.
double defining_residual(const Vec2M& x, const Vec2M& y, const OrientedAngle& a) {
  const cd ratio = dot(x, y) / (length(x).value() * length(y).value());
  return std::abs(a.cosh() - ratio);
}

Vec2M apply(const Eigen::Matrix2d& m, const Vec2M& v) { return {m(0, 0) * v.x1 + m(0, 1) * v.x2, m(1, 0) * v.x1 + m(1, 1) * v.x2}; }

}  // namespace

TEST_CASE("sector membership") {
  CHECK(sector({2, 1}) == Sector::S1);
  CHECK(sector({1, 2}) == Sector::S2);
  CHECK(sector({-1, -3}) == Sector::S4);
  CHECK(sector({1, 0}) == Sector::S1);
  CHECK(sector({0, 1}) == Sector::S2);
  CHECK(sector({-1, 0}) == Sector::S3);
  CHECK(sector({0, -1}) == Sector::S4);
  CHECK(error_code_of([] { (void)sector({1, 1}); }) == Errc::NullVector);
}

TEST_CASE("angle from e") {
  OrientedAngle a = angle_from_e({std::cosh(0.7), std::sinh(0.7)});
  CHECK(a.real_part == doctest::Approx(0.7));
  CHECK(a.quarter_turns_mod4() == 0);
  a = angle_from_e({0, 1});
  CHECK(a.real_part == doctest::Approx(0.0));
  CHECK(a.quarter_turns_mod4() == 1);
  CHECK(std::abs(a.value() - cd(0, -kPi / 2)) < 1e-14);
  a = angle_from_e({-1, 0});
  CHECK(a.real_part == doctest::Approx(0.0));
  CHECK(a.quarter_turns_mod4() == 2);
  a = angle_from_e({0, -3});
  CHECK(a.quarter_turns_mod4() == 3);
  // cosh and sinh of the angle from e are x1/|x| and x2/|x|.
  auto g = rng_for(10);
  for (int i = 0; i < 500; ++i) {
    const Vec2M x = random_nonnull_vec2(g);
    const OrientedAngle b = angle_from_e(x);
    const cd len = length(x).value();
    CHECK(std::abs(b.cosh() - x.x1 / len) < 1e-10);
    CHECK(std::abs(b.sinh() - x.x2 / len) < 1e-10);
  }
}

TEST_CASE("oriented angle examples") {
  OrientedAngle a = oriented_angle({2, 1}, {2, 1});
  CHECK(a.real_part == doctest::Approx(0.0));
  CHECK(a.quarter_turns_mod4() == 0);
  a = oriented_angle({1, 0}, right_normal({1, 0}));
  CHECK(a.real_part == doctest::Approx(0.0));
  CHECK(a.quarter_turns_mod4() == 1);
  const double s = -0.4, t = 1.3;
  a = oriented_angle({std::cosh(s), std::sinh(s)}, {std::cosh(t), std::sinh(t)});
  CHECK(a.real_part == doctest::Approx(t - s));
  CHECK(a.quarter_turns_mod4() == 0);
  CHECK(std::cosh(t - s) == doctest::Approx(dot(Vec2M{std::cosh(s), std::sinh(s)}, Vec2M{std::cosh(t), std::sinh(t)})));
}

TEST_CASE("additivity modulo 2 pi i") {
  auto g = rng_for(11);
  for (int i = 0; i < 1000; ++i) {
    const Vec2M x = random_nonnull_vec2(g), y = random_nonnull_vec2(g), z = random_nonnull_vec2(g);
    const OrientedAngle sum = oriented_angle(x, y) + oriented_angle(y, z);
    const OrientedAngle direct = oriented_angle(x, z);
    CHECK(std::abs(sum.real_part - direct.real_part) < 1e-10);
    CHECK(sum.quarter_turns_mod4() == direct.quarter_turns_mod4());
    CHECK(defining_residual(x, z, direct) < 1e-10);
    CHECK(defining_residual(x, z, sum) < 1e-9);
  }
}

TEST_CASE("right normal") {
  Vec2M n = right_normal({1, 0});
  CHECK(n.x1 == doctest::Approx(0.0));
  CHECK(n.x2 == doctest::Approx(1.0));
  n = right_normal({0, 1});
  CHECK(n.x1 == doctest::Approx(-1.0));
  CHECK(n.x2 == doctest::Approx(0.0));
  const double a = 0.8;
  n = right_normal({std::cosh(a), std::sinh(a)});
  CHECK(n.x1 == doctest::Approx(std::sinh(a)));
  CHECK(n.x2 == doctest::Approx(std::cosh(a)));
  // The angle to the right normal is -i pi / 2 in every sector.
  auto g = rng_for(12);
  for (int sec = 0; sec < 4; ++sec) {
    int found = 0;
    while (found < 250) {
      const Vec2M x = random_nonnull_vec2(g);
      if (static_cast<int>(sector(x)) != sec) continue;
      ++found;
      const Vec2M y = right_normal(x);
      CHECK(std::abs(dot(x, y)) < 1e-12);
      CHECK(det2(x, y) > 0.0);
      CHECK(std::abs(std::abs(dot(y, y)) - 1.0) < 1e-12);
      const OrientedAngle ang = oriented_angle(x, y);
      CHECK(ang.quarter_turns_mod4() == 1);
      CHECK(std::abs(ang.real_part) < 1e-10);
    }
  }
}

TEST_CASE("projection") {
  CHECK(project({3, 0}, {1, 0}) == doctest::Approx(3.0));
  CHECK(project({0, 2}, {0, 1}) == doctest::Approx(2.0));
  const double a = 0.6;
  CHECK(project({std::cosh(a), std::sinh(a)}, {1, 0}) == doctest::Approx(std::cosh(a)));
  auto g = rng_for(13);
  for (int i = 0; i < 300; ++i) {
    const Vec2M x = random_nonnull_vec2(g);
    Vec2M y = random_nonnull_vec2(g);
    y = y / epsilon_norm(y).norm;
    const double t = project(x, y);
    CHECK(std::abs(dot(x - t * y, y)) < 1e-11);
    // Projection through the angle: |x| cosh angle(x, y), times -i for timelike y.
    const cd through_angle = length(x).value() * oriented_angle(x, y).cosh();
    const cd expected = dot(y, y) > 0 ? through_angle : cd(0, -1) * through_angle;
    CHECK(std::abs(expected - t) < 1e-9);
  }
}

TEST_CASE("decomposition in an oriented frame") {
  FrameCoefficients c = decompose({std::cosh(0.3), std::sinh(0.3)}, {1, 0}, {0, 1});
  CHECK(c.along_a == doctest::Approx(std::cosh(0.3)));
  CHECK(c.along_b == doctest::Approx(std::sinh(0.3)));
  c = decompose({2, 1}, {1, 0}, {0, 1});
  CHECK(c.along_a == doctest::Approx(2.0));
  CHECK(c.along_b == doctest::Approx(1.0));
  const double s = 0.9;
  c = decompose({1, 0}, {std::cosh(s), std::sinh(s)}, {std::sinh(s), std::cosh(s)});
  CHECK(c.along_a == doctest::Approx(std::cosh(s)));
  CHECK(c.along_b == doctest::Approx(-std::sinh(s)));
  CHECK(error_code_of([] { (void)decompose({2, 1}, {0, 1}, {1, 0}); }) == Errc::BadFrame);

  auto g = rng_for(14);
  for (int i = 0; i < 500; ++i) {
    const double r = uniform(g, -2, 2);
    const double sign = (g() & 1u) ? 1.0 : -1.0;
    const Vec2M a{sign * std::cosh(r), sign * std::sinh(r)};
    const Vec2M b{sign * std::sinh(r), sign * std::cosh(r)};
    const Vec2M x = random_nonnull_vec2(g);
    const FrameCoefficients k = decompose(x, a, b);
    const Vec2M back = k.along_a * a + k.along_b * b;
    CHECK(std::abs(back.x1 - x.x1) < 1e-10);
    CHECK(std::abs(back.x2 - x.x2) < 1e-10);
  }
}

TEST_CASE("continuous rotation through the four sectors") {
  // Unit hyperbolas of each sector, traversed counterclockwise.
  struct Arc {
    Vec2M (*point)(double);
    double sign;  // direction of the parameter for a counterclockwise sweep
    int k;
    int monotone;  // +1 increasing, -1 decreasing real part along the sweep
  };
  const Arc arcs[] = {
      {[](double t) { return Vec2M{std::cosh(t), std::sinh(t)}; }, 1.0, 0, 1},
      {[](double t) { return Vec2M{std::sinh(t), std::cosh(t)}; }, -1.0, 1, -1},
      {[](double t) { return Vec2M{-std::cosh(t), -std::sinh(t)}; }, 1.0, 2, 1},
      {[](double t) { return Vec2M{std::sinh(t), -std::cosh(t)}; }, 1.0, 3, -1},
  };
  for (const Arc& arc : arcs) {
    double prev = 0.0;
    for (int i = 0; i <= 200; ++i) {
      const double t = arc.sign * (-3.0 + 6.0 * i / 200.0);
      const OrientedAngle a = angle_from_e(arc.point(t));
      CHECK(a.quarter_turns_mod4() == arc.k);
      if (i > 0) CHECK(arc.monotone * (a.real_part - prev) > 0.0);
      prev = a.real_part;
    }
  }
}

TEST_CASE("invariance under orientation-preserving isometries of the plane") {
  auto g = rng_for(15);
  for (int i = 0; i < 300; ++i) {
    const double b = uniform(g, -2, 2);
    Eigen::Matrix2d m;
    m << std::cosh(b), std::sinh(b), std::sinh(b), std::cosh(b);
    if (g() & 1u) m = -m;
    const Vec2M x = random_nonnull_vec2(g), y = random_nonnull_vec2(g);
    const OrientedAngle a0 = oriented_angle(x, y), a1 = oriented_angle(apply(m, x), apply(m, y));
    CHECK(std::abs(a0.real_part - a1.real_part) < 1e-10);
    CHECK(a0.quarter_turns_mod4() == a1.quarter_turns_mod4());
  }
}

TEST_CASE("nonoriented angle in 3-space") {
  CHECK(nonoriented_angle_3d({1, 0, 0}, {0, 1, 0}) == doctest::Approx(kPi / 2));
  const double a = 0.75;
  CHECK(nonoriented_angle_3d({1, 0, 0}, {std::cosh(a), 0, std::sinh(a)}) == doctest::Approx(a));
  CHECK(nonoriented_angle_3d({2, 0, 0}, {3, 0, 0}) == 0.0);
  CHECK(nonoriented_angle_3d({2, 0, 0}, {-3, 0, 0}) == doctest::Approx(kPi));
  CHECK(nonoriented_angle_3d({0, 0, 2}, {0, 0, -3}) == 0.0);
  // Plane spanned by a spacelike vector and a null direction is degenerate.
  CHECK(error_code_of([] { (void)nonoriented_angle_3d({0, 1, 0}, {1, 0.5, 1}); }) == Errc::DegeneratePlane);
  CHECK(error_code_of([] { (void)nonoriented_angle_3d({1, 0, 1}, {0, 1, 0}); }) == Errc::NullVector);

  // Independent closed forms: cos for spacelike planes, cosh / sinh of the ratio for timelike planes.
  auto g = rng_for(16);
  int checked = 0;
  while (checked < 500) {
    const Vec3M x = random_vec3(g), y = random_vec3(g);
    const double xx = dot(x, x), yy = dot(y, y), xy = dot(x, y);
    if (std::abs(xx) < 1e-2 || std::abs(yy) < 1e-2) continue;
    const double gram = xx * yy - xy * xy;
    if (std::abs(gram) < 1e-2) continue;
    const double theta = nonoriented_angle_3d(x, y);
    CHECK(theta >= 0.0);
    CHECK(theta == doctest::Approx(nonoriented_angle_3d(y, x)).epsilon(1e-10));
    const double ratio = std::abs(xy) / std::sqrt(std::abs(xx * yy));
    if (xx > 0 && yy > 0 && gram > 0) {
      CHECK(std::cos(theta) == doctest::Approx(xy / std::sqrt(xx * yy)).epsilon(1e-10));
    } else if (xx * yy > 0) {
      CHECK(std::cosh(theta) == doctest::Approx(ratio).epsilon(1e-10));
    } else {
      CHECK(std::sinh(theta) == doctest::Approx(ratio).epsilon(1e-10));
    }
    ++checked;
  }
}
