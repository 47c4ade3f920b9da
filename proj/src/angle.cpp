#include "minkflex/angle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "minkflex/errors.hpp"

namespace minkflex {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

void require_non_null(const Vec2M& v, double tau) {
  if (std::abs(dot(v, v)) <= tau) throw Error(Errc::NullVector, "vector on the nullcone");
}

void require_non_null(const Vec3M& v, double tau) {
  if (std::abs(dot(v, v)) <= tau) throw Error(Errc::NullVector, "vector on the nullcone");
}

OrientedAngle normalized(double real_part, int k, int winding) {
  while (k > 3) {
    k -= 4;
    ++winding;
  }
  while (k < -3) {
    k += 4;
    --winding;
  }
  return {real_part, k, winding};
}

}  // namespace

std::complex<double> OrientedAngle::value() const {
  return {real_part, -(quarter_turns + 4 * winding) * kHalfPi};
}

OrientedAngle operator+(const OrientedAngle& a, const OrientedAngle& b) {
  return normalized(a.real_part + b.real_part, a.quarter_turns + b.quarter_turns, a.winding + b.winding);
}

OrientedAngle operator-(const OrientedAngle& a) { return {-a.real_part, -a.quarter_turns, -a.winding}; }

Sector sector(const Vec2M& v, double tau_null) {
  require_non_null(v, tau_null);
  if (std::abs(v.x1) > std::abs(v.x2)) return v.x1 > 0.0 ? Sector::S1 : Sector::S3;
  return v.x2 > 0.0 ? Sector::S2 : Sector::S4;
}

// With u = x / ||x||, the branch in each sector is the one for which
// cosh(angle) = x1 / |x| and sinh(angle) = x2 / |x|, and the real part is
// monotone under positive rotation (increasing in S1, S3; decreasing in S2, S4).
OrientedAngle angle_from_e(const Vec2M& x, double tau_null) {
  const Sector s = sector(x, tau_null);
  const double norm = std::sqrt(std::abs(dot(x, x)));
  const Vec2M u = x / norm;
  switch (s) {
    case Sector::S1: return {std::asinh(u.x2), 0, 0};
    case Sector::S2: return {std::asinh(u.x1), 1, 0};
    case Sector::S3: return {std::asinh(-u.x2), 2, 0};
    case Sector::S4: return {std::asinh(-u.x1), 3, 0};
  }
  return {};
}

OrientedAngle oriented_angle(const Vec2M& x, const Vec2M& y, double tau_null) {
  return angle_from_e(y, tau_null) - angle_from_e(x, tau_null);
}

Vec2M right_normal(const Vec2M& x, double tau_null) {
  require_non_null(x, tau_null);
  // (x2, x1) is orthogonal to x and det[x; (x2, x1)] = (x, x).
  const double sq = dot(x, x);
  const Vec2M y = Vec2M{x.x2, x.x1} / std::sqrt(std::abs(sq));
  return sq > 0.0 ? y : -y;
}

double project(const Vec2M& x, const Vec2M& y, double tau_null) {
  require_non_null(x, tau_null);
  require_non_null(y, tau_null);
  const double yy = dot(y, y);
  return yy > 0.0 ? dot(x, y) : -dot(x, y);
}

FrameCoefficients decompose(const Vec2M& x, const Vec2M& a, const Vec2M& b, double tau_null) {
  constexpr double kFrameTol = 1e-9;
  if (std::abs(dot(a, a) - 1.0) > kFrameTol || std::abs(dot(b, b) + 1.0) > kFrameTol ||
      std::abs(dot(a, b)) > kFrameTol || det2(a, b) <= 0.0) {
    throw Error(Errc::BadFrame, "frame must be positively oriented with |a| = 1, |b| = i");
  }
  const std::complex<double> len = length(x).value();
  const OrientedAngle ang = oriented_angle(a, x, tau_null);
  return {(len * ang.cosh()).real(), (len * ang.sinh()).real()};
}

double nonoriented_angle_3d(const Vec3M& x, const Vec3M& y, double tau_null) {
  require_non_null(x, tau_null);
  require_non_null(y, tau_null);

  const Eigen::Vector3d ex = eu(x).normalized();
  const Eigen::Vector3d ey = eu(y);
  const Eigen::Vector3d perp = ey - ey.dot(ex) * ex;
  const double xx = dot(x, x);
  if (perp.norm() <= 1e-12 * ey.norm()) {
    if (xx < 0.0) return 0.0;
    return dot(x, y) > 0.0 ? 0.0 : std::numbers::pi;
  }

  // Induced metric in a Euclidean-orthonormal basis of span{x, y}.
  const Vec3M e = from_eu(ex);
  const Vec3M f = from_eu(perp.normalized());
  const double g11 = dot(e, e), g12 = dot(e, f), g22 = dot(f, f);
  const double mean = 0.5 * (g11 + g22);
  const double rad = std::hypot(0.5 * (g11 - g22), g12);
  const double lo = mean - rad, hi = mean + rad;
  if (std::abs(lo) <= tau_null || std::abs(hi) <= tau_null) {
    throw Error(Errc::DegeneratePlane, "plane spanned by the vectors carries a degenerate metric");
  }

  // Minkowski-orthonormal frame of the plane, built from x.
  const double nx = std::sqrt(std::abs(xx));
  const Vec3M u = x / nx;
  const double uu = xx > 0.0 ? 1.0 : -1.0;
  Vec3M w = y - (dot(y, u) / uu) * u;
  const double ww = dot(w, w);
  w = w / std::sqrt(std::abs(ww));

  const auto coords = [&](const Vec3M& v) {
    // v = c_u u + c_w w with (u,u) = uu, (w,w) = sgn(ww).
    const double cu = dot(v, u) / uu;
    const double cw = dot(v, w) / (ww > 0.0 ? 1.0 : -1.0);
    return std::pair{cu, cw};
  };
  const auto [xu, xw] = coords(x);
  const auto [yu, yw] = coords(y);

  if (lo > 0.0) {
    // Spacelike plane: Euclidean angle in the orthonormal frame.
    return std::atan2(std::abs(xu * yw - xw * yu), xu * yu + xw * yw);
  }
  // Timelike plane: put the spacelike frame vector first.
  const Vec2M px = xx > 0.0 ? Vec2M{xu, xw} : Vec2M{xw, xu};
  const Vec2M py = xx > 0.0 ? Vec2M{yu, yw} : Vec2M{yw, yu};
  return std::abs(oriented_angle(px, py, 0.0).real_part);
}

}  // namespace minkflex
