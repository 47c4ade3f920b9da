#pragma once

#include <complex>

#include "minkflex/core.hpp"

namespace minkflex {

/// The four components of the plane minus its nullcone.
/// (1,0) in S1, (0,1) in S2, (-1,0) in S3, (0,-1) in S4.
enum class Sector { S1 = 0, S2 = 1, S3 = 2, S4 = 3 };

/// Multivalued angle of the Minkowski plane, value real_part - i*(k + 4*winding)*pi/2.
///
/// `quarter_turns` (k) counts signed nullcone crossings when rotating the first
/// vector onto the second and is kept in [-3, 3]; whole turns (2*pi*i) are
/// collected in `winding`, which most callers can ignore.
struct OrientedAngle {
  double real_part = 0.0;
  int quarter_turns = 0;
  int winding = 0;

  std::complex<double> value() const;
  std::complex<double> cosh() const { return std::cosh(value()); }
  std::complex<double> sinh() const { return std::sinh(value()); }

  /// k reduced to {0, 1, 2, 3}.
  int quarter_turns_mod4() const { return ((quarter_turns % 4) + 4) % 4; }

  friend OrientedAngle operator+(const OrientedAngle& a, const OrientedAngle& b);
  friend OrientedAngle operator-(const OrientedAngle& a);
  friend OrientedAngle operator-(const OrientedAngle& a, const OrientedAngle& b) { return a + (-b); }
};

Sector sector(const Vec2M& v, double tau_null = kNullTol);

/// Angle from e = (1, 0) to x.
OrientedAngle angle_from_e(const Vec2M& x, double tau_null = kNullTol);

/// Angle from x to y, defined through e: angle(x, e) + angle(e, y).
OrientedAngle oriented_angle(const Vec2M& x, const Vec2M& y, double tau_null = kNullTol);

/// Unit vector y with (x, y) = 0 and (x, y) positively oriented.
Vec2M right_normal(const Vec2M& x, double tau_null = kNullTol);

/// Orthogonal projection of x to the oriented line spanned by a unit or
/// imaginary-unit vector y: the real t with (x - t y, y) = 0.
double project(const Vec2M& x, const Vec2M& y, double tau_null = kNullTol);

struct FrameCoefficients {
  double along_a = 0.0;
  double along_b = 0.0;
};

/// Coefficients (|x| cosh angle(a,x), |x| sinh angle(a,x)) of x in a positively
/// oriented frame with |a| = 1, |b| = i. Computed through the complex angle;
/// throws Errc::BadFrame when the frame is not of that form.
FrameCoefficients decompose(const Vec2M& x, const Vec2M& a, const Vec2M& b, double tau_null = kNullTol);

/// Nonoriented angle between non-null vectors of the 3-space: in [0, pi] when
/// they span a spacelike plane, the nonnegative real part of the planar angle
/// when the plane is timelike, and 0 or pi for collinear vectors.
/// Throws Errc::DegeneratePlane for a plane with degenerate induced metric.
double nonoriented_angle_3d(const Vec3M& x, const Vec3M& y, double tau_null = kNullTol);

}  // namespace minkflex
