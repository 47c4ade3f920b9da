#pragma once

#include <complex>

#include <Eigen/Dense>

namespace minkflex {

// Squared lengths within this distance of zero are treated as null.
inline constexpr double kNullTol = 1e-9;

/// Point or vector of the Minkowski 3-space, scalar product x1y1 + x2y2 - x3y3.
struct Vec3M {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;

  constexpr Vec3M& operator+=(const Vec3M& o) {
    x1 += o.x1; x2 += o.x2; x3 += o.x3;
    return *this;
  }
  constexpr Vec3M& operator-=(const Vec3M& o) {
    x1 -= o.x1; x2 -= o.x2; x3 -= o.x3;
    return *this;
  }
  constexpr Vec3M& operator*=(double s) {
    x1 *= s; x2 *= s; x3 *= s;
    return *this;
  }
  friend constexpr Vec3M operator+(Vec3M a, const Vec3M& b) { return a += b; }
  friend constexpr Vec3M operator-(Vec3M a, const Vec3M& b) { return a -= b; }
  friend constexpr Vec3M operator*(Vec3M a, double s) { return a *= s; }
  friend constexpr Vec3M operator*(double s, Vec3M a) { return a *= s; }
  friend constexpr Vec3M operator/(Vec3M a, double s) { return a *= (1.0 / s); }
  friend constexpr Vec3M operator-(const Vec3M& a) { return {-a.x1, -a.x2, -a.x3}; }
  friend constexpr bool operator==(const Vec3M&, const Vec3M&) = default;
};

/// Vector of the Minkowski plane, scalar product x1y1 - x2y2.
struct Vec2M {
  double x1 = 0.0;
  double x2 = 0.0;

  friend constexpr Vec2M operator+(const Vec2M& a, const Vec2M& b) { return {a.x1 + b.x1, a.x2 + b.x2}; }
  friend constexpr Vec2M operator-(const Vec2M& a, const Vec2M& b) { return {a.x1 - b.x1, a.x2 - b.x2}; }
  friend constexpr Vec2M operator*(double s, const Vec2M& a) { return {s * a.x1, s * a.x2}; }
  friend constexpr Vec2M operator*(const Vec2M& a, double s) { return s * a; }
  friend constexpr Vec2M operator/(const Vec2M& a, double s) { return {a.x1 / s, a.x2 / s}; }
  friend constexpr Vec2M operator-(const Vec2M& a) { return {-a.x1, -a.x2}; }
  friend constexpr bool operator==(const Vec2M&, const Vec2M&) = default;
};

constexpr double dot(const Vec3M& x, const Vec3M& y) { return x.x1 * y.x1 + x.x2 * y.x2 - x.x3 * y.x3; }
constexpr double dot(const Vec2M& x, const Vec2M& y) { return x.x1 * y.x1 - x.x2 * y.x2; }

// Orientation of an ordered pair in the plane (coordinate determinant).
constexpr double det2(const Vec2M& x, const Vec2M& y) { return x.x1 * y.x2 - x.x2 * y.x1; }

enum class CausalClass { Spacelike, Timelike, Null };

/// Minkowski length. The squared value is the primary datum; the complex
/// value is a nonnegative real or a positive multiple of i.
struct MLength {
  double squared = 0.0;

  std::complex<double> value() const;
  bool is_real() const { return squared >= 0.0; }
};

MLength length(const Vec3M& x);
MLength length(const Vec2M& x);

CausalClass causal_class(const Vec3M& x, double tau_null = kNullTol);
CausalClass causal_class(const Vec2M& x, double tau_null = kNullTol);

/// epsilon = sgn (w,w) and norm = |(w,w)|^(1/2), so eps * norm^2 == (w,w).
struct EpsNorm {
  int eps = 0;
  double norm = 0.0;
};

EpsNorm epsilon_norm(const Vec3M& w);
EpsNorm epsilon_norm(const Vec2M& w);

struct LineM {
  Vec3M point;
  Vec3M direction;
};

/// Reflection in a non-null line: x -> 2y - x with y the Minkowski-orthogonal
/// foot of x on the line. Throws Errc::NullAxis for a null direction.
Vec3M reflect_in_line(const LineM& axis, const Vec3M& x, double tau_null = kNullTol);

/// Same coordinates, Euclidean structure.
inline Eigen::Vector3d eu(const Vec3M& x) { return {x.x1, x.x2, x.x3}; }
inline Vec3M from_eu(const Eigen::Vector3d& v) { return {v.x(), v.y(), v.z()}; }

double euclidean_norm(const Vec3M& x);

/// Affine map x -> A x + b. Minkowski isometries are the ones with
/// A^T J A = J, J = diag(1, 1, -1).
struct AffineMap {
  Eigen::Matrix3d linear = Eigen::Matrix3d::Identity();
  Vec3M shift;

  Vec3M operator()(const Vec3M& x) const;
  AffineMap then(const AffineMap& next) const;

  static AffineMap translation(const Vec3M& b);
  /// Euclidean rotation of the spacelike x1x2 plane.
  static AffineMap rotation12(double angle);
  /// Hyperbolic rotation (boost) mixing x_axis (1 or 2) with x3.
  static AffineMap boost(int axis, double rapidity);
  static AffineMap scaling(double s);
};

bool is_isometry(const AffineMap& map, double tol = 1e-12);

}  // namespace minkflex
