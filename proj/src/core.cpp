#include "minkflex/core.hpp"

#include <cmath>

#include "minkflex/errors.hpp"

namespace minkflex {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::NullVector: return "NullVector";
    case Errc::NullAxis: return "NullAxis";
    case Errc::DegeneratePlane: return "DegeneratePlane";
    case Errc::BadFrame: return "BadFrame";
    case Errc::NonManifold: return "NonManifold";
    case Errc::Disconnected: return "Disconnected";
    case Errc::NonOrientable: return "NonOrientable";
    case Errc::InconsistentOrientation: return "InconsistentOrientation";
    case Errc::BadEdge: return "BadEdge";
    case Errc::Lemma2Violation: return "Lemma2Violation";
    case Errc::NotClosed: return "NotClosed";
    case Errc::DegenerateFacePlane: return "DegenerateFacePlane";
    case Errc::NullEdge: return "NullEdge";
    case Errc::SeedSearchFailed: return "SeedSearchFailed";
    case Errc::NewtonDiverged: return "NewtonDiverged";
    case Errc::RigidityLost: return "RigidityLost";
    case Errc::GlueMismatch: return "GlueMismatch";
    case Errc::Parse: return "Parse";
    case Errc::Io: return "Io";
    case Errc::Usage: return "Usage";
  }
  return "Unknown";
}

std::complex<double> MLength::value() const {
  if (squared >= 0.0) return {std::sqrt(squared), 0.0};
  return {0.0, std::sqrt(-squared)};
}

MLength length(const Vec3M& x) { return {dot(x, x)}; }
MLength length(const Vec2M& x) { return {dot(x, x)}; }

namespace {

CausalClass classify(double sq, double tau) {
  if (std::abs(sq) <= tau) return CausalClass::Null;
  return sq > 0.0 ? CausalClass::Spacelike : CausalClass::Timelike;
}

EpsNorm eps_norm(double sq) {
  const int eps = (sq > 0.0) - (sq < 0.0);
  return {eps, std::sqrt(std::abs(sq))};
}

}  // namespace

CausalClass causal_class(const Vec3M& x, double tau_null) { return classify(dot(x, x), tau_null); }
CausalClass causal_class(const Vec2M& x, double tau_null) { return classify(dot(x, x), tau_null); }

EpsNorm epsilon_norm(const Vec3M& w) { return eps_norm(dot(w, w)); }
EpsNorm epsilon_norm(const Vec2M& w) { return eps_norm(dot(w, w)); }

Vec3M reflect_in_line(const LineM& axis, const Vec3M& x, double tau_null) {
  const double dd = dot(axis.direction, axis.direction);
  if (std::abs(dd) <= tau_null) {
    throw Error(Errc::NullAxis, "reflection axis lies on the nullcone");
  }
  const double lambda = dot(x - axis.point, axis.direction) / dd;
  const Vec3M foot = axis.point + lambda * axis.direction;
  return 2.0 * foot - x;
}

double euclidean_norm(const Vec3M& x) { return std::sqrt(x.x1 * x.x1 + x.x2 * x.x2 + x.x3 * x.x3); }

Vec3M AffineMap::operator()(const Vec3M& x) const { return from_eu(linear * eu(x)) + shift; }

AffineMap AffineMap::then(const AffineMap& next) const {
  AffineMap out;
  out.linear = next.linear * linear;
  out.shift = next(shift);
  return out;
}

AffineMap AffineMap::translation(const Vec3M& b) {
  AffineMap m;
  m.shift = b;
  return m;
}

AffineMap AffineMap::rotation12(double angle) {
  AffineMap m;
  const double c = std::cos(angle), s = std::sin(angle);
  m.linear << c, -s, 0.0,
              s, c, 0.0,
              0.0, 0.0, 1.0;
  return m;
}

AffineMap AffineMap::boost(int axis, double rapidity) {
  AffineMap m;
  const int i = axis == 2 ? 1 : 0;
  const double c = std::cosh(rapidity), s = std::sinh(rapidity);
  m.linear(i, i) = c;
  m.linear(i, 2) = s;
  m.linear(2, i) = s;
  m.linear(2, 2) = c;
  return m;
}

AffineMap AffineMap::scaling(double s) {
  AffineMap m;
  m.linear *= s;
  return m;
}

bool is_isometry(const AffineMap& map, double tol) {
  const Eigen::Matrix3d j = Eigen::Vector3d(1.0, 1.0, -1.0).asDiagonal();
  return (map.linear.transpose() * j * map.linear - j).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace minkflex
