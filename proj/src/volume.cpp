#include "minkflex/volume.hpp"

#include <cmath>

#include "minkflex/errors.hpp"

namespace minkflex {

double simplex_volume_coords(const Vec3M& p0, const Vec3M& p1, const Vec3M& p2, const Vec3M& p3) {
  const Eigen::Vector3d a = eu(p1 - p0), b = eu(p2 - p0), c = eu(p3 - p0);
  return a.dot(b.cross(c)) / 6.0;
}

double simplex_area_coords(const Vec2M& p0, const Vec2M& p1, const Vec2M& p2) {
  return 0.5 * det2(p1 - p0, p2 - p0);
}

namespace {

template <class V>
SquaredDistanceMatrix distances(std::span<const V> pts) {
  const auto n = static_cast<Eigen::Index>(pts.size());
  SquaredDistanceMatrix d = SquaredDistanceMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = j + 1; k < n; ++k) {
      const V diff = pts[static_cast<std::size_t>(j)] - pts[static_cast<std::size_t>(k)];
      d(j, k) = d(k, j) = dot(diff, diff);
    }
  }
  return d;
}

double bordered_determinant(const SquaredDistanceMatrix& d) {
  const Eigen::Index m = d.rows();
  Eigen::MatrixXd cm = Eigen::MatrixXd::Ones(m + 1, m + 1);
  cm(0, 0) = 0.0;
  cm.bottomRightCorner(m, m) = d;
  return cm.partialPivLu().determinant();
}

double cm_scale(int n) {
  double fact = 1.0;
  for (int i = 2; i <= n; ++i) fact *= i;
  return std::ldexp(1.0, n) * fact * fact;
}

void check_closed(const Polyhedron& p) {
  if (!p.surface.is_closed()) throw Error(Errc::NotClosed, "generalized volume needs a closed surface");
}

double face_term(const Polyhedron& p, const Triangle& t, const Vec3M& apex) {
  return simplex_volume_coords(apex, p.at(t[0]), p.at(t[1]), p.at(t[2]));
}

}  // namespace

SquaredDistanceMatrix squared_distances(std::span<const Vec3M> points) { return distances(points); }
SquaredDistanceMatrix squared_distances(std::span<const Vec2M> points) { return distances(points); }

SquaredDistanceMatrix euclidean_squared_distances(std::span<const Vec3M> points) {
  const auto n = static_cast<Eigen::Index>(points.size());
  SquaredDistanceMatrix d = SquaredDistanceMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = j + 1; k < n; ++k) {
      d(j, k) = d(k, j) = (eu(points[static_cast<std::size_t>(j)]) - eu(points[static_cast<std::size_t>(k)])).squaredNorm();
    }
  }
  return d;
}

double simplex_volume_cm(const SquaredDistanceMatrix& d, int n) {
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  return sign * bordered_determinant(d) / cm_scale(n);
}

double simplex_volume_cm_euclidean(const SquaredDistanceMatrix& d, int n) {
  return -simplex_volume_cm(d, n);
}

double generalized_volume(const Polyhedron& p, const Vec3M& apex) {
  check_closed(p);
  double sum = 0.0;
  for (const Triangle& t : p.surface.triangles()) sum += face_term(p, t, apex);
  return sum;
}

double generalized_volume_parallel(const Polyhedron& p, const Vec3M& apex) {
  check_closed(p);
  const auto& tris = p.surface.triangles();
  const auto n = static_cast<long>(tris.size());
  std::vector<double> terms(tris.size());
#pragma omp parallel for schedule(static)
  for (long f = 0; f < n; ++f) terms[static_cast<std::size_t>(f)] = face_term(p, tris[static_cast<std::size_t>(f)], apex);
  double sum = 0.0;
  for (double x : terms) sum += x;
  return sum;
}

namespace {

VolumeSeries summarize(const SampledPath& path, std::vector<double> vols) {
  VolumeSeries out;
  out.volume = std::move(vols);
  for (const PathSample& s : path.samples) out.t.push_back(s.t);
  if (out.volume.empty()) return out;
  for (double v : out.volume) out.max_deviation = std::max(out.max_deviation, std::abs(v - out.volume.front()));
  return out;
}

}  // namespace

VolumeSeries volume_along_path(const SampledPath& path) {
  std::vector<double> vols;
  vols.reserve(path.size());
  for (std::size_t i = 0; i < path.size(); ++i) vols.push_back(generalized_volume(path.at(i)));
  return summarize(path, std::move(vols));
}

VolumeSeries volume_along_path_parallel(const SampledPath& path) {
  check_closed({path.surface, {}});
  std::vector<double> vols(path.size());
  const auto n = static_cast<long>(path.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) vols[static_cast<std::size_t>(i)] = generalized_volume(path.at(static_cast<std::size_t>(i)));
  return summarize(path, std::move(vols));
}

}  // namespace minkflex
