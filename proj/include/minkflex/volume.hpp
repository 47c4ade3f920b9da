#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "minkflex/core.hpp"
#include "minkflex/mesh.hpp"

namespace minkflex {

/// Signed volume of eu([p0, p1, p2, p3]): det(p1 - p0, p2 - p0, p3 - p0) / 6.
double simplex_volume_coords(const Vec3M& p0, const Vec3M& p1, const Vec3M& p2, const Vec3M& p3);

/// Signed area of eu([p0, p1, p2]) for points of the Minkowski plane.
double simplex_area_coords(const Vec2M& p0, const Vec2M& p1, const Vec2M& p2);

/// Symmetric matrix of squared pairwise Minkowski distances; entries may be
/// negative or zero.
using SquaredDistanceMatrix = Eigen::MatrixXd;

SquaredDistanceMatrix squared_distances(std::span<const Vec3M> points);
SquaredDistanceMatrix squared_distances(std::span<const Vec2M> points);
/// Squared distances of the eu image.
SquaredDistanceMatrix euclidean_squared_distances(std::span<const Vec3M> points);

/// Squared volume of an n-simplex of the Minkowski n-space from its squared
/// edge lengths: (-1)^n / (2^n (n!)^2) times the bordered determinant.
/// D must be (n+1) x (n+1). Negative results mean D is not realizable.
double simplex_volume_cm(const SquaredDistanceMatrix& d, int n);

/// Classical Euclidean Cayley-Menger value, sign factor (-1)^(n+1).
double simplex_volume_cm_euclidean(const SquaredDistanceMatrix& d, int n);

/// Generalized volume: sum over the oriented faces of the signed volume of the
/// cone with apex `apex`. Independent of the apex for closed surfaces.
/// Throws Errc::NotClosed when the surface has boundary.
double generalized_volume(const Polyhedron& p, const Vec3M& apex = {});

/// Same sum with the per-face terms computed by an OpenMP loop and reduced in
/// face order, so the result is bit-identical to generalized_volume.
double generalized_volume_parallel(const Polyhedron& p, const Vec3M& apex = {});

struct VolumeSeries {
  std::vector<double> t;
  std::vector<double> volume;
  double max_deviation = 0.0;  // max |Vol(t) - Vol(t0)|
};

VolumeSeries volume_along_path(const SampledPath& path);
/// Samples evaluated concurrently; output identical to volume_along_path.
VolumeSeries volume_along_path_parallel(const SampledPath& path);

}  // namespace minkflex
