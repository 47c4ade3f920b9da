#pragma once

#include <span>
#include <string>
#include <vector>

#include "minkflex/core.hpp"
#include "minkflex/mesh.hpp"

namespace minkflex {

// Dihedral angles closer than this to 0 or pi count as flat.
inline constexpr double kFlatTol = 1e-8;

struct UnitNormal {
  Vec3M m;
  int eps = 0;  // +1: |m| = 1, -1: |m| = i
};

/// Outward unit normal of a face: Minkowski-orthogonal to the face, pointing to
/// the side selected by the triangle orientation. Throws
/// Errc::DegenerateFacePlane (detail = face) when the face plane is degenerate.
UnitNormal outward_unit_normal(const Polyhedron& p, int face, double tau_null = kNullTol);

/// Unit vector in the plane of `face`, orthogonal to edge g, pointing into the face.
Vec3M inward_conormal(const Polyhedron& p, int face, Edge g);

/// Nonoriented angle between the outward normals of the two faces at g.
double dihedral_angle(const Polyhedron& p, Edge g, double tau_null = kNullTol);

struct EdgeCurvatureTerm {
  Edge edge;
  double theta = 0.0;
  int eps = 0;
  double norm = 0.0;
  double contribution = 0.0;  // theta * eps * norm / 2
};

struct MeanCurvatureReport {
  std::vector<EdgeCurvatureTerm> edges;
  double total = 0.0;

  std::size_t flat_edge_count(double flat_tol = kFlatTol) const;
};

/// M(P) = 1/2 sum over edges of theta(g) eps(g) ||g||.
/// Throws Errc::NullEdge or Errc::DegenerateFacePlane (detail = edge or face id),
/// or Errc::DegeneratePlane (detail = edge id) when the normals span a
/// degenerate plane.
MeanCurvatureReport total_mean_curvature(const Polyhedron& p, double tau_null = kNullTol);

/// OpenMP over faces and edges; terms summed in edge order, identical result.
MeanCurvatureReport total_mean_curvature_parallel(const Polyhedron& p, double tau_null = kNullTol);

/// Classical total mean curvature of eu(P): 1/2 sum of Euclidean edge length
/// times the angle between Euclidean outward normals.
double total_mean_curvature_euclidean(const Polyhedron& p);

/// Sum of eps(g) ||g|| n(g) over the edges of a closed polygon of the Minkowski
/// plane, n(g) the right normal. Vanishes for closed polygons.
Vec2M edge_normal_sum(std::span<const Vec2M> edges, double tau_null = kNullTol);

struct SampleFailure {
  std::size_t sample = 0;
  std::string message;
};

struct CurvatureSeries {
  std::vector<double> t;
  std::vector<double> mean_curvature;  // NaN where the sample failed
  double max_deviation = 0.0;
  std::vector<SampleFailure> failures;
  std::vector<std::size_t> flat_edges;  // per sample
};

CurvatureSeries mean_curvature_along_path(const SampledPath& path);
CurvatureSeries mean_curvature_along_path_parallel(const SampledPath& path);

/// One row of the angle-derivative check at an edge: the centered difference
/// of theta against (dm1/dt, n1) + (dm2/dt, n2) with dm/dt also by centered
/// differences.
struct AngleRateRow {
  Edge edge;
  double theta = 0.0;
  double dtheta_dt = 0.0;
  double normal_rate = 0.0;
  double error = 0.0;
  bool skipped = false;  // theta within flat_tol of 0 or pi
  bool reflex = false;
};

/// True when the far vertex of the second face at g lies on the outer side of
/// the first face, i.e. the interior dihedral angle exceeds pi.
bool is_reflex_edge(const Polyhedron& p, Edge g);

/// Total mean curvature with the terms of reflex edges negated (exterior-angle
/// convention). The angle-rate identity holds at every edge for this sum.
double signed_mean_curvature(const Polyhedron& p, double tau_null = kNullTol);

std::vector<AngleRateRow> angle_rate_check(const Polyhedron& before, const Polyhedron& at, const Polyhedron& after,
                                           double h, double flat_tol = kFlatTol);

}  // namespace minkflex
