#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "minkflex/core.hpp"
#include "minkflex/errors.hpp"

namespace minkflex {

/// Oriented triangle, vertex indices are 0-based.
using Triangle = std::array<int, 3>;

/// Undirected edge with a < b.
struct Edge {
  int a = 0;
  int b = 0;

  static Edge of(int u, int v) { return u < v ? Edge{u, v} : Edge{v, u}; }
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Abstract triangulated surface. Edges and their face incidences are derived
/// from the oriented triangle list at construction and never edited.
class SimplicialSurface {
 public:
  SimplicialSurface() = default;
  SimplicialSurface(int vertex_count, std::vector<Triangle> triangles);

  int vertex_count() const { return vertex_count_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }
  const std::vector<Edge>& edges() const { return edges_; }
  /// Faces containing edges()[i], in increasing face order.
  const std::vector<int>& faces_of_edge(std::size_t i) const { return edge_faces_[i]; }
  std::optional<std::size_t> edge_index(Edge e) const;

  bool is_closed() const;
  /// Boundary cycles following the orientation of the adjacent triangles.
  std::vector<std::vector<int>> boundary_loops() const;

 private:
  int vertex_count_ = 0;
  std::vector<Triangle> triangles_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> edge_faces_;
};

struct Polyhedron {
  SimplicialSurface surface;
  std::vector<Vec3M> coords;

  const Vec3M& at(int v) const { return coords[static_cast<std::size_t>(v)]; }
  Vec3M edge_vector(Edge e) const { return at(e.b) - at(e.a); }
};

enum class SurfaceType { Sphere, Disk, Other };
std::string_view to_string(SurfaceType type);

struct SurfaceIssue {
  Errc code;
  std::string message;
};

struct SurfaceReport {
  SurfaceType type = SurfaceType::Other;
  int vertices = 0;
  int edges = 0;
  int faces = 0;
  int euler_characteristic = 0;
  std::vector<std::vector<int>> boundary_loops;
  std::vector<SurfaceIssue> issues;

  bool ok() const { return issues.empty(); }
  /// Throws the first issue, if any.
  void require_ok() const;
};

/// Manifold, connectivity and orientation checks plus sphere/disk classification.
SurfaceReport validate(const SimplicialSurface& surface);

struct FacePairRemoval {
  Polyhedron disk;
  Edge removed_edge;
  std::array<Triangle, 2> removed_faces;
  /// Vertices opposite the removed edge in the two removed faces.
  std::array<int, 2> apexes;
};

/// Drop the two faces sharing `shared` from a closed sphere-type polyhedron.
/// Throws Errc::BadEdge unless exactly two faces contain the edge.
FacePairRemoval remove_adjacent_face_pair(const Polyhedron& closed, Edge shared);

struct ConvexityReport {
  bool strictly_convex = false;
  std::vector<std::string> reasons;
};

/// Strict convexity of eu(P): every face plane supports the vertex set with all
/// other vertices strictly on the inner side (no flat dihedral angle).
ConvexityReport strict_convexity_check(const Polyhedron& p, double rel_tol = 1e-9);

struct QuadTolerances {
  double side = 1e-9;       // relative, on squared side lengths
  double null = kNullTol;   // on squared lengths
  double midpoint = 1e-9;   // relative, on |q5 - q6|
};

/// Four-vertex boundary of a disk with the diagonal midpoints q5, q6.
struct BoundaryQuad {
  std::array<int, 4> vertex{};
  std::array<Vec3M, 4> point{};
  Vec3M q5;
  Vec3M q6;

  LineM axis() const { return {q5, q6 - q5}; }
};

/// First violated hypothesis (1..4) of the quadrilateral symmetry lemma, or 0.
int quad_condition_violation(const std::array<Vec3M, 4>& q, const QuadTolerances& tol = {});

/// Boundary quadrilateral of a disk-type polyhedron, ordered along the boundary
/// orientation starting from its smallest vertex. Throws Errc::Lemma2Violation
/// (detail = condition index) when a hypothesis fails, Errc::BadEdge when the
/// boundary is not a single 4-cycle.
BoundaryQuad boundary_quad(const Polyhedron& disk, const QuadTolerances& tol = {});

/// Random quadrilateral with |q1-q2| = |q3-q4|, |q2-q3| = |q4-q1| satisfying
/// all four hypotheses. q1..q3 are drawn from [-2, 2]^3 and q4 is found on the
/// conic cut out by the two side-length equations.
std::array<Vec3M, 4> sample_symmetric_quad(std::mt19937_64& rng);

/// Octahedron with vertices +-a1 e1, +-a2 e2, +-a3 e3 (indices: +e1, +e2, -e1,
/// -e2, +e3, -e3), triangles oriented counterclockwise seen from outside.
Polyhedron make_octahedron(double a1 = 1.0, double a2 = 1.0, double a3 = 1.0);

/// Loop-free midpoint subdivision of the octahedron pushed onto the ellipsoid
/// with the given semi-axes. Level 0 is the octahedron itself.
Polyhedron make_geodesic_ellipsoid(int level, double a1, double a2, double a3);

/// Same coordinates, every triangle reversed.
Polyhedron reversed(const Polyhedron& p);

/// Squared Minkowski length of every edge, in edges() order.
std::vector<double> squared_edge_lengths(const Polyhedron& p);

/// Sequence of realizations of one surface.
struct PathSample {
  double t = 0.0;
  std::vector<Vec3M> coords;
};

struct SampledPath {
  SimplicialSurface surface;
  std::vector<PathSample> samples;

  Polyhedron at(std::size_t i) const { return {surface, samples[i].coords}; }
  std::size_t size() const { return samples.size(); }
};

}  // namespace minkflex
