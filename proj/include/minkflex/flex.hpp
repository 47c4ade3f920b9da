#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "minkflex/curvature.hpp"
#include "minkflex/mesh.hpp"
#include "minkflex/volume.hpp"

namespace minkflex {

// Default RNG seed of the seed-polyhedron search (see README for the outcome).
inline constexpr std::uint64_t kDefaultSeedRng = 42;

// Portable uniform draw in [0, 1) from the raw 64-bit engine output.
inline double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// ---------------------------------------------------------------------------
// Seed polyhedron

struct SeedOptions {
  std::uint64_t rng = kDefaultSeedRng;
  double jitter = 0.05;
  // Half-length of the octahedron along x3. 1.0 makes the edges to the x3
  // apexes null, so the default stretches that axis.
  double axis_height = 1.5;
  int max_attempts = 2000;
  double min_edge_sq = 0.05;     // |squared length| margin for every edge
  double min_asymmetry = 1e-3;   // how far Q must be from its boundary symmetry
};

struct SeedChecks {
  bool sphere_type = false;
  bool strictly_convex = false;
  std::vector<std::string> convexity_reasons;
  std::optional<std::size_t> null_edge;      // index into surface.edges()
  std::optional<int> degenerate_face;
  int quad_violation = 0;                    // 0 when all four hypotheses hold
  double asymmetry = 0.0;
  bool asymmetric = false;
  bool rigid = false;
  bool curvature_defined = false;            // doubled polyhedron admits M

  bool pass() const;
  std::string summary() const;
};

struct FlexSeed {
  Polyhedron polyhedron;  // closed, strictly convex
  Edge removed_edge;
  Triangle pinned_face{};
  std::uint64_t rng = 0;
  int attempt = -1;
  SeedChecks checks;
};

/// Checks A-C plus the numerical preconditions of the flex for a candidate
/// closed polyhedron and the face pair around `removed`.
SeedChecks check_seed(const Polyhedron& closed, Edge removed, Triangle pinned, const SeedOptions& opts = {});

/// Face of the disk left after removing `removed` with the fewest boundary vertices.
Triangle default_pinned_face(const Polyhedron& closed, Edge removed);

/// Randomized search over jittered octahedra. The boundary quadrilateral is
/// made to satisfy the side-length hypothesis exactly by moving its fourth
/// vertex. Throws Errc::SeedSearchFailed when the attempt budget runs out.
FlexSeed make_seed(const SeedOptions& opts = {});

// ---------------------------------------------------------------------------
// Edge-length constraint system

/// Half squared edge lengths of all edges outside the pinned face, as a
/// function of the coordinates of the free vertices. Square for sphere-type
/// complexes.
class ConstraintSystem {
 public:
  ConstraintSystem() = default;
  ConstraintSystem(const Polyhedron& closed, Triangle pinned, Edge perturbed);

  std::size_t size() const { return rows_.size(); }
  const SimplicialSurface& surface() const { return surface_; }
  const std::vector<Edge>& constrained_edges() const { return rows_; }
  std::size_t perturbed_row() const { return perturbed_row_; }
  Edge perturbed_edge() const { return rows_[perturbed_row_]; }
  Triangle pinned_face() const { return pinned_; }

  Eigen::VectorXd pack(const std::vector<Vec3M>& coords) const;
  std::vector<Vec3M> unpack(const Eigen::VectorXd& vars) const;

  Eigen::VectorXd values(const Eigen::VectorXd& vars) const;
  /// Row m: (x_j - x_k, y_j - y_k, z_k - z_j) in the block of j, negated in the block of k.
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& vars) const;
  /// Same rows for the Euclidean lengths of eu(P): last entry z_j - z_k.
  Eigen::MatrixXd jacobian_euclidean(const Eigen::VectorXd& vars) const;
  /// Baseline values with t added to the perturbed row.
  Eigen::VectorXd targets(double t) const;

 private:
  SimplicialSurface surface_;
  Triangle pinned_{};
  std::vector<Vec3M> pinned_coords_;  // full coordinate vector, pinned entries valid
  std::vector<int> var_of_vertex_;    // -1 for pinned vertices
  std::vector<Edge> rows_;
  std::size_t perturbed_row_ = 0;
  Eigen::VectorXd baseline_;
};

struct RigidityCheck {
  double det = 0.0;
  double det_euclidean = 0.0;
  double scale = 0.0;  // largest row norm
  bool ok = false;
};

RigidityCheck rigidity_check(const ConstraintSystem& sys, const std::vector<Vec3M>& coords, double tau_rigid = 1e-8);

struct NewtonOptions {
  double tol = 1e-11;  // on the max-norm residual
  int max_iterations = 50;
  int max_halvings = 8;
};

struct NewtonResult {
  std::vector<Vec3M> coords;
  int iterations = 0;
  double residual = 0.0;
};

/// Newton iteration for values(x) = targets(t) from a warm start.
/// Throws Errc::NewtonDiverged.
NewtonResult solve_constraints(const ConstraintSystem& sys, double t, const std::vector<Vec3M>& warm,
                               const NewtonOptions& opts = {});

struct FlexPath {
  SampledPath path;  // realizations of the closed complex with the moving diagonal
  double t_max = 0.0;
  int steps = 0;
  double newton_tol = 0.0;
  double max_residual = 0.0;
  Triangle pinned_face{};
  Edge perturbed_edge;
};

/// Continuation on the uniform grid t_i = t_max * i / steps with secant
/// prediction and Newton correction. Throws Errc::NewtonDiverged or
/// Errc::RigidityLost (message carries t).
FlexPath flex_disk(const ConstraintSystem& sys, const std::vector<Vec3M>& seed_coords, double t_max, int steps,
                   const NewtonOptions& opts = {});

// ---------------------------------------------------------------------------
// Doubling

/// Combinatorics of Q u R(Q): Q's vertices keep their indices, each interior
/// vertex of Q gets a reflected copy appended, boundary vertices are glued
/// q1 <-> q3, q2 <-> q4, and the reflected faces are reversed.
struct DoublingLayout {
  SimplicialSurface surface;
  std::array<int, 4> quad{};
  std::vector<int> copy_of;  // vertex of Q -> its image under R in the doubled complex
};

DoublingLayout doubling_layout(const SimplicialSurface& disk);

/// Q_t u R_t(Q_t) for the reflection R_t in the line through the diagonal
/// midpoints of the boundary. Throws Errc::Lemma2Violation or Errc::GlueMismatch.
Polyhedron symmetrize(const Polyhedron& disk, double glue_tol = 1e-8);

/// Largest Euclidean distance from R(x) to the nearest vertex, over all vertices.
double reflection_symmetry_error(const Polyhedron& p, const LineM& axis);

// ---------------------------------------------------------------------------
// Experiment

struct ExperimentConfig {
  std::uint64_t seed_rng = kDefaultSeedRng;
  double jitter = 0.05;
  int steps = 32;
  std::optional<double> t_max;  // empty: automatic
  double newton_tol = 1e-11;
  std::string output;
};

struct Thresholds {
  double edge_drift = 1e-9;
  double nontriviality = 1e-4;
  double volume_rel = 1e-7;
  double curvature_rel = 1e-6;
  double jacobian_rel = 1e-6;
  double symmetry = 1e-8;
};

struct ReportRow {
  double t = 0.0;
  double max_edge_drift = 0.0;
  double vol = 0.0;
  double mean_curvature = 0.0;
  double pair_distance = 0.0;  // eps * ||P(v1) - P(v2)|| for the apex pair
};

struct Verdict {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double threshold = 0.0;
};

/// Invariant suite over a path of closed polyhedra.
struct PathEvaluation {
  std::vector<ReportRow> rows;
  VolumeSeries volume;
  CurvatureSeries curvature;
  double max_edge_drift = 0.0;
  double nontriviality = 0.0;     // largest change of any vertex-pair distance
  double apex_distance_change = 0.0;
  std::vector<Verdict> verdicts;

  bool pass() const;
};

PathEvaluation evaluate_path(const SampledPath& path, std::array<int, 2> pair, const Thresholds& th = {});

struct ExperimentResult {
  FlexSeed seed;
  ConstraintSystem system;
  RigidityCheck rigidity;
  FlexPath disk_path;
  SampledPath doubled;
  std::array<int, 2> apex_pair{};
  double t_max = 0.0;
  int t_max_halvings = 0;
  double jacobian_fd_error = 0.0;
  double symmetry_error = 0.0;
  PathEvaluation evaluation;
  std::vector<Verdict> verdicts;  // evaluation verdicts plus rigidity, Jacobian and symmetry

  bool pass() const;
};

ExperimentResult run_flex_experiment(const FlexSeed& seed, const ExperimentConfig& config, const Thresholds& th = {});
ExperimentResult run_flex_experiment(const ExperimentConfig& config, const Thresholds& th = {});

/// Doubled polyhedron at an arbitrary parameter, solved from the nearest path
/// sample to `tol`.
Polyhedron doubled_at(const ExperimentResult& run, double t, double tol = 1e-14);

/// Max relative deviation of the analytic Jacobian from centered differences.
double jacobian_fd_error(const ConstraintSystem& sys, const std::vector<Vec3M>& coords, double h = 1e-5);

}  // namespace minkflex
