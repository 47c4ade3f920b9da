#include <cmath>

#include "minkflex/flex.hpp"
#include "minkflex/volume.hpp"
#include "support.hpp"

using namespace minkflex;
using namespace testing;

namespace {

const ExperimentResult& default_run() {
  static const ExperimentResult run = run_flex_experiment(ExperimentConfig{});
  return run;
}

double sq_len(const std::vector<Vec3M>& c, Edge e) {
  const Vec3M d = c[static_cast<std::size_t>(e.b)] - c[static_cast<std::size_t>(e.a)];
  return dot(d, d);
}

}  // namespace

TEST_CASE("Jacobian rows of a single free vertex") {
  const Polyhedron tet{SimplicialSurface(4, {{0, 1, 2}, {0, 3, 1}, {1, 3, 2}, {2, 3, 0}}),
                       {{0, 0, 0}, {1, 0.2, 0}, {0.1, 1, 0.3}, {0.3, 0.4, -1.2}}};
  const ConstraintSystem sys(tet, {0, 1, 2}, {0, 3});
  REQUIRE(sys.size() == 3);
  const Eigen::MatrixXd j = sys.jacobian(sys.pack(tet.coords));
  for (std::size_t m = 0; m < 3; ++m) {
    const Edge e = sys.constrained_edges()[m];
    REQUIRE(e.b == 3);
    const Vec3M pj = tet.at(e.a), pk = tet.at(e.b);
    // Vertex 3 is the k of the row: negated (x_j - x_k, y_j - y_k, z_k - z_j).
    const auto r = static_cast<Eigen::Index>(m);
    CHECK(j(r, 0) == -(pj.x1 - pk.x1));
    CHECK(j(r, 1) == -(pj.x2 - pk.x2));
    CHECK(j(r, 2) == -(pk.x3 - pj.x3));
  }
  const Eigen::MatrixXd je = sys.jacobian_euclidean(sys.pack(tet.coords));
  CHECK((je.col(2) + j.col(2)).norm() == 0.0);
  CHECK(je.leftCols(2) == j.leftCols(2));
}

TEST_CASE("seed search") {
  const FlexSeed seed = make_seed();
  CHECK(seed.checks.pass());
  CHECK(seed.rng == kDefaultSeedRng);
  CHECK(seed.attempt >= 0);
  CHECK(seed.checks.summary().find("conditions A-C: pass") != std::string::npos);
  const SurfaceReport r = validate(seed.polyhedron.surface);
  CHECK(r.type == SurfaceType::Sphere);
  for (double s : squared_edge_lengths(seed.polyhedron)) CHECK(std::abs(s) > 0.05);

  // Same options, same seed.
  const FlexSeed again = make_seed();
  CHECK(again.polyhedron.coords == seed.polyhedron.coords);
}

TEST_CASE("the unperturbed octahedron is too symmetric") {
  const Polyhedron oct = make_octahedron(1.0, 1.0, 1.5);
  const SeedChecks c = check_seed(oct, {0, 1}, default_pinned_face(oct, {0, 1}));
  CHECK(c.sphere_type);
  CHECK(c.strictly_convex);
  CHECK_FALSE(c.null_edge);
  CHECK(c.quad_violation == 0);
  CHECK(c.asymmetry < 1e-12);
  CHECK_FALSE(c.asymmetric);
  CHECK_FALSE(c.pass());

  SeedOptions none;
  none.jitter = 0.0;
  none.max_attempts = 3;
  CHECK(error_code_of([&] { (void)make_seed(none); }) == Errc::SeedSearchFailed);
}

TEST_CASE("a seed with a null edge is rejected with the edge id") {
  const Polyhedron unit = make_octahedron();
  const SeedChecks c = check_seed(unit, {0, 1}, default_pinned_face(unit, {0, 1}));
  REQUIRE(c.null_edge.has_value());
  const Edge e = unit.surface.edges()[*c.null_edge];
  CHECK(std::abs(sq_len(unit.coords, e)) < 1e-12);
  CHECK(c.summary().find("edge " + std::to_string(*c.null_edge)) != std::string::npos);
  CHECK_FALSE(c.pass());
}

TEST_CASE("first-order rigidity at the seed") {
  const FlexSeed seed = make_seed();
  const ConstraintSystem sys(seed.polyhedron, seed.pinned_face, seed.removed_edge);
  CHECK(sys.size() == 3 * (6 - 3));
  const RigidityCheck r = rigidity_check(sys, seed.polyhedron.coords);
  CHECK(r.ok);
  CHECK(r.det != 0.0);
  CHECK(std::abs(std::abs(r.det) - std::abs(r.det_euclidean)) <= 1e-9 * std::abs(r.det));
  // Negating the x3 columns changes the determinant by (-1)^(number of free vertices).
  CHECK(r.det == doctest::Approx(-r.det_euclidean).epsilon(1e-9));

  Polyhedron flat = seed.polyhedron;
  for (Vec3M& x : flat.coords) x.x3 = 0.0;
  const ConstraintSystem fsys(flat, seed.pinned_face, seed.removed_edge);
  CHECK_FALSE(rigidity_check(fsys, flat.coords).ok);

  CHECK(jacobian_fd_error(sys, seed.polyhedron.coords) < 1e-6);
  // First-order Taylor check with a small random step.
  auto g = rng_for(50);
  const Eigen::VectorXd x = sys.pack(seed.polyhedron.coords);
  Eigen::VectorXd d(x.size());
  for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = uniform(g, -1, 1);
  for (double s : {1e-3, 1e-4}) {
    const Eigen::VectorXd lin = sys.values(x + s * d) - sys.values(x) - sys.jacobian(x) * (s * d);
    CHECK(lin.cwiseAbs().maxCoeff() <= 2.0 * s * s * d.squaredNorm());
  }
}

TEST_CASE("system must be square") {
  const FlexSeed seed = make_seed();
  const Polyhedron disk = remove_adjacent_face_pair(seed.polyhedron, seed.removed_edge).disk;
  CHECK(error_code_of([&] { (void)ConstraintSystem(disk, seed.pinned_face, {0, 4}); }) == Errc::NotClosed);
  const Edge inside_pinned = Edge::of(seed.pinned_face[0], seed.pinned_face[1]);
  CHECK(error_code_of([&] { (void)ConstraintSystem(seed.polyhedron, seed.pinned_face, inside_pinned); }) == Errc::BadEdge);
}

TEST_CASE("flex path of the disk") {
  const ExperimentResult& run = default_run();
  const FlexPath& fp = run.disk_path;
  const ConstraintSystem& sys = run.system;
  REQUIRE(fp.path.size() == 33);
  CHECK(fp.path.samples.front().t == 0.0);
  CHECK(fp.path.samples.front().coords == run.seed.polyhedron.coords);
  const Edge pe = sys.perturbed_edge();
  CHECK(pe == run.seed.removed_edge);
  const double base = sq_len(run.seed.polyhedron.coords, pe);
  for (const PathSample& s : fp.path.samples) {
    const Eigen::VectorXd r = sys.values(sys.pack(s.coords)) - sys.targets(s.t);
    CHECK(r.cwiseAbs().maxCoeff() <= fp.newton_tol);
    CHECK(std::abs(sq_len(s.coords, pe) - (base + 2.0 * s.t)) <= 2.0 * fp.newton_tol);
    for (std::size_t m = 0; m < sys.size(); ++m) {
      if (m == sys.perturbed_row()) continue;
      const Edge e = sys.constrained_edges()[m];
      CHECK(std::abs(sq_len(s.coords, e) - sq_len(run.seed.polyhedron.coords, e)) <= 1e-10);
    }
    // Pinned face stays put.
    for (int v : sys.pinned_face()) CHECK(s.coords[static_cast<std::size_t>(v)] == run.seed.polyhedron.at(v));
  }
  CHECK(sys.targets(0.25)(static_cast<Eigen::Index>(sys.perturbed_row())) -
            sys.targets(0.0)(static_cast<Eigen::Index>(sys.perturbed_row())) ==
        0.25);
  // The two apexes of the removed faces move relative to each other.
  CHECK(run.evaluation.apex_distance_change > 1e-4);
}

TEST_CASE("zero parameter range gives identical samples") {
  const FlexSeed seed = make_seed();
  const ConstraintSystem sys(seed.polyhedron, seed.pinned_face, seed.removed_edge);
  const FlexPath fp = flex_disk(sys, seed.polyhedron.coords, 0.0, 4);
  REQUIRE(fp.path.size() == 5);
  for (const PathSample& s : fp.path.samples) CHECK(s.coords == seed.polyhedron.coords);
}

TEST_CASE("Newton failure far from the seed") {
  const FlexSeed seed = make_seed();
  const ConstraintSystem sys(seed.polyhedron, seed.pinned_face, seed.removed_edge);
  const Errc c = error_code_of([&] { (void)flex_disk(sys, seed.polyhedron.coords, 50.0, 1); });
  CHECK((c == Errc::NewtonDiverged || c == Errc::RigidityLost));
}

TEST_CASE("doubling") {
  const ExperimentResult& run = default_run();
  const Polyhedron q0 = remove_adjacent_face_pair(run.seed.polyhedron, run.seed.removed_edge).disk;
  const Polyhedron d0 = symmetrize(q0);
  CHECK(d0.surface.triangles().size() == 2 * q0.surface.triangles().size());
  const SurfaceReport r = validate(d0.surface);
  CHECK(r.ok());
  CHECK(r.type == SurfaceType::Sphere);
  CHECK(r.vertices == 8);
  CHECK(r.edges == 18);
  CHECK(d0.coords == run.doubled.samples.front().coords);

  for (std::size_t s = 0; s < run.doubled.size(); s += 8) {
    const Polyhedron q = remove_adjacent_face_pair(run.disk_path.path.at(s), run.seed.removed_edge).disk;
    const BoundaryQuad b = boundary_quad(q);
    const LineM axis = b.axis();
    CHECK(dist(reflect_in_line(axis, b.point[0]), b.point[2]) < 1e-9);
    CHECK(dist(reflect_in_line(axis, b.point[1]), b.point[3]) < 1e-9);
    CHECK(reflection_symmetry_error(run.doubled.at(s), axis) < 1e-8);
  }
  // The seed's Q itself is not symmetric.
  CHECK(reflection_symmetry_error(q0, boundary_quad(q0).axis()) > 1e-3);

  // A boundary defect below the quadrilateral tolerance but above the glue tolerance.
  Polyhedron off = q0;
  off.coords[static_cast<std::size_t>(boundary_quad(q0).vertex[3])] += Vec3M{1e-11, 0, 0};
  CHECK(error_code_of([&] { (void)symmetrize(off, 1e-14); }) == Errc::GlueMismatch);
}

TEST_CASE("invariants along the default experiment") {
  const ExperimentResult& run = default_run();
  CHECK(run.evaluation.max_edge_drift <= 1e-9);
  CHECK(run.evaluation.nontriviality >= 1e-4);
  CHECK(run.evaluation.volume.max_deviation <= 1e-7);
  CHECK(run.jacobian_fd_error <= 1e-6);
  CHECK(run.symmetry_error <= 1e-8);
  CHECK(run.evaluation.rows.size() == run.doubled.size());
  // The two halves carry opposite orientations about a common axis, so their cone volumes cancel.
  for (const ReportRow& row : run.evaluation.rows) CHECK(std::abs(row.vol) < 1e-12);
}

TEST_CASE("scaling path is flagged") {
  const ExperimentResult& run = default_run();
  // On the doubled path the volume vanishes identically, so the edge check catches scaling.
  SampledPath scaled = run.doubled;
  for (PathSample& s : scaled.samples) {
    for (Vec3M& x : s.coords) x = (1.0 + s.t) * x;
  }
  const PathEvaluation bad = evaluate_path(scaled, run.apex_pair);
  CHECK_FALSE(bad.verdicts[0].pass);
  // A closed polyhedron with nonzero volume: the volume check catches scaling.
  SampledPath seed_scaled{run.seed.polyhedron.surface, {}};
  for (const PathSample& s : run.doubled.samples) {
    std::vector<Vec3M> c = run.seed.polyhedron.coords;
    for (Vec3M& x : c) x = (1.0 + s.t) * x;
    seed_scaled.samples.push_back({s.t, c});
  }
  const PathEvaluation flagged = evaluate_path(seed_scaled, {4, 5});
  const Verdict& vol = flagged.verdicts[2];
  CHECK(vol.name == "volume_invariance");
  CHECK_FALSE(vol.pass);
  const double v0 = generalized_volume(run.seed.polyhedron);
  CHECK(vol.value == doctest::Approx((std::pow(1.0 + run.t_max, 3) - 1.0) * std::abs(v0)).epsilon(1e-8));
}

TEST_CASE("two-sample experiment") {
  ExperimentConfig c;
  c.steps = 1;
  const ExperimentResult run = run_flex_experiment(c);
  CHECK(run.doubled.size() == 2);
  CHECK(run.evaluation.rows.size() == 2);
  CHECK(run.evaluation.max_edge_drift <= 1e-9);
  CHECK(error_code_of([] {
          ExperimentConfig z;
          z.steps = 0;
          (void)run_flex_experiment(z);
        }) == Errc::Usage);
}

TEST_CASE("doubled polyhedron off the sample grid") {
  const ExperimentResult& run = default_run();
  const Polyhedron d = doubled_at(run, run.disk_path.path.samples[5].t);
  for (std::size_t v = 0; v < d.coords.size(); ++v) CHECK(dist(d.coords[v], run.doubled.samples[5].coords[v]) < 1e-9);
  const Polyhedron mid = doubled_at(run, 0.5 * (run.disk_path.path.samples[5].t + run.disk_path.path.samples[6].t));
  const auto sq0 = squared_edge_lengths(run.doubled.at(0));
  const auto sq = squared_edge_lengths(mid);
  for (std::size_t e = 0; e < sq.size(); ++e) CHECK(std::abs(sq[e] - sq0[e]) < 1e-12);
}
