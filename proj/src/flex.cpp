#include "minkflex/flex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "minkflex/errors.hpp"

namespace minkflex {

namespace {

double inf_norm(const Eigen::VectorXd& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

double max_abs_squared_length(const Polyhedron& p) {
  double m = std::numeric_limits<double>::infinity();
  for (double s : squared_edge_lengths(p)) m = std::min(m, std::abs(s));
  return m;
}

Polyhedron disk_of(const Polyhedron& closed, Edge removed) { return remove_adjacent_face_pair(closed, removed).disk; }

// Moves q4 by the minimal-norm Gauss-Newton correction until the two
// opposite-side equations of the boundary quadrilateral hold.
void equalize_opposite_sides(std::vector<Vec3M>& coords, const std::array<int, 4>& quad) {
  auto at = [&](int i) -> Vec3M& { return coords[static_cast<std::size_t>(quad[static_cast<std::size_t>(i)])]; };
  const Eigen::Vector3d jdiag(1.0, 1.0, -1.0);
  for (int it = 0; it < 50; ++it) {
    const Vec3M q1 = at(0), q2 = at(1), q3 = at(2), q4 = at(3);
    const Vec3M d43 = q4 - q3, d41 = q4 - q1, d12 = q1 - q2, d23 = q2 - q3;
    Eigen::Vector2d f(dot(d43, d43) - dot(d12, d12), dot(d41, d41) - dot(d23, d23));
    if (f.cwiseAbs().maxCoeff() < 1e-15) return;
    Eigen::Matrix<double, 2, 3> a;
    a.row(0) = 2.0 * eu(d43).cwiseProduct(jdiag).transpose();
    a.row(1) = 2.0 * eu(d41).cwiseProduct(jdiag).transpose();
    const Eigen::Vector3d step = a.transpose() * (a * a.transpose()).ldlt().solve(f);
    at(3) = q4 - from_eu(step);
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Seed

bool SeedChecks::pass() const {
  return sphere_type && strictly_convex && !null_edge && !degenerate_face && quad_violation == 0 && asymmetric &&
         rigid && curvature_defined;
}

std::string SeedChecks::summary() const {
  std::ostringstream os;
  os << "sphere type: " << (sphere_type ? "yes" : "no") << '\n';
  os << "strictly convex: " << (strictly_convex ? "yes" : "no") << '\n';
  for (const auto& r : convexity_reasons) os << "  " << r << '\n';
  os << "non-null edges: " << (null_edge ? "no (edge " + std::to_string(*null_edge) + ")" : std::string("yes")) << '\n';
  os << "nondegenerate faces: "
     << (degenerate_face ? "no (face " + std::to_string(*degenerate_face) + ")" : std::string("yes")) << '\n';
  os << "boundary quadrilateral hypotheses: "
     << (quad_violation == 0 ? std::string("pass") : "fail (condition " + std::to_string(quad_violation) + ")") << '\n';
  os << "asymmetry of Q: " << asymmetry << (asymmetric ? "" : " (too symmetric)") << '\n';
  os << "first-order rigid: " << (rigid ? "yes" : "no") << '\n';
  os << "conditions A-C: " << (pass() ? "pass" : "fail") << '\n';
  return os.str();
}

Triangle default_pinned_face(const Polyhedron& closed, Edge removed) {
  const FacePairRemoval r = remove_adjacent_face_pair(closed, removed);
  const auto loops = r.disk.surface.boundary_loops();
  std::vector<int> boundary = loops.empty() ? std::vector<int>{} : loops.front();
  Triangle best{};
  int best_count = 4;
  for (const Triangle& f : r.disk.surface.triangles()) {
    int count = 0;
    for (int v : f) count += static_cast<int>(std::count(boundary.begin(), boundary.end(), v));
    if (count < best_count) {
      best_count = count;
      best = f;
    }
  }
  return best;
}

SeedChecks check_seed(const Polyhedron& closed, Edge removed, Triangle pinned, const SeedOptions& opts) {
  SeedChecks c;
  const SurfaceReport rep = validate(closed.surface);
  c.sphere_type = rep.ok() && rep.type == SurfaceType::Sphere;
  if (!c.sphere_type) return c;

  const ConvexityReport conv = strict_convexity_check(closed);
  c.strictly_convex = conv.strictly_convex;
  c.convexity_reasons = conv.reasons;

  const auto sq = squared_edge_lengths(closed);
  for (std::size_t i = 0; i < sq.size(); ++i) {
    if (std::abs(sq[i]) <= std::max(kNullTol, opts.min_edge_sq)) {
      c.null_edge = i;
      break;
    }
  }
  for (int f = 0; f < static_cast<int>(closed.surface.triangles().size()); ++f) {
    try {
      (void)outward_unit_normal(closed, f);
    } catch (const Error&) {
      c.degenerate_face = f;
      break;
    }
  }

  Polyhedron disk;
  try {
    disk = disk_of(closed, removed);
    const BoundaryQuad quad = boundary_quad(disk);
    c.asymmetry = reflection_symmetry_error(disk, quad.axis());
    c.asymmetric = c.asymmetry > opts.min_asymmetry;
  } catch (const Error& e) {
    c.quad_violation = e.code() == Errc::Lemma2Violation ? static_cast<int>(e.detail()) : -1;
    return c;
  }

  try {
    const ConstraintSystem sys(closed, pinned, removed);
    c.rigid = rigidity_check(sys, closed.coords).ok;
  } catch (const Error&) {
    c.rigid = false;
  }

  if (!c.null_edge && !c.degenerate_face) {
    try {
      (void)total_mean_curvature(symmetrize(disk));
      c.curvature_defined = true;
    } catch (const Error&) {
      c.curvature_defined = false;
    }
  }
  return c;
}

FlexSeed make_seed(const SeedOptions& opts) {
  const Polyhedron base = make_octahedron(1.0, 1.0, opts.axis_height);
  const Edge removed{0, 1};
  const Triangle pinned = default_pinned_face(base, removed);
  const auto loops = disk_of(base, removed).surface.boundary_loops();
  std::array<int, 4> quad{};
  std::copy_n(loops.front().begin(), 4, quad.begin());

  std::mt19937_64 rng(opts.rng);
  for (int attempt = 0; attempt < opts.max_attempts; ++attempt) {
    Polyhedron p = base;
    for (Vec3M& x : p.coords) {
      x.x1 += opts.jitter * (2.0 * unit_uniform(rng) - 1.0);
      x.x2 += opts.jitter * (2.0 * unit_uniform(rng) - 1.0);
      x.x3 += opts.jitter * (2.0 * unit_uniform(rng) - 1.0);
    }
    equalize_opposite_sides(p.coords, quad);
    SeedChecks checks = check_seed(p, removed, pinned, opts);
    if (checks.pass()) return FlexSeed{std::move(p), removed, pinned, opts.rng, attempt, std::move(checks)};
  }
  throw Error(Errc::SeedSearchFailed, "no admissible seed in " + std::to_string(opts.max_attempts) + " attempts");
}

// ---------------------------------------------------------------------------
// Constraint system

ConstraintSystem::ConstraintSystem(const Polyhedron& closed, Triangle pinned, Edge perturbed)
    : surface_(closed.surface), pinned_(pinned), pinned_coords_(closed.coords) {
  const int nv = surface_.vertex_count();
  var_of_vertex_.assign(static_cast<std::size_t>(nv), -1);
  int next = 0;
  for (int v = 0; v < nv; ++v) {
    if (std::find(pinned.begin(), pinned.end(), v) == pinned.end()) var_of_vertex_[static_cast<std::size_t>(v)] = next++;
  }
  const auto in_pinned = [&](int v) { return std::find(pinned.begin(), pinned.end(), v) != pinned.end(); };
  std::optional<std::size_t> prow;
  for (const Edge& e : surface_.edges()) {
    if (in_pinned(e.a) && in_pinned(e.b)) continue;
    if (e == perturbed) prow = rows_.size();
    rows_.push_back(e);
  }
  if (!prow) throw Error(Errc::BadEdge, "perturbed edge is not a constrained edge");
  perturbed_row_ = *prow;
  if (rows_.size() != 3 * static_cast<std::size_t>(next)) {
    throw Error(Errc::NotClosed, "edge-length system is not square (" + std::to_string(rows_.size()) + " equations, " +
                                     std::to_string(3 * next) + " unknowns)");
  }
  baseline_ = values(pack(closed.coords));
}

Eigen::VectorXd ConstraintSystem::pack(const std::vector<Vec3M>& coords) const {
  Eigen::VectorXd x(static_cast<Eigen::Index>(rows_.size()));
  for (std::size_t v = 0; v < var_of_vertex_.size(); ++v) {
    const int k = var_of_vertex_[v];
    if (k < 0) continue;
    x.segment<3>(3 * k) = eu(coords[v]);
  }
  return x;
}

std::vector<Vec3M> ConstraintSystem::unpack(const Eigen::VectorXd& vars) const {
  std::vector<Vec3M> coords = pinned_coords_;
  for (std::size_t v = 0; v < var_of_vertex_.size(); ++v) {
    const int k = var_of_vertex_[v];
    if (k >= 0) coords[v] = from_eu(vars.segment<3>(3 * k));
  }
  return coords;
}

Eigen::VectorXd ConstraintSystem::values(const Eigen::VectorXd& vars) const {
  const std::vector<Vec3M> c = unpack(vars);
  Eigen::VectorXd f(static_cast<Eigen::Index>(rows_.size()));
  for (std::size_t m = 0; m < rows_.size(); ++m) {
    const Vec3M d = c[static_cast<std::size_t>(rows_[m].a)] - c[static_cast<std::size_t>(rows_[m].b)];
    f(static_cast<Eigen::Index>(m)) = 0.5 * dot(d, d);
  }
  return f;
}

namespace {

Eigen::MatrixXd edge_jacobian(const std::vector<Edge>& rows, const std::vector<int>& var_of_vertex,
                              const std::vector<Vec3M>& c, double zsign) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t m = 0; m < rows.size(); ++m) {
    const int j = rows[m].a, k = rows[m].b;
    const Vec3M d = c[static_cast<std::size_t>(j)] - c[static_cast<std::size_t>(k)];
    const Eigen::Vector3d row(d.x1, d.x2, zsign * d.x3);
    const auto r = static_cast<Eigen::Index>(m);
    if (const int vj = var_of_vertex[static_cast<std::size_t>(j)]; vj >= 0) jac.block<1, 3>(r, 3 * vj) = row.transpose();
    if (const int vk = var_of_vertex[static_cast<std::size_t>(k)]; vk >= 0) jac.block<1, 3>(r, 3 * vk) = -row.transpose();
  }
  return jac;
}

}  // namespace

Eigen::MatrixXd ConstraintSystem::jacobian(const Eigen::VectorXd& vars) const {
  return edge_jacobian(rows_, var_of_vertex_, unpack(vars), -1.0);
}

Eigen::MatrixXd ConstraintSystem::jacobian_euclidean(const Eigen::VectorXd& vars) const {
  return edge_jacobian(rows_, var_of_vertex_, unpack(vars), 1.0);
}

Eigen::VectorXd ConstraintSystem::targets(double t) const {
  Eigen::VectorXd target = baseline_;
  target(static_cast<Eigen::Index>(perturbed_row_)) += t;
  return target;
}

RigidityCheck rigidity_check(const ConstraintSystem& sys, const std::vector<Vec3M>& coords, double tau_rigid) {
  const Eigen::VectorXd x = sys.pack(coords);
  const Eigen::MatrixXd jm = sys.jacobian(x);
  RigidityCheck r;
  r.det = jm.partialPivLu().determinant();
  r.det_euclidean = sys.jacobian_euclidean(x).partialPivLu().determinant();
  r.scale = jm.rows() == 0 ? 0.0 : jm.rowwise().norm().maxCoeff();
  r.ok = std::abs(r.det) > tau_rigid * std::pow(r.scale, static_cast<double>(jm.rows()));
  return r;
}

NewtonResult solve_constraints(const ConstraintSystem& sys, double t, const std::vector<Vec3M>& warm,
                               const NewtonOptions& opts) {
  const Eigen::VectorXd target = sys.targets(t);
  Eigen::VectorXd x = sys.pack(warm);
  Eigen::VectorXd r = sys.values(x) - target;
  double res = inf_norm(r);
  for (int it = 0;; ++it) {
    if (res <= opts.tol) return {sys.unpack(x), it, res};
    if (it == opts.max_iterations) break;
    const Eigen::VectorXd dx = sys.jacobian(x).partialPivLu().solve(r);
    if (!dx.allFinite()) break;
    double lambda = 1.0;
    bool accepted = false;
    for (int h = 0; h <= opts.max_halvings; ++h, lambda *= 0.5) {
      const Eigen::VectorXd trial = x - lambda * dx;
      const Eigen::VectorXd rt = sys.values(trial) - target;
      if (inf_norm(rt) < res) {
        x = trial;
        r = rt;
        res = inf_norm(rt);
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  std::ostringstream os;
  os << "Newton iteration did not converge at t = " << t << " (residual " << res << ")";
  throw Error(Errc::NewtonDiverged, os.str());
}

FlexPath flex_disk(const ConstraintSystem& sys, const std::vector<Vec3M>& seed_coords, double t_max, int steps,
                   const NewtonOptions& opts) {
  if (steps < 1) throw Error(Errc::Usage, "steps must be positive");
  FlexPath out;
  out.path.surface = sys.surface();
  out.t_max = t_max;
  out.steps = steps;
  out.newton_tol = opts.tol;
  out.pinned_face = sys.pinned_face();
  out.perturbed_edge = sys.perturbed_edge();
  out.path.samples.push_back({0.0, seed_coords});

  const double det0 = std::abs(rigidity_check(sys, seed_coords).det);
  for (int i = 1; i <= steps; ++i) {
    const double t = t_max * static_cast<double>(i) / static_cast<double>(steps);
    const auto& prev = out.path.samples.back().coords;
    std::vector<Vec3M> guess = prev;
    if (out.path.samples.size() >= 2) {
      const auto& prev2 = out.path.samples[out.path.samples.size() - 2].coords;
      for (std::size_t v = 0; v < guess.size(); ++v) guess[v] = 2.0 * prev[v] - prev2[v];
    }
    NewtonResult sol;
    try {
      sol = solve_constraints(sys, t, guess, opts);
    } catch (const Error&) {
      sol = solve_constraints(sys, t, prev, opts);
    }
    if (std::abs(rigidity_check(sys, sol.coords).det) < 1e-6 * det0) {
      std::ostringstream os;
      os << "edge-length Jacobian became singular at t = " << t;
      throw Error(Errc::RigidityLost, os.str(), i);
    }
    out.max_residual = std::max(out.max_residual, sol.residual);
    out.path.samples.push_back({t, std::move(sol.coords)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Doubling

DoublingLayout doubling_layout(const SimplicialSurface& disk) {
  const auto loops = disk.boundary_loops();
  if (loops.size() != 1 || loops.front().size() != 4) throw Error(Errc::BadEdge, "boundary is not a single quadrilateral");
  DoublingLayout out;
  std::copy_n(loops.front().begin(), 4, out.quad.begin());
  const int nv = disk.vertex_count();
  out.copy_of.assign(static_cast<std::size_t>(nv), -1);
  for (int i = 0; i < 4; ++i) out.copy_of[static_cast<std::size_t>(out.quad[static_cast<std::size_t>(i)])] =
      out.quad[static_cast<std::size_t>((i + 2) % 4)];
  int next = nv;
  for (int v = 0; v < nv; ++v) {
    if (out.copy_of[static_cast<std::size_t>(v)] < 0) out.copy_of[static_cast<std::size_t>(v)] = next++;
  }
  std::vector<Triangle> tris = disk.triangles();
  for (const Triangle& f : disk.triangles()) {
    tris.push_back({out.copy_of[static_cast<std::size_t>(f[0])], out.copy_of[static_cast<std::size_t>(f[2])],
                    out.copy_of[static_cast<std::size_t>(f[1])]});
  }
  out.surface = SimplicialSurface(next, std::move(tris));
  return out;
}

Polyhedron symmetrize(const Polyhedron& disk, double glue_tol) {
  const BoundaryQuad quad = boundary_quad(disk);
  const DoublingLayout layout = doubling_layout(disk.surface);
  const LineM axis = quad.axis();

  std::vector<Vec3M> coords(static_cast<std::size_t>(layout.surface.vertex_count()));
  std::copy(disk.coords.begin(), disk.coords.end(), coords.begin());
  double scale = 1.0;
  for (const Vec3M& x : disk.coords) scale = std::max(scale, euclidean_norm(x));
  for (int v = 0; v < disk.surface.vertex_count(); ++v) {
    const Vec3M image = reflect_in_line(axis, disk.at(v));
    const int target = layout.copy_of[static_cast<std::size_t>(v)];
    if (target < disk.surface.vertex_count()) {
      const double err = euclidean_norm(image - disk.at(target));
      if (err > glue_tol * scale) {
        std::ostringstream os;
        os << "reflected boundary vertex " << v << " misses vertex " << target << " by " << err;
        throw Error(Errc::GlueMismatch, os.str(), v);
      }
    } else {
      coords[static_cast<std::size_t>(target)] = image;
    }
  }
  return {layout.surface, std::move(coords)};
}

double reflection_symmetry_error(const Polyhedron& p, const LineM& axis) {
  double worst = 0.0;
  for (const Vec3M& x : p.coords) {
    const Vec3M image = reflect_in_line(axis, x);
    double best = std::numeric_limits<double>::infinity();
    for (const Vec3M& y : p.coords) best = std::min(best, euclidean_norm(image - y));
    worst = std::max(worst, best);
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Experiment

bool PathEvaluation::pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

bool ExperimentResult::pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

PathEvaluation evaluate_path(const SampledPath& path, std::array<int, 2> pair, const Thresholds& th) {
  PathEvaluation ev;
  if (path.size() == 0) return ev;
  ev.volume = volume_along_path_parallel(path);
  ev.curvature = mean_curvature_along_path_parallel(path);

  const Polyhedron first = path.at(0);
  const auto sq0 = squared_edge_lengths(first);
  const int nv = path.surface.vertex_count();
  auto pair_value = [](const Vec3M& a, const Vec3M& b) {
    const EpsNorm en = epsilon_norm(b - a);
    return en.eps * en.norm;
  };
  std::vector<double> pairs0;
  for (int i = 0; i < nv; ++i)
    for (int j = i + 1; j < nv; ++j) pairs0.push_back(dot(first.at(j) - first.at(i), first.at(j) - first.at(i)));
  const double apex0 = pair_value(first.at(pair[0]), first.at(pair[1]));

  for (std::size_t s = 0; s < path.size(); ++s) {
    const Polyhedron p = path.at(s);
    const auto sq = squared_edge_lengths(p);
    double drift = 0.0;
    for (std::size_t e = 0; e < sq.size(); ++e) drift = std::max(drift, std::abs(sq[e] - sq0[e]));
    ev.max_edge_drift = std::max(ev.max_edge_drift, drift);

    std::size_t k = 0;
    for (int i = 0; i < nv; ++i) {
      for (int j = i + 1; j < nv; ++j, ++k) {
        // Compare complex lengths: |sqrt(a) - sqrt(b)| over C.
        const std::complex<double> now = MLength{dot(p.at(j) - p.at(i), p.at(j) - p.at(i))}.value();
        const std::complex<double> then = MLength{pairs0[k]}.value();
        ev.nontriviality = std::max(ev.nontriviality, std::abs(now - then));
      }
    }
    const double apex = pair_value(p.at(pair[0]), p.at(pair[1]));
    ev.apex_distance_change = std::max(ev.apex_distance_change, std::abs(apex - apex0));
    ev.rows.push_back({path.samples[s].t, drift, ev.volume.volume[s], ev.curvature.mean_curvature[s], apex});
  }

  const double vol0 = ev.volume.volume.front();
  const double m0 = ev.curvature.mean_curvature.front();
  ev.verdicts.push_back({"edge_length_drift", ev.max_edge_drift <= th.edge_drift, ev.max_edge_drift, th.edge_drift});
  ev.verdicts.push_back({"nontrivial_flex", ev.nontriviality >= th.nontriviality, ev.nontriviality, th.nontriviality});
  const double vol_tol = th.volume_rel * (1.0 + std::abs(vol0));
  ev.verdicts.push_back({"volume_invariance", ev.volume.max_deviation <= vol_tol, ev.volume.max_deviation, vol_tol});
  const double m_tol = th.curvature_rel * (1.0 + std::abs(m0));
  const bool m_ok = ev.curvature.failures.empty() && std::isfinite(ev.curvature.max_deviation) &&
                    ev.curvature.max_deviation <= m_tol;
  ev.verdicts.push_back({"mean_curvature_invariance", m_ok, ev.curvature.max_deviation, m_tol});
  return ev;
}

namespace {

std::array<int, 2> apex_pair_of(const Polyhedron& closed, Edge removed) {
  const FacePairRemoval r = remove_adjacent_face_pair(closed, removed);
  return {std::min(r.apexes[0], r.apexes[1]), std::max(r.apexes[0], r.apexes[1])};
}

}  // namespace

double jacobian_fd_error(const ConstraintSystem& sys, const std::vector<Vec3M>& coords, double h) {
  const Eigen::VectorXd x = sys.pack(coords);
  const Eigen::MatrixXd jac = sys.jacobian(x);
  Eigen::MatrixXd fd(jac.rows(), jac.cols());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    Eigen::VectorXd xp = x, xm = x;
    xp(j) += h;
    xm(j) -= h;
    fd.col(j) = (sys.values(xp) - sys.values(xm)) / (2.0 * h);
  }
  const double scale = jac.cwiseAbs().maxCoeff();
  return (jac - fd).cwiseAbs().maxCoeff() / (scale > 0.0 ? scale : 1.0);
}

ExperimentResult run_flex_experiment(const FlexSeed& seed, const ExperimentConfig& config, const Thresholds& th) {
  if (config.steps < 1) throw Error(Errc::Usage, "steps must be positive");
  ExperimentResult out;
  out.seed = seed;
  out.system = ConstraintSystem(seed.polyhedron, seed.pinned_face, seed.removed_edge);
  out.rigidity = rigidity_check(out.system, seed.polyhedron.coords);
  out.apex_pair = apex_pair_of(seed.polyhedron, seed.removed_edge);
  const Edge removed = seed.removed_edge;
  NewtonOptions newton;
  newton.tol = config.newton_tol;

  auto build = [&](double t_max) {
    FlexPath fp = flex_disk(out.system, seed.polyhedron.coords, t_max, config.steps, newton);
    SampledPath doubled;
    for (std::size_t s = 0; s < fp.path.size(); ++s) {
      Polyhedron d;
      try {
        d = symmetrize(disk_of(fp.path.at(s), removed));
      } catch (const Error& e) {
        throw Error(e.code(), "sample " + std::to_string(s) + ": " + e.what(), static_cast<long>(s));
      }
      if (s == 0) doubled.surface = d.surface;
      doubled.samples.push_back({fp.path.samples[s].t, std::move(d.coords)});
    }
    out.disk_path = std::move(fp);
    out.doubled = std::move(doubled);
  };

  if (config.t_max) {
    out.t_max = *config.t_max;
    build(out.t_max);
  } else {
    out.t_max = 0.01 * max_abs_squared_length(seed.polyhedron);
    for (;; ++out.t_max_halvings) {
      try {
        build(out.t_max);
        break;
      } catch (const Error& e) {
        const Errc c = e.code();
        const bool retry = c == Errc::NewtonDiverged || c == Errc::RigidityLost || c == Errc::Lemma2Violation ||
                           c == Errc::GlueMismatch;
        if (!retry || out.t_max_halvings >= 20) throw;
        out.t_max *= 0.5;
      }
    }
  }

  // Spot-check the analytic Jacobian at three path samples chosen by a fixed RNG.
  std::mt19937_64 rng(config.seed_rng ^ 0x9e3779b97f4a7c15ULL);
  for (int k = 0; k < 3; ++k) {
    const auto s = static_cast<std::size_t>(unit_uniform(rng) * static_cast<double>(out.disk_path.path.size()));
    const auto idx = std::min(s, out.disk_path.path.size() - 1);
    out.jacobian_fd_error =
        std::max(out.jacobian_fd_error, jacobian_fd_error(out.system, out.disk_path.path.samples[idx].coords));
  }

  for (std::size_t s = 0; s < out.doubled.size(); ++s) {
    const Polyhedron disk = disk_of(out.disk_path.path.at(s), removed);
    out.symmetry_error = std::max(out.symmetry_error, reflection_symmetry_error(out.doubled.at(s), boundary_quad(disk).axis()));
  }

  out.evaluation = evaluate_path(out.doubled, out.apex_pair, th);
  out.verdicts = out.evaluation.verdicts;
  const double det_gap = std::abs(std::abs(out.rigidity.det) - std::abs(out.rigidity.det_euclidean));
  const double det_tol = 1e-9 * std::abs(out.rigidity.det);
  out.verdicts.push_back({"first_order_rigidity", out.rigidity.ok && det_gap <= det_tol, det_gap, det_tol});
  out.verdicts.push_back({"jacobian_finite_difference", out.jacobian_fd_error <= th.jacobian_rel, out.jacobian_fd_error,
                          th.jacobian_rel});
  out.verdicts.push_back({"reflection_symmetry", out.symmetry_error <= th.symmetry, out.symmetry_error, th.symmetry});
  return out;
}

ExperimentResult run_flex_experiment(const ExperimentConfig& config, const Thresholds& th) {
  SeedOptions opts;
  opts.rng = config.seed_rng;
  opts.jitter = config.jitter;
  return run_flex_experiment(make_seed(opts), config, th);
}

Polyhedron doubled_at(const ExperimentResult& run, double t, double tol) {
  const auto& samples = run.disk_path.path.samples;
  std::size_t nearest = 0;
  for (std::size_t s = 1; s < samples.size(); ++s) {
    if (std::abs(samples[s].t - t) < std::abs(samples[nearest].t - t)) nearest = s;
  }
  NewtonOptions opts;
  opts.tol = tol;
  opts.max_iterations = 100;
  NewtonResult sol;
  try {
    sol = solve_constraints(run.system, t, samples[nearest].coords, opts);
  } catch (const Error&) {
    // The tight tolerance can sit at the rounding floor; accept the last iterate one notch looser.
    opts.tol = std::max(tol, 1e-13);
    sol = solve_constraints(run.system, t, samples[nearest].coords, opts);
  }
  return symmetrize(disk_of({run.system.surface(), sol.coords}, run.seed.removed_edge));
}

}  // namespace minkflex
