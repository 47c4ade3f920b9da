#include "minkflex/curvature.hpp"

#include <cmath>
#include <exception>
#include <limits>
#include <numbers>

#include "minkflex/angle.hpp"
#include "minkflex/errors.hpp"

namespace minkflex {

namespace {

int third_vertex(const Triangle& t, Edge g) {
  for (int v : t) {
    if (v != g.a && v != g.b) return v;
  }
  return -1;
}

// f1 traverses g as a -> b, f2 as b -> a.
std::pair<int, int> faces_at(const Polyhedron& p, Edge g) {
  const auto idx = p.surface.edge_index(g);
  if (!idx || p.surface.faces_of_edge(*idx).size() != 2) {
    throw Error(Errc::NotClosed, "edge is not shared by two faces");
  }
  const auto& faces = p.surface.faces_of_edge(*idx);
  const Triangle& t0 = p.surface.triangles()[static_cast<std::size_t>(faces[0])];
  bool forward = false;
  for (int i = 0; i < 3; ++i) {
    forward = forward || (t0[static_cast<std::size_t>(i)] == g.a && t0[static_cast<std::size_t>((i + 1) % 3)] == g.b);
  }
  return forward ? std::pair{faces[0], faces[1]} : std::pair{faces[1], faces[0]};
}

bool is_flat(double theta, double tol) { return theta <= tol || std::abs(theta - std::numbers::pi) <= tol; }

EdgeCurvatureTerm edge_term(const Polyhedron& p, std::size_t i, std::span<const UnitNormal> normals, double tau) {
  const Edge g = p.surface.edges()[i];
  const Vec3M gv = p.edge_vector(g);
  if (std::abs(dot(gv, gv)) <= tau) {
    throw Error(Errc::NullEdge, "edge (" + std::to_string(g.a) + "," + std::to_string(g.b) + ") is null",
                static_cast<long>(i));
  }
  const auto& faces = p.surface.faces_of_edge(i);
  if (faces.size() != 2) throw Error(Errc::NotClosed, "mean curvature needs a closed surface", static_cast<long>(i));
  EdgeCurvatureTerm term;
  term.edge = g;
  try {
    term.theta = nonoriented_angle_3d(normals[static_cast<std::size_t>(faces[0])].m,
                                      normals[static_cast<std::size_t>(faces[1])].m, tau);
  } catch (const Error& e) {
    throw Error(e.code(), "edge (" + std::to_string(g.a) + "," + std::to_string(g.b) + "): " + e.what(),
                static_cast<long>(i));
  }
  const EpsNorm en = epsilon_norm(gv);
  term.eps = en.eps;
  term.norm = en.norm;
  term.contribution = 0.5 * term.theta * en.eps * en.norm;
  return term;
}

MeanCurvatureReport assemble(std::vector<EdgeCurvatureTerm> terms) {
  MeanCurvatureReport out;
  out.edges = std::move(terms);
  for (const auto& t : out.edges) out.total += t.contribution;
  return out;
}

}  // namespace

UnitNormal outward_unit_normal(const Polyhedron& p, int face, double tau_null) {
  const Triangle& t = p.surface.triangles()[static_cast<std::size_t>(face)];
  const Eigen::Vector3d a = eu(p.at(t[0]));
  const Eigen::Vector3d n = (eu(p.at(t[1])) - a).cross(eu(p.at(t[2])) - a);
  // J n is Minkowski-orthogonal to the face; (Jn, Jn) = n1^2 + n2^2 - n3^2.
  const Vec3M jn{n.x(), n.y(), -n.z()};
  const double mm = dot(jn, jn);
  if (std::abs(mm) <= tau_null * n.squaredNorm()) {
    throw Error(Errc::DegenerateFacePlane, "face " + std::to_string(face) + " carries a degenerate metric", face);
  }
  // det[u, w, Jn] = n . Jn = (Jn, Jn): flip timelike normals onto the outer side.
  const double sign = mm > 0.0 ? 1.0 : -1.0;
  return {sign * jn / std::sqrt(std::abs(mm)), mm > 0.0 ? 1 : -1};
}

Vec3M inward_conormal(const Polyhedron& p, int face, Edge g) {
  const Triangle& t = p.surface.triangles()[static_cast<std::size_t>(face)];
  const Vec3M gv = p.edge_vector(g);
  const Vec3M w = p.at(third_vertex(t, g)) - p.at(g.a);
  const Vec3M n = w - (dot(w, gv) / dot(gv, gv)) * gv;
  return n / std::sqrt(std::abs(dot(n, n)));
}

double dihedral_angle(const Polyhedron& p, Edge g, double tau_null) {
  const Vec3M gv = p.edge_vector(g);
  if (std::abs(dot(gv, gv)) <= tau_null) throw Error(Errc::NullEdge, "edge is null");
  const auto [f1, f2] = faces_at(p, g);
  return nonoriented_angle_3d(outward_unit_normal(p, f1, tau_null).m, outward_unit_normal(p, f2, tau_null).m, tau_null);
}

std::size_t MeanCurvatureReport::flat_edge_count(double flat_tol) const {
  std::size_t n = 0;
  for (const auto& e : edges) n += is_flat(e.theta, flat_tol);
  return n;
}

MeanCurvatureReport total_mean_curvature(const Polyhedron& p, double tau_null) {
  const auto nf = p.surface.triangles().size();
  std::vector<UnitNormal> normals;
  normals.reserve(nf);
  for (std::size_t f = 0; f < nf; ++f) normals.push_back(outward_unit_normal(p, static_cast<int>(f), tau_null));
  std::vector<EdgeCurvatureTerm> terms;
  terms.reserve(p.surface.edges().size());
  for (std::size_t i = 0; i < p.surface.edges().size(); ++i) terms.push_back(edge_term(p, i, normals, tau_null));
  return assemble(std::move(terms));
}

MeanCurvatureReport total_mean_curvature_parallel(const Polyhedron& p, double tau_null) {
  const auto nf = static_cast<long>(p.surface.triangles().size());
  const auto ne = static_cast<long>(p.surface.edges().size());
  std::vector<UnitNormal> normals(static_cast<std::size_t>(nf));
  std::vector<EdgeCurvatureTerm> terms(static_cast<std::size_t>(ne));
  // Exceptions cannot leave an OpenMP region; keep them and rethrow the first
  // one in index order, which is what the serial loop would have thrown.
  std::vector<std::exception_ptr> face_err(static_cast<std::size_t>(nf));
  std::vector<std::exception_ptr> edge_err(static_cast<std::size_t>(ne));
#pragma omp parallel
  {
#pragma omp for schedule(static)
    for (long f = 0; f < nf; ++f) {
      try {
        normals[static_cast<std::size_t>(f)] = outward_unit_normal(p, static_cast<int>(f), tau_null);
      } catch (...) {
        face_err[static_cast<std::size_t>(f)] = std::current_exception();
      }
    }
#pragma omp for schedule(static)
    for (long i = 0; i < ne; ++i) {
      try {
        terms[static_cast<std::size_t>(i)] = edge_term(p, static_cast<std::size_t>(i), normals, tau_null);
      } catch (...) {
        edge_err[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  }
  for (const auto& e : face_err) {
    if (e) std::rethrow_exception(e);
  }
  for (const auto& e : edge_err) {
    if (e) std::rethrow_exception(e);
  }
  return assemble(std::move(terms));
}

double total_mean_curvature_euclidean(const Polyhedron& p) {
  std::vector<Eigen::Vector3d> normals;
  for (const Triangle& t : p.surface.triangles()) {
    const Eigen::Vector3d a = eu(p.at(t[0]));
    normals.push_back((eu(p.at(t[1])) - a).cross(eu(p.at(t[2])) - a).normalized());
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < p.surface.edges().size(); ++i) {
    const auto& faces = p.surface.faces_of_edge(i);
    const Eigen::Vector3d& n1 = normals[static_cast<std::size_t>(faces[0])];
    const Eigen::Vector3d& n2 = normals[static_cast<std::size_t>(faces[1])];
    const double angle = std::atan2(n1.cross(n2).norm(), n1.dot(n2));
    sum += 0.5 * angle * eu(p.edge_vector(p.surface.edges()[i])).norm();
  }
  return sum;
}

Vec2M edge_normal_sum(std::span<const Vec2M> edges, double tau_null) {
  Vec2M sum;
  for (const Vec2M& g : edges) {
    const EpsNorm en = epsilon_norm(g);
    sum = sum + (en.eps * en.norm) * right_normal(g, tau_null);
  }
  return sum;
}

namespace {

CurvatureSeries curvature_series(const SampledPath& path, bool parallel) {
  const std::size_t n = path.size();
  CurvatureSeries out;
  out.mean_curvature.assign(n, std::numeric_limits<double>::quiet_NaN());
  out.flat_edges.assign(n, 0);
  std::vector<std::string> errors(n);
  const auto body = [&](std::size_t i) {
    try {
      const MeanCurvatureReport r = total_mean_curvature(path.at(i));
      out.mean_curvature[i] = r.total;
      out.flat_edges[i] = r.flat_edge_count();
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  };
  if (parallel) {
    const auto ln = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < ln; ++i) body(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < n; ++i) body(i);
  }
  for (std::size_t i = 0; i < n; ++i) {
    out.t.push_back(path.samples[i].t);
    if (!errors[i].empty()) out.failures.push_back({i, errors[i]});
  }
  if (n > 0 && std::isfinite(out.mean_curvature.front())) {
    for (double m : out.mean_curvature) {
      if (std::isfinite(m)) out.max_deviation = std::max(out.max_deviation, std::abs(m - out.mean_curvature.front()));
    }
  }
  return out;
}

}  // namespace

CurvatureSeries mean_curvature_along_path(const SampledPath& path) { return curvature_series(path, false); }
CurvatureSeries mean_curvature_along_path_parallel(const SampledPath& path) { return curvature_series(path, true); }

bool is_reflex_edge(const Polyhedron& p, Edge g) {
  const auto [f1, f2] = faces_at(p, g);
  const Triangle& t1 = p.surface.triangles()[static_cast<std::size_t>(f1)];
  const Triangle& t2 = p.surface.triangles()[static_cast<std::size_t>(f2)];
  const Eigen::Vector3d n = eu(p.at(t1[1]) - p.at(t1[0])).cross(eu(p.at(t1[2]) - p.at(t1[0])));
  return n.dot(eu(p.at(third_vertex(t2, g)) - p.at(t1[0]))) > 0.0;
}

double signed_mean_curvature(const Polyhedron& p, double tau_null) {
  const MeanCurvatureReport rep = total_mean_curvature(p, tau_null);
  double total = 0.0;
  for (const EdgeCurvatureTerm& term : rep.edges) total += is_reflex_edge(p, term.edge) ? -term.contribution : term.contribution;
  return total;
}

std::vector<AngleRateRow> angle_rate_check(const Polyhedron& before, const Polyhedron& at, const Polyhedron& after,
                                           double h, double flat_tol) {
  std::vector<AngleRateRow> rows;
  for (const Edge& g : at.surface.edges()) {
    AngleRateRow row;
    row.edge = g;
    row.theta = dihedral_angle(at, g);
    if (is_flat(row.theta, flat_tol)) {
      row.skipped = true;
      rows.push_back(row);
      continue;
    }
    row.dtheta_dt = (dihedral_angle(after, g) - dihedral_angle(before, g)) / (2.0 * h);
    const auto [f1, f2] = faces_at(at, g);
    double rate = 0.0;
    for (int f : {f1, f2}) {
      const Vec3M dm = (outward_unit_normal(after, f).m - outward_unit_normal(before, f).m) / (2.0 * h);
      rate += dot(dm, inward_conormal(at, f, g));
    }
    row.normal_rate = rate;
    row.reflex = is_reflex_edge(at, g);
    row.error = std::abs(row.dtheta_dt - row.normal_rate);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace minkflex
