#include "minkflex/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>
#include <set>

namespace minkflex {

// ---------------------------------------------------------------------------
// SimplicialSurface

SimplicialSurface::SimplicialSurface(int vertex_count, std::vector<Triangle> triangles)
    : vertex_count_(vertex_count), triangles_(std::move(triangles)) {
  std::map<Edge, std::vector<int>> incidence;
  for (std::size_t f = 0; f < triangles_.size(); ++f) {
    const Triangle& t = triangles_[f];
    for (int i = 0; i < 3; ++i) {
      const int u = t[static_cast<std::size_t>(i)], v = t[static_cast<std::size_t>((i + 1) % 3)];
      if (u == v) continue;
      incidence[Edge::of(u, v)].push_back(static_cast<int>(f));
    }
  }
  edges_.reserve(incidence.size());
  edge_faces_.reserve(incidence.size());
  for (auto& [e, faces] : incidence) {
    edges_.push_back(e);
    edge_faces_.push_back(std::move(faces));
  }
}

std::optional<std::size_t> SimplicialSurface::edge_index(Edge e) const {
  const auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) return std::nullopt;
  return static_cast<std::size_t>(it - edges_.begin());
}

bool SimplicialSurface::is_closed() const {
  return std::all_of(edge_faces_.begin(), edge_faces_.end(), [](const auto& f) { return f.size() == 2; });
}

std::vector<std::vector<int>> SimplicialSurface::boundary_loops() const {
  std::multimap<int, int> next;
  for (const Triangle& t : triangles_) {
    for (int i = 0; i < 3; ++i) {
      const int u = t[static_cast<std::size_t>(i)], v = t[static_cast<std::size_t>((i + 1) % 3)];
      const auto idx = edge_index(Edge::of(u, v));
      if (idx && edge_faces_[*idx].size() == 1) next.emplace(u, v);
    }
  }
  std::vector<std::vector<int>> loops;
  while (!next.empty()) {
    // Start every loop at its smallest vertex so the output is canonical.
    auto it = next.begin();
    std::vector<int> loop{it->first};
    int cur = it->second;
    next.erase(it);
    while (cur != loop.front()) {
      loop.push_back(cur);
      const auto step = next.find(cur);
      if (step == next.end()) break;
      cur = step->second;
      next.erase(step);
    }
    loops.push_back(std::move(loop));
  }
  return loops;
}

// ---------------------------------------------------------------------------
// Validation

std::string_view to_string(SurfaceType type) {
  switch (type) {
    case SurfaceType::Sphere: return "sphere";
    case SurfaceType::Disk: return "disk";
    case SurfaceType::Other: return "other";
  }
  return "other";
}

void SurfaceReport::require_ok() const {
  if (!issues.empty()) throw Error(issues.front().code, issues.front().message);
}

namespace {

int direction_in(const Triangle& t, Edge e) {
  for (int i = 0; i < 3; ++i) {
    const int u = t[static_cast<std::size_t>(i)], v = t[static_cast<std::size_t>((i + 1) % 3)];
    if (u == e.a && v == e.b) return 1;
    if (u == e.b && v == e.a) return -1;
  }
  return 0;
}

bool link_is_arc_or_cycle(const std::vector<Edge>& link) {
  std::map<int, int> degree;
  std::map<int, std::vector<int>> adj;
  for (const Edge& e : link) {
    ++degree[e.a];
    ++degree[e.b];
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  for (const auto& [v, d] : degree) {
    if (d > 2) return false;
  }
  std::set<int> seen;
  std::vector<int> stack{degree.begin()->first};
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    if (!seen.insert(v).second) continue;
    for (int w : adj[v]) stack.push_back(w);
  }
  if (seen.size() != degree.size()) return false;
  const std::size_t n = degree.size();
  return link.size() == n || link.size() + 1 == n;
}

}  // namespace

SurfaceReport validate(const SimplicialSurface& surface) {
  SurfaceReport report;
  const auto& tris = surface.triangles();
  const int nv = surface.vertex_count();
  report.vertices = nv;
  report.faces = static_cast<int>(tris.size());
  report.edges = static_cast<int>(surface.edges().size());
  auto issue = [&](Errc code, std::string msg) { report.issues.push_back({code, std::move(msg)}); };

  for (std::size_t f = 0; f < tris.size(); ++f) {
    const Triangle& t = tris[f];
    for (int v : t) {
      if (v < 0 || v >= nv) {
        issue(Errc::NonManifold, "face " + std::to_string(f) + " references vertex " + std::to_string(v));
        return report;
      }
    }
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) {
      issue(Errc::NonManifold, "face " + std::to_string(f) + " repeats a vertex");
      return report;
    }
  }

  bool manifold_edges = true;
  for (std::size_t i = 0; i < surface.edges().size(); ++i) {
    const auto& faces = surface.faces_of_edge(i);
    const Edge e = surface.edges()[i];
    if (faces.size() > 2) {
      manifold_edges = false;
      issue(Errc::NonManifold, "edge (" + std::to_string(e.a) + "," + std::to_string(e.b) + ") has " +
                                   std::to_string(faces.size()) + " faces");
    }
  }

  std::vector<std::vector<Edge>> links(static_cast<std::size_t>(nv));
  for (const Triangle& t : tris) {
    for (int i = 0; i < 3; ++i) {
      links[static_cast<std::size_t>(t[static_cast<std::size_t>(i)])].push_back(
          Edge::of(t[static_cast<std::size_t>((i + 1) % 3)], t[static_cast<std::size_t>((i + 2) % 3)]));
    }
  }
  for (int v = 0; v < nv; ++v) {
    const auto& link = links[static_cast<std::size_t>(v)];
    if (link.empty()) {
      issue(Errc::Disconnected, "vertex " + std::to_string(v) + " belongs to no face");
    } else if (!link_is_arc_or_cycle(link)) {
      issue(Errc::NonManifold, "link of vertex " + std::to_string(v) + " is not a single cycle or arc");
    }
  }

  // Face connectivity through shared edges.
  if (!tris.empty()) {
    std::vector<int> parent(tris.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[static_cast<std::size_t>(x)] != x) {
        x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      }
      return x;
    };
    for (std::size_t i = 0; i < surface.edges().size(); ++i) {
      const auto& faces = surface.faces_of_edge(i);
      for (std::size_t k = 1; k < faces.size(); ++k) parent[static_cast<std::size_t>(find(faces[k]))] = find(faces[0]);
    }
    int components = 0;
    for (std::size_t f = 0; f < tris.size(); ++f) components += find(static_cast<int>(f)) == static_cast<int>(f);
    if (components > 1) issue(Errc::Disconnected, std::to_string(components) + " face components");
  }

  // Orientation: propagate a sign per face across every manifold edge.
  if (manifold_edges && !tris.empty()) {
    std::vector<int> sign(tris.size(), 0);
    std::vector<std::vector<std::pair<int, std::size_t>>> nbr(tris.size());
    for (std::size_t i = 0; i < surface.edges().size(); ++i) {
      const auto& faces = surface.faces_of_edge(i);
      if (faces.size() == 2) {
        nbr[static_cast<std::size_t>(faces[0])].push_back({faces[1], i});
        nbr[static_cast<std::size_t>(faces[1])].push_back({faces[0], i});
      }
    }
    bool orientable = true;
    bool flipped = false;
    for (std::size_t start = 0; start < tris.size() && orientable; ++start) {
      if (sign[start] != 0) continue;
      sign[start] = 1;
      std::queue<std::size_t> todo;
      todo.push(start);
      while (!todo.empty() && orientable) {
        const std::size_t f = todo.front();
        todo.pop();
        for (const auto& [g, ei] : nbr[f]) {
          const Edge e = surface.edges()[ei];
          const int want = -sign[f] * direction_in(tris[f], e) * direction_in(tris[static_cast<std::size_t>(g)], e);
          int& sg = sign[static_cast<std::size_t>(g)];
          if (sg == 0) {
            sg = want;
            flipped = flipped || want < 0;
            todo.push(static_cast<std::size_t>(g));
          } else if (sg != want) {
            orientable = false;
          }
        }
      }
    }
    if (!orientable) {
      issue(Errc::NonOrientable, "surface is not orientable");
    } else if (flipped) {
      issue(Errc::InconsistentOrientation, "triangle orientations disagree across an edge");
    }
  }

  report.boundary_loops = surface.boundary_loops();
  report.euler_characteristic = report.vertices - report.edges + report.faces;
  if (report.ok()) {
    if (report.boundary_loops.empty() && report.euler_characteristic == 2) {
      report.type = SurfaceType::Sphere;
    } else if (report.boundary_loops.size() == 1 && report.euler_characteristic == 1) {
      report.type = SurfaceType::Disk;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Face-pair removal

FacePairRemoval remove_adjacent_face_pair(const Polyhedron& closed, Edge shared) {
  const auto idx = closed.surface.edge_index(shared);
  if (!idx) throw Error(Errc::BadEdge, "edge is not part of the surface");
  const auto& faces = closed.surface.faces_of_edge(*idx);
  if (faces.size() != 2) throw Error(Errc::BadEdge, "edge is not shared by exactly two faces");

  FacePairRemoval out;
  out.removed_edge = shared;
  std::vector<Triangle> kept;
  const auto& tris = closed.surface.triangles();
  for (std::size_t f = 0; f < tris.size(); ++f) {
    if (static_cast<int>(f) == faces[0] || static_cast<int>(f) == faces[1]) continue;
    kept.push_back(tris[f]);
  }
  for (int k = 0; k < 2; ++k) {
    const Triangle& t = tris[static_cast<std::size_t>(faces[static_cast<std::size_t>(k)])];
    out.removed_faces[static_cast<std::size_t>(k)] = t;
    for (int v : t) {
      if (v != shared.a && v != shared.b) out.apexes[static_cast<std::size_t>(k)] = v;
    }
  }
  out.disk = {SimplicialSurface(closed.surface.vertex_count(), std::move(kept)), closed.coords};
  return out;
}

// ---------------------------------------------------------------------------
// Convexity

ConvexityReport strict_convexity_check(const Polyhedron& p, double rel_tol) {
  ConvexityReport out;
  const SurfaceReport sr = validate(p.surface);
  if (sr.type != SurfaceType::Sphere) {
    out.reasons.push_back("surface is not a valid sphere-type complex");
    return out;
  }
  Eigen::Vector3d lo = eu(p.coords.front()), hi = lo;
  Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
  for (const Vec3M& x : p.coords) {
    lo = lo.cwiseMin(eu(x));
    hi = hi.cwiseMax(eu(x));
    centroid += eu(x);
  }
  centroid /= static_cast<double>(p.coords.size());
  const double tol = rel_tol * std::max(1.0, (hi - lo).norm());

  // Orientation of the triangle list: signed volume of eu(P).
  double vol6 = 0.0;
  for (const Triangle& t : p.surface.triangles()) {
    vol6 += (eu(p.at(t[0])) - centroid).dot((eu(p.at(t[1])) - centroid).cross(eu(p.at(t[2])) - centroid));
  }
  const double orient = vol6 >= 0.0 ? 1.0 : -1.0;

  const auto& tris = p.surface.triangles();
  for (std::size_t f = 0; f < tris.size(); ++f) {
    const Triangle& t = tris[f];
    const Eigen::Vector3d a = eu(p.at(t[0]));
    const Eigen::Vector3d n = orient * (eu(p.at(t[1])) - a).cross(eu(p.at(t[2])) - a);
    if (n.norm() <= tol * tol) {
      out.reasons.push_back("face " + std::to_string(f) + " is degenerate");
      continue;
    }
    const Eigen::Vector3d unit = n.normalized();
    for (int v = 0; v < p.surface.vertex_count(); ++v) {
      if (v == t[0] || v == t[1] || v == t[2]) continue;
      const double d = unit.dot(eu(p.at(v)) - a);
      if (d > tol) {
        out.reasons.push_back("vertex " + std::to_string(v) + " lies outside the plane of face " + std::to_string(f));
      } else if (d >= -tol) {
        out.reasons.push_back("vertex " + std::to_string(v) + " is coplanar with face " + std::to_string(f));
      }
    }
  }
  out.strictly_convex = out.reasons.empty();
  return out;
}

// ---------------------------------------------------------------------------
// Boundary quadrilateral

int quad_condition_violation(const std::array<Vec3M, 4>& q, const QuadTolerances& tol) {
  auto sq = [&](int i, int j) {
    const Vec3M d = q[static_cast<std::size_t>(i)] - q[static_cast<std::size_t>(j)];
    return dot(d, d);
  };
  const double s01 = sq(0, 1), s23 = sq(2, 3), s12 = sq(1, 2), s30 = sq(3, 0);
  if (std::abs(s01 - s23) > tol.side * (1.0 + std::abs(s01)) || std::abs(s12 - s30) > tol.side * (1.0 + std::abs(s12))) {
    return 1;
  }
  if (std::abs(sq(0, 2)) <= tol.null || std::abs(sq(1, 3)) <= tol.null) return 2;
  const Vec3M q5 = 0.5 * (q[0] + q[2]);
  const Vec3M q6 = 0.5 * (q[1] + q[3]);
  double scale = 0.0;
  for (const Vec3M& x : q) scale = std::max(scale, euclidean_norm(x));
  const Vec3M dir = q6 - q5;
  if (euclidean_norm(dir) <= tol.midpoint * (1.0 + scale)) return 3;
  if (std::abs(dot(dir, dir)) <= tol.null * std::max(1.0, euclidean_norm(dir) * euclidean_norm(dir))) return 4;
  return 0;
}

BoundaryQuad boundary_quad(const Polyhedron& disk, const QuadTolerances& tol) {
  const auto loops = disk.surface.boundary_loops();
  if (loops.size() != 1 || loops.front().size() != 4) {
    throw Error(Errc::BadEdge, "boundary is not a single quadrilateral");
  }
  BoundaryQuad quad;
  for (std::size_t i = 0; i < 4; ++i) {
    quad.vertex[i] = loops.front()[i];
    quad.point[i] = disk.at(quad.vertex[i]);
  }
  if (const int bad = quad_condition_violation(quad.point, tol); bad != 0) {
    throw Error(Errc::Lemma2Violation, "boundary quadrilateral violates hypothesis " + std::to_string(bad), bad);
  }
  quad.q5 = 0.5 * (quad.point[0] + quad.point[2]);
  quad.q6 = 0.5 * (quad.point[1] + quad.point[3]);
  return quad;
}

std::array<Vec3M, 4> sample_symmetric_quad(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  auto point = [&] { return Vec3M{coord(rng), coord(rng), coord(rng)}; };
  const QuadTolerances margin{1e-9, 1e-2, 1e-2};

  for (;;) {
    const Vec3M q1 = point(), q2 = point(), q3 = point();
    const Vec3M n = q1 - q3;
    const double nn = dot(n, n);
    if (std::abs(nn) < 1e-2) continue;
    const Vec3M d12 = q1 - q2, d23 = q2 - q3;
    const double a = dot(d12, d12), b = dot(d23, d23);
    // |q4-q3|^2 - |q4-q1|^2 = a - b is the plane (q4, n) = c.
    const double c = 0.5 * (a - b - dot(q3, q3) + dot(q1, q1));
    auto in_plane = [&](Vec3M r) { return r - (dot(r, n) / nn) * n; };
    const Vec3M base = (c / nn) * n + 2.0 * in_plane(point());
    const Vec3M dir = in_plane(point());
    // |base + s dir - q1|^2 = b.
    const Vec3M off = base - q1;
    const double qa = dot(dir, dir), qb = 2.0 * dot(off, dir), qc = dot(off, off) - b;
    const double disc = qb * qb - 4.0 * qa * qc;
    if (std::abs(qa) < 1e-6 || disc < 0.0) continue;
    const double sign = (rng() & 1u) ? 1.0 : -1.0;
    const double s = (-qb + sign * std::sqrt(disc)) / (2.0 * qa);
    const Vec3M q4 = base + s * dir;
    const std::array<Vec3M, 4> q{q1, q2, q3, q4};
    if (euclidean_norm(q4) > 20.0) continue;
    const double planar = eu(q2 - q1).dot(eu(q3 - q1).cross(eu(q4 - q1)));
    if (std::abs(planar) < 1e-2) continue;
    if (quad_condition_violation(q, margin) != 0) continue;
    return q;
  }
}

// ---------------------------------------------------------------------------
// Builders

Polyhedron make_octahedron(double a1, double a2, double a3) {
  std::vector<Vec3M> coords{{a1, 0, 0}, {0, a2, 0}, {-a1, 0, 0}, {0, -a2, 0}, {0, 0, a3}, {0, 0, -a3}};
  std::vector<Triangle> tris{{0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4},
                             {1, 0, 5}, {2, 1, 5}, {3, 2, 5}, {0, 3, 5}};
  return {SimplicialSurface(6, std::move(tris)), std::move(coords)};
}

Polyhedron make_geodesic_ellipsoid(int level, double a1, double a2, double a3) {
  Polyhedron oct = make_octahedron();
  std::vector<Eigen::Vector3d> pts;
  for (const Vec3M& x : oct.coords) pts.push_back(eu(x));
  std::vector<Triangle> tris = oct.surface.triangles();
  for (int l = 0; l < level; ++l) {
    std::map<Edge, int> mid;
    auto midpoint = [&](int u, int v) {
      const Edge e = Edge::of(u, v);
      if (const auto it = mid.find(e); it != mid.end()) return it->second;
      pts.push_back((0.5 * (pts[static_cast<std::size_t>(u)] + pts[static_cast<std::size_t>(v)])).normalized());
      const int id = static_cast<int>(pts.size()) - 1;
      mid.emplace(e, id);
      return id;
    };
    std::vector<Triangle> next;
    next.reserve(tris.size() * 4);
    for (const Triangle& t : tris) {
      const int ab = midpoint(t[0], t[1]), bc = midpoint(t[1], t[2]), ca = midpoint(t[2], t[0]);
      next.push_back({t[0], ab, ca});
      next.push_back({t[1], bc, ab});
      next.push_back({t[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    tris = std::move(next);
  }
  std::vector<Vec3M> coords;
  coords.reserve(pts.size());
  for (const auto& x : pts) coords.push_back({a1 * x.x(), a2 * x.y(), a3 * x.z()});
  return {SimplicialSurface(static_cast<int>(coords.size()), std::move(tris)), std::move(coords)};
}

Polyhedron reversed(const Polyhedron& p) {
  std::vector<Triangle> tris = p.surface.triangles();
  for (Triangle& t : tris) std::swap(t[1], t[2]);
  return {SimplicialSurface(p.surface.vertex_count(), std::move(tris)), p.coords};
}

std::vector<double> squared_edge_lengths(const Polyhedron& p) {
  std::vector<double> out;
  out.reserve(p.surface.edges().size());
  for (const Edge& e : p.surface.edges()) {
    const Vec3M d = p.edge_vector(e);
    out.push_back(dot(d, d));
  }
  return out;
}

}  // namespace minkflex
