#include "minkflex/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "minkflex/errors.hpp"

namespace minkflex {

namespace {

[[noreturn]] void bad_field(const std::string& name, const std::string& why) {
  throw Error(Errc::Parse, "field '" + name + "': " + why);
}

const Json& require(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) bad_field(where, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) bad_field(where.empty() ? key : where + "." + key, "missing");
  return *it;
}

double as_number(const Json& j, const std::string& name) {
  if (!j.is_number()) bad_field(name, "expected a number");
  return j.get<double>();
}

int as_index(const Json& j, const std::string& name) {
  if (!j.is_number_integer()) bad_field(name, "expected an integer");
  return j.get<int>();
}

template <std::size_t N>
std::array<int, N> as_indices(const Json& j, const std::string& name) {
  if (!j.is_array() || j.size() != N) bad_field(name, "expected an array of " + std::to_string(N) + " integers");
  std::array<int, N> out{};
  for (std::size_t i = 0; i < N; ++i) out[i] = as_index(j[i], name + "[" + std::to_string(i) + "]");
  return out;
}

Json vertices_json(const std::vector<Vec3M>& coords) {
  Json a = Json::array();
  for (const Vec3M& x : coords) a.push_back({x.x1, x.x2, x.x3});
  return a;
}

std::vector<Vec3M> vertices_from(const Json& j, const std::string& name) {
  if (!j.is_array()) bad_field(name, "expected an array of points");
  std::vector<Vec3M> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string item = name + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != 3) bad_field(item, "expected 3 coordinates");
    out.push_back({as_number(j[i][0], item + "[0]"), as_number(j[i][1], item + "[1]"), as_number(j[i][2], item + "[2]")});
  }
  return out;
}

Json triangles_json(const SimplicialSurface& s) {
  Json a = Json::array();
  for (const Triangle& f : s.triangles()) a.push_back({f[0], f[1], f[2]});
  return a;
}

std::vector<Triangle> triangles_from(const Json& j, const std::string& name, int vertex_count) {
  if (!j.is_array()) bad_field(name, "expected an array of triangles");
  std::vector<Triangle> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string item = name + "[" + std::to_string(i) + "]";
    const Triangle f = as_indices<3>(j[i], item);
    for (int v : f) {
      if (v < 0 || v >= vertex_count) bad_field(item, "vertex index " + std::to_string(v) + " out of range");
    }
    out.push_back(f);
  }
  return out;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json mesh_to_json(const MeshFile& mesh) {
  Json j;
  j["vertices"] = vertices_json(mesh.polyhedron.coords);
  j["triangles"] = triangles_json(mesh.polyhedron.surface);
  if (mesh.removed_edge || mesh.pinned_face) {
    Json f = Json::object();
    if (mesh.removed_edge) f["removed_edge"] = {mesh.removed_edge->a, mesh.removed_edge->b};
    if (mesh.pinned_face) f["pinned_face"] = {(*mesh.pinned_face)[0], (*mesh.pinned_face)[1], (*mesh.pinned_face)[2]};
    if (mesh.rng) f["rng"] = *mesh.rng;
    if (mesh.attempt) f["attempt"] = *mesh.attempt;
    j["flex"] = f;
  }
  return j;
}

Json seed_to_json(const FlexSeed& seed) {
  return mesh_to_json({seed.polyhedron, seed.removed_edge, seed.pinned_face, seed.rng, seed.attempt});
}

MeshFile mesh_from_json(const Json& j) {
  MeshFile m;
  const std::vector<Vec3M> coords = vertices_from(require(j, "vertices", ""), "vertices");
  const int nv = static_cast<int>(coords.size());
  auto tris = triangles_from(require(j, "triangles", ""), "triangles", nv);
  m.polyhedron = {SimplicialSurface(nv, std::move(tris)), coords};
  if (const auto it = j.find("flex"); it != j.end()) {
    const Json& f = *it;
    if (!f.is_object()) bad_field("flex", "expected an object");
    if (f.contains("removed_edge")) {
      const auto e = as_indices<2>(f["removed_edge"], "flex.removed_edge");
      m.removed_edge = Edge::of(e[0], e[1]);
    }
    if (f.contains("pinned_face")) m.pinned_face = as_indices<3>(f["pinned_face"], "flex.pinned_face");
    if (f.contains("rng")) {
      if (!f["rng"].is_number_unsigned()) bad_field("flex.rng", "expected a nonnegative integer");
      m.rng = f["rng"].get<std::uint64_t>();
    }
    if (f.contains("attempt")) m.attempt = as_index(f["attempt"], "flex.attempt");
  }
  return m;
}

Json config_to_json(const ExperimentConfig& c) {
  Json j;
  j["seed_rng"] = c.seed_rng;
  j["jitter"] = c.jitter;
  j["steps"] = c.steps;
  if (c.t_max) {
    j["t_max"] = *c.t_max;
  } else {
    j["t_max"] = "auto";
  }
  j["newton_tol"] = c.newton_tol;
  j["output"] = c.output;
  return j;
}

ExperimentConfig config_from_json(const Json& j, ExperimentConfig c) {
  if (!j.is_object()) bad_field("config", "expected an object");
  if (j.contains("seed_rng")) {
    if (!j["seed_rng"].is_number_unsigned()) bad_field("seed_rng", "expected a nonnegative integer");
    c.seed_rng = j["seed_rng"].get<std::uint64_t>();
  }
  if (j.contains("jitter")) c.jitter = as_number(j["jitter"], "jitter");
  if (j.contains("steps")) {
    c.steps = as_index(j["steps"], "steps");
    if (c.steps < 1) bad_field("steps", "must be positive");
  }
  if (j.contains("t_max")) {
    const Json& t = j["t_max"];
    if (t.is_string() && t.get<std::string>() == "auto") {
      c.t_max.reset();
    } else {
      c.t_max = as_number(t, "t_max");
      if (*c.t_max < 0.0) bad_field("t_max", "must be nonnegative");
    }
  }
  if (j.contains("newton_tol")) {
    c.newton_tol = as_number(j["newton_tol"], "newton_tol");
    if (!(c.newton_tol > 0.0)) bad_field("newton_tol", "must be positive");
  }
  if (j.contains("output")) {
    if (!j["output"].is_string()) bad_field("output", "expected a string");
    c.output = j["output"].get<std::string>();
  }
  return c;
}

Json path_to_json(const ExperimentResult& run, const ExperimentConfig& config) {
  Json meta;
  meta["config"] = config_to_json(config);
  meta["t_max"] = run.t_max;
  meta["t_max_halvings"] = run.t_max_halvings;
  meta["steps"] = run.disk_path.steps;
  meta["step_size"] = run.disk_path.steps > 0 ? run.t_max / run.disk_path.steps : 0.0;
  meta["newton_tol"] = run.disk_path.newton_tol;
  meta["max_newton_residual"] = run.disk_path.max_residual;
  const Triangle& pf = run.disk_path.pinned_face;
  meta["pinned_face"] = {pf[0], pf[1], pf[2]};
  meta["perturbed_edge"] = {run.disk_path.perturbed_edge.a, run.disk_path.perturbed_edge.b};
  meta["pair"] = {run.apex_pair[0], run.apex_pair[1]};
  meta["seed_attempt"] = run.seed.attempt;

  Json j;
  j["kind"] = "path";
  j["metadata"] = meta;
  j["triangles"] = triangles_json(run.doubled.surface);
  Json samples = Json::array();
  for (const PathSample& s : run.doubled.samples) {
    Json o;
    o["t"] = s.t;
    o["vertices"] = vertices_json(s.coords);
    samples.push_back(o);
  }
  j["samples"] = samples;
  return j;
}

bool is_path_document(const Json& j) { return j.is_object() && j.contains("samples"); }

PathFile path_from_json(const Json& j) {
  PathFile out;
  const Json& samples = require(j, "samples", "");
  if (!samples.is_array() || samples.empty()) bad_field("samples", "expected a nonempty array");
  std::size_t nv = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const std::string item = "samples[" + std::to_string(i) + "]";
    PathSample s;
    s.t = as_number(require(samples[i], "t", item), item + ".t");
    s.coords = vertices_from(require(samples[i], "vertices", item), item + ".vertices");
    if (i == 0) nv = s.coords.size();
    if (s.coords.size() != nv) bad_field(item + ".vertices", "vertex count differs from samples[0]");
    out.path.samples.push_back(std::move(s));
  }
  out.path.surface = SimplicialSurface(static_cast<int>(nv), triangles_from(require(j, "triangles", ""), "triangles",
                                                                            static_cast<int>(nv)));
  if (const auto it = j.find("metadata"); it != j.end()) {
    out.metadata = *it;
    if (it->is_object() && it->contains("pair")) {
      out.pair = as_indices<2>((*it)["pair"], "metadata.pair");
      for (int v : out.pair) {
        if (v < 0 || v >= static_cast<int>(nv)) bad_field("metadata.pair", "vertex index out of range");
      }
    }
  }
  return out;
}

std::string report_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream os;
  os << kReportHeader << '\n';
  for (const ReportRow& r : rows) {
    os << format_double(r.t) << ',' << format_double(r.max_edge_drift) << ',' << format_double(r.vol) << ','
       << format_double(r.mean_curvature) << ',' << format_double(r.pair_distance) << '\n';
  }
  return os.str();
}

Json read_json_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error(Errc::Io, "cannot open " + file.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::Parse, file.string() + ": malformed JSON (" + e.what() + ")");
  }
}

void write_text_file(const std::filesystem::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw Error(Errc::Io, "cannot write " + file.string());
  out << text;
  out.flush();
  if (!out) throw Error(Errc::Io, "write failed for " + file.string());
}

}  // namespace minkflex
