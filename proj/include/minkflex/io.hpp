#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "minkflex/flex.hpp"
#include "minkflex/mesh.hpp"

namespace minkflex {

using Json = nlohmann::ordered_json;

/// Mesh file: {"vertices": [[x1,x2,x3],...], "triangles": [[i,j,k],...]} plus an
/// optional "flex" object {"removed_edge": [a,b], "pinned_face": [i,j,k],
/// "rng": n, "attempt": k} written by the seed command.
struct MeshFile {
  Polyhedron polyhedron;
  std::optional<Edge> removed_edge;
  std::optional<Triangle> pinned_face;
  std::optional<std::uint64_t> rng;
  std::optional<int> attempt;
};

/// Path file: {"kind": "path", "metadata": {...}, "triangles": [...],
/// "samples": [{"t": t, "vertices": [...]}, ...]}.
struct PathFile {
  SampledPath path;
  std::array<int, 2> pair{0, 1};
  Json metadata;
};

Json mesh_to_json(const MeshFile& mesh);
Json seed_to_json(const FlexSeed& seed);
/// Errc::Parse naming the offending field.
MeshFile mesh_from_json(const Json& j);

Json path_to_json(const ExperimentResult& run, const ExperimentConfig& config);
PathFile path_from_json(const Json& j);

bool is_path_document(const Json& j);

/// Reads {"seed_rng", "jitter", "steps", "t_max" (number or "auto"), "newton_tol", "output"}; missing keys keep defaults.
ExperimentConfig config_from_json(const Json& j, ExperimentConfig base = {});
Json config_to_json(const ExperimentConfig& config);

inline constexpr const char* kReportHeader = "t,max_edge_drift,vol,mean_curvature,pair_distance";
/// CSV with kReportHeader, 17 significant digits.
std::string report_csv(const std::vector<ReportRow>& rows);

/// Errc::Io on failure, Errc::Parse on malformed JSON.
Json read_json_file(const std::filesystem::path& file);
void write_text_file(const std::filesystem::path& file, const std::string& text);

/// printf %.17g.
std::string format_double(double x);

}  // namespace minkflex
