// mflex: build, flex and verify flexible polyhedra of the Minkowski 3-space.

#include <array>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "minkflex/curvature.hpp"
#include "minkflex/errors.hpp"
#include "minkflex/flex.hpp"
#include "minkflex/io.hpp"
#include "minkflex/mesh.hpp"
#include "minkflex/volume.hpp"

using namespace minkflex;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case Errc::Parse:
    case Errc::Io:
    case Errc::Usage:
      return kUsage;
    default:
      return kFail;
  }
}

void print_verdicts(const std::vector<Verdict>& verdicts) {
  for (const Verdict& v : verdicts) {
    std::printf("%-28s %s  value=%.6e  threshold=%.6e\n", v.name.c_str(), v.pass ? "PASS" : "FAIL", v.value,
                v.threshold);
  }
}

FlexSeed seed_from_file(const MeshFile& m) {
  FlexSeed seed;
  seed.polyhedron = m.polyhedron;
  validate(seed.polyhedron.surface).require_ok();
  seed.removed_edge = m.removed_edge.value_or(Edge{0, 1});
  seed.pinned_face = m.pinned_face ? *m.pinned_face : default_pinned_face(seed.polyhedron, seed.removed_edge);
  seed.rng = m.rng.value_or(0);
  seed.attempt = m.attempt.value_or(-1);
  seed.checks = check_seed(seed.polyhedron, seed.removed_edge, seed.pinned_face);
  return seed;
}

int cmd_seed(std::uint64_t rng, double jitter, const std::string& output) {
  SeedOptions opts;
  opts.rng = rng;
  opts.jitter = jitter;
  const FlexSeed seed = make_seed(opts);
  const std::string text = seed_to_json(seed).dump(2) + "\n";
  if (output.empty()) {
    std::cout << text;
  } else {
    write_text_file(output, text);
  }
  std::ostream& log = output.empty() ? std::cerr : std::cout;
  log << "seed rng " << seed.rng << ", attempt " << seed.attempt << '\n' << seed.checks.summary();
  return seed.checks.pass() ? kPass : kFail;
}

int cmd_flex(const std::string& input, ExperimentConfig config, const std::string& output, const std::string& report) {
  const FlexSeed seed = seed_from_file(mesh_from_json(read_json_file(input)));
  std::cout << seed.checks.summary();
  const ExperimentResult run = run_flex_experiment(seed, config);
  const std::string out = output.empty() ? config.output : output;
  if (!out.empty()) write_text_file(out, path_to_json(run, config).dump(1) + "\n");
  if (!report.empty()) write_text_file(report, report_csv(run.evaluation.rows));
  std::printf("t_max %.17g (%d halvings), %d steps, max Newton residual %.3e\n", run.t_max, run.t_max_halvings,
              run.disk_path.steps, run.disk_path.max_residual);
  std::printf("first-order rigidity: det J = %.12e, det J_euclidean = %.12e\n", run.rigidity.det,
              run.rigidity.det_euclidean);
  if (!run.evaluation.curvature.failures.empty()) {
    for (const auto& f : run.evaluation.curvature.failures) std::printf("sample %zu: %s\n", f.sample, f.message.c_str());
  }
  print_verdicts(run.verdicts);
  return run.pass() && seed.checks.pass() ? kPass : kFail;
}

int verify_mesh(const MeshFile& m) {
  const SurfaceReport rep = validate(m.polyhedron.surface);
  std::printf("type %s, V=%d E=%d F=%d, Euler characteristic %d\n", std::string(to_string(rep.type)).c_str(),
              rep.vertices, rep.edges, rep.faces, rep.euler_characteristic);
  for (const SurfaceIssue& issue : rep.issues) {
    std::printf("  %s: %s\n", std::string(to_string(issue.code)).c_str(), issue.message.c_str());
  }
  if (!rep.ok()) return kFail;
  if (!m.polyhedron.surface.is_closed()) {
    std::printf("surface has boundary; volume and mean curvature need a closed surface\n");
    return kPass;
  }
  std::printf("generalized volume %.17g\n", generalized_volume(m.polyhedron));
  try {
    const MeanCurvatureReport mc = total_mean_curvature(m.polyhedron);
    std::printf("total mean curvature %.17g (flat edges: %zu)\n", mc.total, mc.flat_edge_count());
  } catch (const Error& e) {
    std::printf("total mean curvature undefined: %s\n", e.what());
  }
  return kPass;
}

int verify_path(const PathFile& pf) {
  validate(pf.path.surface).require_ok();
  const PathEvaluation ev = evaluate_path(pf.path, pf.pair);
  std::printf("%s\n", kReportHeader);
  for (const ReportRow& r : ev.rows) {
    std::printf("%s,%s,%s,%s,%s\n", format_double(r.t).c_str(), format_double(r.max_edge_drift).c_str(),
                format_double(r.vol).c_str(), format_double(r.mean_curvature).c_str(),
                format_double(r.pair_distance).c_str());
  }
  std::printf("\nangle-rate check (centered differences over neighbouring samples)\n");
  std::printf("%8s %14s %8s %12s %8s %12s\n", "sample", "h", "convex", "max_error", "reflex", "max_error");
  for (std::size_t s = 1; s + 1 < pf.path.size(); ++s) {
    const double h = 0.5 * (pf.path.samples[s + 1].t - pf.path.samples[s - 1].t);
    if (!(h > 0.0)) continue;
    try {
      const auto rows = angle_rate_check(pf.path.at(s - 1), pf.path.at(s), pf.path.at(s + 1), h);
      std::array<std::size_t, 2> used{};
      std::array<double, 2> worst{};
      for (const AngleRateRow& r : rows) {
        if (r.skipped) continue;
        const std::size_t k = r.reflex ? 1 : 0;
        ++used[k];
        worst[k] = std::max(worst[k], r.error);
      }
      std::printf("%8zu %14.6e %8zu %12.3e %8zu %12.3e\n", s, h, used[0], worst[0], used[1], worst[1]);
    } catch (const Error& e) {
      std::printf("%8zu %14.6e  %s\n", s, h, e.what());
    }
  }
  std::printf("\n");
  print_verdicts(ev.verdicts);
  return ev.pass() ? kPass : kFail;
}

int cmd_verify(const std::string& input) {
  const Json j = read_json_file(input);
  if (is_path_document(j)) return verify_path(path_from_json(j));
  return verify_mesh(mesh_from_json(j));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flexible polyhedra in the Minkowski 3-space: seed, flex, verify"};
  app.require_subcommand(1);

  auto* seed = app.add_subcommand("seed", "Search for a seed polyhedron and write it as mesh JSON");
  std::uint64_t rng = kDefaultSeedRng;
  double jitter = 0.05;
  std::string seed_out;
  seed->add_option("--rng", rng, "RNG seed of the jitter search")->capture_default_str();
  seed->add_option("--jitter", jitter, "Maximal coordinate jitter")->capture_default_str()->check(CLI::NonNegativeNumber);
  seed->add_option("-o,--output", seed_out, "Output mesh file (stdout when omitted)");

  auto* flex = app.add_subcommand(
      "flex",
      "Flex the seed, double it and check the invariants.\n"
      "Report CSV columns: t,max_edge_drift,vol,mean_curvature,pair_distance\n"
      "  t               flex parameter\n"
      "  max_edge_drift  largest |squared edge length - initial| of the doubled polyhedron\n"
      "  vol             generalized volume\n"
      "  mean_curvature  total mean curvature (nan when undefined)\n"
      "  pair_distance   signed Minkowski distance eps*||v1-v2|| of the removed-face apexes\n"
      "Floats are printed with 17 significant digits.");
  std::string flex_in, flex_out, report, config_file;
  int steps = 32;
  std::optional<double> t_max;
  std::optional<double> newton_tol;
  flex->add_option("-i,--input", flex_in, "Seed mesh JSON")->required();
  auto* steps_opt = flex->add_option("--steps", steps, "Number of continuation steps")->capture_default_str();
  flex->add_option("-o,--output", flex_out, "Output path JSON");
  flex->add_option("--report", report, "Output report CSV");
  flex->add_option("--t-max", t_max, "Final flex parameter (automatic when omitted)");
  flex->add_option("--newton-tol", newton_tol, "Newton tolerance on the max-norm residual");
  flex->add_option("--config", config_file, "Experiment config JSON");

  auto* verify = app.add_subcommand("verify", "Validate a mesh or run the invariant suite on a path");
  std::string verify_in;
  verify->add_option("-i,--input", verify_in, "Mesh or path JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*seed) return cmd_seed(rng, jitter, seed_out);
    if (*flex) {
      ExperimentConfig config;
      if (!config_file.empty()) config = config_from_json(read_json_file(config_file));
      if (steps_opt->count() > 0 || config_file.empty()) config.steps = steps;
      if (config.steps < 1) {
        std::cerr << "--steps must be a positive integer\n";
        return kUsage;
      }
      if (t_max) {
        if (*t_max < 0.0) {
          std::cerr << "--t-max must be nonnegative\n";
          return kUsage;
        }
        config.t_max = t_max;
      }
      if (newton_tol) {
        if (!(*newton_tol > 0.0)) {
          std::cerr << "--newton-tol must be positive\n";
          return kUsage;
        }
        config.newton_tol = *newton_tol;
      }
      return cmd_flex(flex_in, config, flex_out, report);
    }
    if (*verify) return cmd_verify(verify_in);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFail;
  }
  return kUsage;
}
