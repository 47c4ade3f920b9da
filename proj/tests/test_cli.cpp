#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <doctest.h>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run mflex(const std::string& args) {
  const std::string cmd = std::string(MFLEX_BINARY) + " " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe) != nullptr) r.out += buf.data();
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path workdir() {
  const fs::path d = fs::temp_directory_path() / "minkflex_cli_test";
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("seed command is deterministic") {
  const fs::path d = workdir();
  const Run a = mflex("seed --rng 42 -o " + (d / "a.json").string());
  CHECK(a.code == 0);
  CHECK(a.out.find("conditions A-C: pass") != std::string::npos);
  const Run b = mflex("seed --rng 42 -o " + (d / "b.json").string());
  CHECK(b.code == 0);
  CHECK(slurp(d / "a.json") == slurp(d / "b.json"));
  CHECK(mflex("seed --rng 42 -o /nonexistent/dir/seed.json").code == 2);
}

TEST_CASE("flex command writes the path and the report") {
  const fs::path d = workdir();
  REQUIRE(mflex("seed -o " + (d / "seed.json").string()).code == 0);
  const Run r = mflex("flex -i " + (d / "seed.json").string() + " --steps 32 -o " + (d / "path.json").string() +
                      " --report " + (d / "report.csv").string());
  // Exit status follows the verdicts; the mean-curvature verdict is reported as is.
  CHECK((r.code == 0 || r.code == 1));
  CHECK(r.out.find("edge_length_drift            PASS") != std::string::npos);
  CHECK(r.out.find("volume_invariance            PASS") != std::string::npos);
  const std::string csv = slurp(d / "report.csv");
  CHECK(csv.rfind("t,max_edge_drift,vol,mean_curvature,pair_distance\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 34);
  CHECK(fs::file_size(d / "path.json") > 0);

  const Run v = mflex("verify -i " + (d / "path.json").string());
  CHECK(v.code == r.code);
  CHECK(v.out.find("angle-rate check") != std::string::npos);
  CHECK(v.out.find("volume_invariance            PASS") != std::string::npos);
}

TEST_CASE("flex command usage errors") {
  const fs::path d = workdir();
  REQUIRE(mflex("seed -o " + (d / "seed.json").string()).code == 0);
  CHECK(mflex("flex -i " + (d / "seed.json").string() + " --steps 0").code == 2);
  CHECK(mflex("flex --steps 4").code == 2);
  CHECK(mflex("").code == 2);
  {
    std::ofstream bad(d / "corrupt.json");
    bad << R"({"vertices": [[1, 0, 0], [0, "one", 0]], "triangles": []})";
  }
  const Run c = mflex("flex -i " + (d / "corrupt.json").string());
  CHECK(c.code == 2);
  CHECK(c.out.find("vertices[1][1]") != std::string::npos);
}

TEST_CASE("verify on meshes") {
  const fs::path d = workdir();
  {
    std::ofstream oct(d / "octahedron.json");
    oct << R"({"vertices": [[1,0,0],[0,1,0],[-1,0,0],[0,-1,0],[0,0,1],[0,0,-1]],
              "triangles": [[0,1,4],[1,2,4],[2,3,4],[3,0,4],[1,0,5],[2,1,5],[3,2,5],[0,3,5]]})";
  }
  const Run r = mflex("verify -i " + (d / "octahedron.json").string());
  CHECK(r.code == 0);
  CHECK(r.out.find("generalized volume 1.333333333333333") != std::string::npos);
  {
    std::ofstream bow(d / "bowtie.json");
    bow << R"({"vertices": [[0,0,0],[1,0,0],[0,1,0],[-1,0,0],[0,-1,0]], "triangles": [[0,1,2],[0,3,4]]})";
  }
  const Run b = mflex("verify -i " + (d / "bowtie.json").string());
  CHECK(b.code == 1);
  CHECK(b.out.find("NonManifold") != std::string::npos);
}
