#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "tetra/json_io.hpp"
#include "tetra/qlinalg.hpp"

using namespace tetra;
namespace fs = std::filesystem;

namespace {

const fs::path kWorkDir = fs::temp_directory_path() / "tetra_cli_test";

int run(const std::string& args) {
  const std::string cmd = std::string(TETRA_CLI_PATH) + " " + args;
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

void writeText(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

std::string readText(const fs::path& path) {
  std::ifstream in(path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct WorkDirSetup {
  WorkDirSetup() { fs::create_directories(kWorkDir); }
} setup;

}  // namespace

TEST_CASE("matrix json round trip") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 20; ++t) {
    const QuatMatrixd m = randomQuatMatrix(3, 2, rng);
    const QuatMatrixd back = quatMatrixFromJson(Json::parse(toJson(m).dump()));
    REQUIRE(back.rows() == 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 2; ++j) CHECK(back(i, j) == m(i, j));
  }

  CHECK_THROWS_AS(quatMatrixFromJson(Json::parse("{\"rows\": 1}")), std::runtime_error);
  CHECK_THROWS_AS(quatMatrixFromJson(Json::parse(
                      "{\"rows\": 1, \"cols\": 1, \"entries\": [[[1, 0, 0]]]}")),
                  std::runtime_error);
  CHECK_THROWS_AS(quaternionFromJson(Json::parse("[1, 2, 3, \"x\"]")), std::runtime_error);
}

TEST_CASE("alt form debug dump") {
  AltForm form(4, 2);
  const int s01[2] = {0, 1};
  form.setCoefficient(s01, 2.5);
  const Json dump = toJson(form);
  CHECK(dump["dim"] == 4);
  CHECK(dump["degree"] == 2);
  REQUIRE(dump["coeffs"].size() == 1);
  CHECK(dump["coeffs"][0][0] == Json::array({1, 2}));  // 1-based in reports
  CHECK(dump["coeffs"][0][1] == 2.5);
}

TEST_CASE("det command") {
  const fs::path id_file = kWorkDir / "identity.json";
  writeText(id_file, toJson(QuatMatrixd::identity(3)).dump());
  CHECK(run("det " + id_file.string() + " > " + (kWorkDir / "det_out.txt").string()) == 0);
  const std::string out = readText(kWorkDir / "det_out.txt");
  CHECK(out.find("dieudonne = 1") != std::string::npos);
  CHECK(out.find("study     = 1") != std::string::npos);

  QuatMatrixd two_i(1, 1);
  two_i(0, 0) = {0, 2, 0, 0};
  const fs::path q_file = kWorkDir / "two_i.json";
  writeText(q_file, toJson(two_i).dump());
  CHECK(run("det " + q_file.string() + " > " + (kWorkDir / "det_q.txt").string()) == 0);
  CHECK(readText(kWorkDir / "det_q.txt").find("dieudonne = 2") != std::string::npos);

  const fs::path bad = kWorkDir / "bad.json";
  writeText(bad, "{not json");
  CHECK(run("det " + bad.string() + " 2> /dev/null") == 2);
  CHECK(run("det " + (kWorkDir / "missing.json").string() + " 2> /dev/null") == 3);
}

TEST_CASE("verify command") {
  CHECK(run("verify exterior > /dev/null") == 0);
  CHECK(run("verify nonsense 2> /dev/null") == 2);

  // standalone suite runs are deterministic per seed
  const fs::path a = kWorkDir / "quat_a.json", b = kWorkDir / "quat_b.json";
  CHECK(run("--seed 77 --out " + a.string() + " verify quat") == 0);
  CHECK(run("--seed 77 --out " + b.string() + " verify quat") == 0);
  const std::string report = readText(a);
  CHECK(report == readText(b));
  CHECK(report.find("\"threshold\"") != std::string::npos);  // self-describing

  // an impossible override makes the run fail with the check named
  CHECK(run("--tol.quat_mul_norm_multiplicative=0 verify quat > /dev/null 2> " +
            (kWorkDir / "verify_err.txt").string()) == 1);
  CHECK(readText(kWorkDir / "verify_err.txt").find("quat_mul_norm_multiplicative") !=
        std::string::npos);
}

TEST_CASE("mumap command") {
  QuatMatrixd ones(2, 1);
  ones(0, 0) = Quaterniond::one();
  ones(1, 0) = Quaterniond::one();
  const fs::path file = kWorkDir / "ones.json";
  writeText(file, toJson(ones).dump());
  CHECK(run("mumap " + file.string() + " 1 > " + (kWorkDir / "mumap_out.txt").string()) == 0);
  const std::string out = readText(kWorkDir / "mumap_out.txt");
  CHECK(out.find("x = 0.5 0.5") != std::string::npos);
  CHECK(out.find("in_hypersimplex = true") != std::string::npos);

  CHECK(run("mumap " + file.string() + " 2 2> /dev/null") == 2);  // p mismatch

  QuatMatrixd dependent(2, 2);
  dependent(0, 0) = dependent(0, 1) = Quaterniond::one();
  dependent(1, 0) = dependent(1, 1) = Quaterniond::i();
  const fs::path dep = kWorkDir / "dependent.json";
  writeText(dep, toJson(dependent).dump());
  CHECK(run("mumap " + dep.string() + " 2 2> /dev/null") == 1);
}

TEST_CASE("orbit_scan command") {
  std::mt19937_64 rng(9);
  const fs::path file = kWorkDir / "line.json";
  writeText(file, toJson(randomQuatMatrix(3, 1, rng)).dump());

  const fs::path csv_a = kWorkDir / "scan_a.csv", csv_b = kWorkDir / "scan_b.csv";
  CHECK(run("--seed 5 --out " + csv_a.string() + " orbit_scan " + file.string() +
            " 1 --samples 50 > /dev/null") == 0);
  CHECK(run("--seed 5 --out " + csv_b.string() + " orbit_scan " + file.string() +
            " 1 --samples 50 > /dev/null") == 0);
  const std::string csv = readText(csv_a);
  CHECK(csv == readText(csv_b));
  CHECK(csv.rfind("sample_id,kind,x_1,x_2,x_3,in_hypersimplex,in_matroid_hull\n", 0) == 0);

  const fs::path empty = kWorkDir / "scan_empty.csv";
  CHECK(run("--out " + empty.string() + " orbit_scan " + file.string() +
            " 1 --samples 0 > /dev/null") == 0);
  CHECK(readText(empty) == "sample_id,kind,x_1,x_2,x_3,in_hypersimplex,in_matroid_hull\n");

  // unwritable output path
  CHECK(run("--out /nonexistent_dir/x.csv orbit_scan " + file.string() +
            " 1 --samples 1 2> /dev/null") == 3);
}

TEST_CASE("flow command") {
  const fs::path spec = kWorkDir / "flow.json";
  writeText(spec, R"({"m": 1, "f": ["const", "x2", "x3"], "g0": [0.5, -0.3, 0.8, 0.1]})");
  const fs::path csv = kWorkDir / "flow.csv";
  CHECK(run("--out " + csv.string() + " flow " + spec.string() +
            " --steps 20 > " + (kWorkDir / "flow_out.txt").string()) == 0);
  CHECK(readText(kWorkDir / "flow_out.txt").find("max_drift = 0") != std::string::npos);
  const std::string rows = readText(csv);
  CHECK(rows.rfind("t,x_1,x_2,x_3,x_4,f1,f2,f3\n", 0) == 0);

  writeText(spec, R"({"m": 1, "f": ["nope", "x2", "x3"], "g0": [0, 0, 0, 0]})");
  CHECK(run("flow " + spec.string() + " 2> /dev/null") == 2);
}

TEST_CASE("s4_volume command") {
  const fs::path coarse = kWorkDir / "s4_coarse.txt", fine = kWorkDir / "s4_fine.txt";
  CHECK(run("s4_volume --grid 50 > " + coarse.string()) == 0);
  CHECK(run("s4_volume --grid 100 > " + fine.string()) == 0);
  auto parse = [](const std::string& text) {
    const auto pos = text.find("volume = ");
    REQUIRE(pos != std::string::npos);
    return std::stod(text.substr(pos + 9));
  };
  const double v50 = parse(readText(coarse)), v100 = parse(readText(fine));
  CHECK(std::abs(v100 - v50) <= 0.01 * std::abs(v100));  // doubling changes < 1%
  CHECK(run("s4_volume --grid 5 2> /dev/null") == 2);
}
