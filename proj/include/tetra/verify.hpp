#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace tetra {

struct RunConfig {
  std::uint64_t seed = 20240413;
  std::map<std::string, double> tol_overrides;  // check name -> threshold
};

/// One named invariant check. For bound == Max the check passes when
/// value <= threshold, for bound == Min when value >= threshold (rank and
/// non-degeneracy style checks).
struct CheckResult {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  enum class Bound { Max, Min } bound = Bound::Max;
  bool pass = false;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  bool passed() const;
};

/// Suites mirror the library modules: quat, qlinalg, exterior, orbit,
/// momentum.
const std::vector<std::string>& verifySuiteNames();

/// Runs one suite; results are a pure function of the config (suites draw
/// from their own deterministic generators, so any subset of suites can run
/// standalone with identical outcomes).
SuiteReport runVerifySuite(const std::string& name, const RunConfig& config);

nlohmann::ordered_json toJson(const SuiteReport& report);
std::string toCsv(const SuiteReport& report);

}  // namespace tetra
