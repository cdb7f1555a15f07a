// Command-line front end: determinant comparison, verification suites,
// plane-coordinate maps, orbit scans, bracket flows, and the sphere-volume
// quadrature demo.
//
// Exit codes: 0 pass, 1 check failure, 2 usage/parse error, 3 I/O error.

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tetra/json_io.hpp"
#include "tetra/momentum_map.hpp"
#include "tetra/orbit_form.hpp"
#include "tetra/qlinalg.hpp"
#include "tetra/verify.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct CliError {
  int code;
  std::string message;
};

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{kExitIo, "cannot open " + path};
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (!in.good() && !in.eof()) throw CliError{kExitIo, "read failure on " + path};
  return buffer.str();
}

void writeFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliError{kExitIo, "cannot open " + path + " for writing"};
  out << contents;
  if (!out.good()) throw CliError{kExitIo, "write failure on " + path};
}

tetra::QuatMatrixd loadMatrix(const std::string& path) {
  const std::string text = readFile(path);
  try {
    return tetra::quatMatrixFromJson(tetra::Json::parse(text));
  } catch (const std::exception& e) {
    throw CliError{kExitUsage, std::string("invalid matrix file: ") + e.what()};
  }
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty())
    std::cout << text;
  else
    writeFile(out_path, text);
}

// --------------------------------------------------------------------------

int cmdDet(const std::string& file) {
  const tetra::QuatMatrixd a = loadMatrix(file);
  if (a.rows() != a.cols()) throw CliError{kExitUsage, "determinant requires a square matrix"};
  const double d = tetra::dieudonneDet(a);
  const double study = std::sqrt(tetra::studyAbsDet(a));
  const double gap = std::abs(d - study) / std::max(1.0, std::max(d, study));
  std::cout.precision(17);
  std::cout << "dieudonne = " << d << "\n"
            << "study     = " << study << "\n"
            << "rel gap   = " << gap << "\n";
  return kExitPass;
}

int cmdVerify(const std::string& suite, const tetra::RunConfig& config, const std::string& format,
              const std::string& out_path) {
  std::vector<std::string> suites;
  if (suite == "all")
    suites = tetra::verifySuiteNames();
  else if (std::find(tetra::verifySuiteNames().begin(), tetra::verifySuiteNames().end(), suite) !=
           tetra::verifySuiteNames().end())
    suites = {suite};
  else
    throw CliError{kExitUsage, "unknown suite: " + suite};

  bool all_pass = true;
  std::vector<std::string> failed;
  tetra::Json doc{{"seed", config.seed}, {"suites", tetra::Json::array()}};
  std::ostringstream csv;
  csv << "suite,check,value,threshold,bound,status\n";
  for (const auto& name : suites) {
    const tetra::SuiteReport report = tetra::runVerifySuite(name, config);
    doc["suites"].push_back(tetra::toJson(report));
    if (name == "exterior") {
      // debug dump of the reference form the suite exercises
      doc["suites"].back()["form_dump"] = tetra::toJson(tetra::standardFourForm(2));
    }
    if (name == "orbit") {
      std::mt19937_64 rng(config.seed ^ 0x5bd1e995u);
      tetra::Json orbits = tetra::Json::array();
      for (const auto& diag :
           std::vector<std::vector<double>>{{0, 1}, {1, -1}, {0, 0, 1}, {0, 1, 2}})
        orbits.push_back(tetra::toJson(tetra::orbitCertificate(diag, 20, rng)));
      doc["suites"].back()["orbits"] = std::move(orbits);
    }
    csv << tetra::toCsv(report);
    for (const auto& c : report.checks)
      if (!c.pass) failed.push_back(report.suite + "/" + c.name);
    all_pass = all_pass && report.passed();
  }
  doc["passed"] = all_pass;

  emit(format == "csv" ? csv.str() : doc.dump(2) + "\n", out_path);
  if (!all_pass) {
    for (const auto& name : failed) std::cerr << "check failed: " << name << "\n";
    return kExitCheckFailure;
  }
  return kExitPass;
}

int cmdMumap(const std::string& file, int p) {
  const tetra::QuatMatrixd m = loadMatrix(file);
  if (m.cols() != p)
    throw CliError{kExitUsage, "file holds a " + std::to_string(m.rows()) + " x " +
                                   std::to_string(m.cols()) + " matrix, expected p = " +
                                   std::to_string(p)};
  std::optional<tetra::GrassmannPoint> plane;
  try {
    plane.emplace(m);
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kExitCheckFailure;
  }
  const Eigen::VectorXd x = tetra::grassmannMomentum(*plane);
  const tetra::Hypersimplex simplex(m.rows(), p);
  std::cout.precision(17);
  std::cout << "x =";
  for (int i = 0; i < x.size(); ++i) std::cout << " " << x[i];
  std::cout << "\nsum = " << x.sum() << "\nin_hypersimplex = "
            << (simplex.contains(x) ? "true" : "false") << "\n";
  return kExitPass;
}

int cmdOrbitScan(const std::string& file, int p, int samples, std::uint64_t seed,
                 const std::string& out_path, const std::string& format) {
  const tetra::QuatMatrixd m = loadMatrix(file);
  if (m.cols() != p) throw CliError{kExitUsage, "matrix column count does not match p"};
  std::optional<tetra::GrassmannPoint> plane;
  try {
    plane.emplace(m);
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kExitCheckFailure;
  }
  std::mt19937_64 rng(seed);
  const tetra::ScanReport report = tetra::orbitScan(*plane, samples, rng);
  emit(format == "json" ? tetra::toJson(report).dump(2) + "\n"
                        : tetra::scanReportCsv(report, m.rows()),
       out_path);
  std::cout << "containment_failures = " << report.containment_failures << "\n";
  return report.containment_failures == 0 ? kExitPass : kExitCheckFailure;
}

// Built-in hamiltonian catalog: "x<k>" picks the k-th coordinate (1-based),
// "norm4_<i>" is |q_i|^4 for the i-th quaternion component, "const" is the
// constant 1. {"combo": [[coef, name], ...]} forms linear combinations.
tetra::ScalarField makeHamiltonian(const tetra::Json& spec, int m) {
  if (spec.is_object() && spec.contains("combo")) {
    std::vector<std::pair<double, tetra::ScalarField>> terms;
    for (const auto& term : spec["combo"]) {
      if (!term.is_array() || term.size() != 2 || !term[0].is_number())
        throw CliError{kExitUsage, "combo terms must be [coefficient, name]"};
      terms.emplace_back(term[0].get<double>(), makeHamiltonian(term[1], m));
    }
    return [terms](const Eigen::VectorXd& x) {
      double total = 0.0;
      for (const auto& [c, f] : terms) total += c * f(x);
      return total;
    };
  }
  if (!spec.is_string()) throw CliError{kExitUsage, "hamiltonian spec must be a name or combo"};
  const std::string name = spec.get<std::string>();
  if (name == "const") return [](const Eigen::VectorXd&) { return 1.0; };
  if (name.starts_with("x")) {
    try {
      const int k = std::stoi(name.substr(1));
      if (k >= 1 && k <= 4 * m)
        return [k](const Eigen::VectorXd& x) { return x[k - 1]; };
    } catch (const std::exception&) {
    }
  }
  if (name.starts_with("norm4_")) {
    try {
      const int i = std::stoi(name.substr(6));
      if (i >= 1 && i <= m)
        return [i](const Eigen::VectorXd& x) {
          const double r2 = x.segment(4 * (i - 1), 4).squaredNorm();
          return r2 * r2;
        };
    } catch (const std::exception&) {
    }
  }
  throw CliError{kExitUsage, "unknown hamiltonian: " + name};
}

int cmdFlow(const std::string& spec_file, double dt, int steps, const std::string& out_path) {
  const std::string text = readFile(spec_file);
  tetra::Json spec;
  try {
    spec = tetra::Json::parse(text);
  } catch (const std::exception& e) {
    throw CliError{kExitUsage, std::string("invalid flow spec: ") + e.what()};
  }
  if (!spec.is_object() || !spec.contains("m") || !spec.contains("f") || !spec.contains("g0"))
    throw CliError{kExitUsage, "flow spec must hold {m, f: [3 names], g0: [4m numbers]}"};
  const int m = spec["m"].is_number_integer() ? spec["m"].get<int>() : 0;
  if (m < 1 || m > 4) throw CliError{kExitUsage, "m must lie in 1..4"};
  if (!spec["f"].is_array() || spec["f"].size() != 3)
    throw CliError{kExitUsage, "f must list three hamiltonians"};
  if (!spec["g0"].is_array() || static_cast<int>(spec["g0"].size()) != 4 * m)
    throw CliError{kExitUsage, "g0 must hold 4m numbers"};

  const std::array<tetra::ScalarField, 3> f = {makeHamiltonian(spec["f"][0], m),
                                               makeHamiltonian(spec["f"][1], m),
                                               makeHamiltonian(spec["f"][2], m)};
  Eigen::VectorXd start(4 * m);
  for (int i = 0; i < 4 * m; ++i) {
    if (!spec["g0"][i].is_number()) throw CliError{kExitUsage, "g0 entries must be numbers"};
    start[i] = spec["g0"][i].get<double>();
  }

  const tetra::Trajectory traj = tetra::nambuFlow(f, start, dt, steps);
  std::ostringstream csv;
  csv.precision(17);
  csv << "t";
  for (int i = 1; i <= 4 * m; ++i) csv << ",x_" << i;
  csv << ",f1,f2,f3\n";
  double drift = 0.0;
  const double f0[3] = {f[0](start), f[1](start), f[2](start)};
  for (std::size_t s = 0; s < traj.states.size(); ++s) {
    csv << traj.times[s];
    for (int i = 0; i < 4 * m; ++i) csv << "," << traj.states[s][i];
    for (int c = 0; c < 3; ++c) {
      const double v = f[c](traj.states[s]);
      csv << "," << v;
      drift = std::max(drift, std::abs(v - f0[c]) / std::max(1.0, std::abs(f0[c])));
    }
    csv << "\n";
  }
  emit(csv.str(), out_path);
  std::cout.precision(17);
  std::cout << "max_drift = " << drift << "\n";
  return kExitPass;
}

double simpson(double a, double b, int intervals, const std::function<double(double)>& f) {
  if (intervals % 2 != 0) ++intervals;
  const double h = (b - a) / intervals;
  double total = f(a) + f(b);
  for (int i = 1; i < intervals; ++i) total += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return total * h / 3.0;
}

// Volume of the round 4-sphere model: radial density r^3 / (1 + r^4)^2 over
// [0, cutoff] times the volume of the unit 3-sphere in hyperspherical
// coordinates, both by product quadrature. The radial axis is compactified
// by r = u / (1 - u) so the quadrature resolves the peak near r = 1 and the
// r^-5 tail on one smooth grid.
int cmdS4Volume(int grid) {
  if (grid < 10) throw CliError{kExitUsage, "grid must be >= 10"};
  const double cutoff = 100.0;
  const double u_max = cutoff / (1.0 + cutoff);
  const double radial = simpson(0.0, u_max, grid, [](double u) {
    const double r = u / (1.0 - u);
    const double d = 1.0 + r * r * r * r;
    const double jacobian = 1.0 / ((1.0 - u) * (1.0 - u));
    return r * r * r / (d * d) * jacobian;
  });
  const double pi = std::numbers::pi;
  const double sphere = simpson(0.0, pi, grid, [](double a) { return std::sin(a) * std::sin(a); }) *
                        simpson(0.0, pi, grid, [](double b) { return std::sin(b); }) *
                        simpson(0.0, 2.0 * pi, grid, [](double) { return 1.0; });
  const double tail = sphere * 0.25 / (cutoff * cutoff * cutoff * cutoff);
  std::cout.precision(17);
  std::cout << "volume = " << radial * sphere << "\n"
            << "grid = " << grid << ", radial cutoff = " << cutoff
            << ", tail bound = " << tail << "\n";
  return kExitPass;
}

// --tol.<name> <value> flags are collected before regular parsing.
std::vector<std::string> extractTolerances(int argc, char** argv,
                                           std::map<std::string, double>& overrides) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg.rfind("--tol.", 0) == 0) {
      std::string name = arg.substr(6), value;
      const auto eq = name.find('=');
      if (eq != std::string::npos) {
        value = name.substr(eq + 1);
        name = name.substr(0, eq);
      } else if (i + 1 < argc) {
        value = argv[++i];
      } else {
        throw CliError{kExitUsage, "missing value for " + arg};
      }
      try {
        overrides[name] = std::stod(value);
      } catch (const std::exception&) {
        throw CliError{kExitUsage, "invalid tolerance value for " + arg};
      }
      continue;
    }
    args.push_back(arg);
  }
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quaternionic determinants, orbit 4-form certificates, and momentum polytope scans"};
  app.require_subcommand(1);

  std::uint64_t seed = 20240413;
  std::string out_path, format;  // per-command default: verify json, scans csv
  app.add_option("--seed", seed, "random seed (reports are reproducible per seed)");
  app.add_option("--out", out_path, "write the report to this path instead of stdout");
  app.add_option("--format", format, "report format")
      ->check(CLI::IsMember({"csv", "json"}));
  app.fallthrough();

  std::string det_file;
  CLI::App* det = app.add_subcommand("det", "Dieudonne determinant vs the complex-embedding value");
  det->add_option("matrix-file", det_file, "matrix JSON file")->required();

  std::string verify_suite;
  CLI::App* verify = app.add_subcommand("verify", "run invariant suites");
  verify->add_option("suite", verify_suite, "quat|qlinalg|exterior|orbit|momentum|all")->required();

  std::string mumap_file;
  int mumap_p = 1;
  CLI::App* mumap = app.add_subcommand("mumap", "plane coordinates in the hypersimplex");
  mumap->add_option("matrix-file", mumap_file)->required();
  mumap->add_option("p", mumap_p, "plane dimension")->required();

  std::string scan_file;
  int scan_p = 1, scan_samples = 1000;
  CLI::App* scan = app.add_subcommand("orbit_scan", "sample the unit-action orbit of a plane");
  scan->add_option("matrix-file", scan_file)->required();
  scan->add_option("p", scan_p, "plane dimension")->required();
  scan->add_option("--samples", scan_samples, "number of samples");

  std::string flow_file;
  double flow_dt = 1e-3;
  int flow_steps = 1000;
  CLI::App* flow = app.add_subcommand("flow", "integrate a quaternary-bracket flow");
  flow->add_option("spec-file", flow_file, "flow spec JSON")->required();
  flow->add_option("--dt", flow_dt, "time step");
  flow->add_option("--steps", flow_steps, "step count");

  int s4_grid = 200;
  CLI::App* s4 = app.add_subcommand("s4_volume", "quadrature of the 4-sphere volume density");
  s4->add_option("--grid", s4_grid, "quadrature intervals per axis");

  tetra::RunConfig config;
  std::vector<std::string> args;
  try {
    args = extractTolerances(argc, argv, config.tol_overrides);
  } catch (const CliError& e) {
    std::cerr << e.message << "\n";
    return e.code;
  }
  std::vector<const char*> argv2;
  argv2.push_back(argv[0]);
  for (const auto& a : args) argv2.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv2.size()), argv2.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  config.seed = seed;

  try {
    if (det->parsed()) return cmdDet(det_file);
    if (verify->parsed())
      return cmdVerify(verify_suite, config, format.empty() ? "json" : format, out_path);
    if (mumap->parsed()) return cmdMumap(mumap_file, mumap_p);
    if (scan->parsed())
      return cmdOrbitScan(scan_file, scan_p, scan_samples, seed, out_path,
                          format.empty() ? "csv" : format);
    if (flow->parsed()) return cmdFlow(flow_file, flow_dt, flow_steps, out_path);
    if (s4->parsed()) return cmdS4Volume(s4_grid);
  } catch (const CliError& e) {
    std::cerr << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitCheckFailure;
  }
  return kExitUsage;
}
