#include "tetra/momentum_map.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tetra {

Eigen::VectorXd standardMomentum(std::span<const Quaterniond> q) {
  Eigen::VectorXd out(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double n2 = normSquared(q[i]);
    out[static_cast<int>(i)] = n2 * n2;
  }
  return out;
}

double diagonalMomentum(const Quaterniond& q1, const Quaterniond& q2) {
  const double a = normSquared(q1), b = normSquared(q2);
  return a * a + b * b;
}

std::vector<Quaterniond> toQuaternions(const Eigen::VectorXd& x) {
  if (x.size() % 4 != 0) throw std::invalid_argument("point dimension must be a multiple of 4");
  std::vector<Quaterniond> q(x.size() / 4);
  for (std::size_t i = 0; i < q.size(); ++i)
    q[i] = {x[4 * i], x[4 * i + 1], x[4 * i + 2], x[4 * i + 3]};
  return q;
}

Eigen::VectorXd fromQuaternions(std::span<const Quaterniond> q) {
  Eigen::VectorXd x(4 * q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    x[4 * i] = q[i].w;
    x[4 * i + 1] = q[i].x;
    x[4 * i + 2] = q[i].y;
    x[4 * i + 3] = q[i].z;
  }
  return x;
}

GrassmannPoint::GrassmannPoint(QuatMatrixd m) : m_matrix(std::move(m)) {
  if (m_matrix.rows() < m_matrix.cols() || m_matrix.cols() < 1)
    throw std::invalid_argument("plane matrix must be n x p with 1 <= p <= n");
  if (gramSchmidt(m_matrix).rank != m_matrix.cols())
    throw std::invalid_argument("plane matrix does not have full column rank");
}

namespace {

// Fourth powers of the minor determinants, indexed by row subset rank.
std::vector<double> minorFourthPowers(const QuatMatrixd& m, int p) {
  std::vector<double> d4;
  d4.reserve(binomial(m.rows(), p));
  forEachSubset(m.rows(), p, [&](std::span<const int> rows) {
    const double d = dieudonneDet(selectRows(m, rows));
    d4.push_back(d * d * d * d);
  });
  return d4;
}

}  // namespace

Eigen::VectorXd grassmannMomentum(const GrassmannPoint& plane) {
  const QuatMatrixd& m = plane.matrix();
  const int n = plane.n(), p = plane.p();
  const std::vector<double> d4 = minorFourthPowers(m, p);
  const double best = *std::max_element(d4.begin(), d4.end());
  if (best < 1e-40) throw std::domain_error("degenerate plane representation");
  double denom = 0.0;
  Eigen::VectorXd numer = Eigen::VectorXd::Zero(n);
  std::size_t idx = 0;
  forEachSubset(n, p, [&](std::span<const int> rows) {
    const double v = d4[idx++];
    denom += v;
    for (int i : rows) numer[i] += v;
  });
  if (denom < 1e-40) throw std::domain_error("degenerate plane representation");
  return numer / denom;
}

GrassmannPoint rowAction(std::span<const UnitQuaterniond> a, const GrassmannPoint& plane) {
  if (static_cast<int>(a.size()) != plane.n())
    throw std::invalid_argument("one unit factor per row required");
  std::vector<Quaterniond> factors(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) factors[i] = a[i].value();
  return GrassmannPoint(leftScaleRows(plane.matrix(), std::span<const Quaterniond>(factors)));
}

GrassmannPoint basisChange(const GrassmannPoint& plane, const QuatMatrixd& g, double singular_tol) {
  if (g.rows() != plane.p() || g.cols() != plane.p())
    throw std::invalid_argument("basis change must be p x p");
  if (dieudonneDet(g) <= singular_tol) throw std::invalid_argument("singular basis change");
  return GrassmannPoint(plane.matrix() * g);
}

Hypersimplex::Hypersimplex(int n_, int p_) : n(n_), p(p_) {
  if (n < 1 || p < 0 || p > n) throw std::invalid_argument("hypersimplex requires 0 <= p <= n");
}

bool Hypersimplex::contains(const Eigen::VectorXd& x, double tol) const {
  if (x.size() != n) throw std::invalid_argument("point dimension mismatch");
  for (int i = 0; i < n; ++i)
    if (x[i] < -tol || x[i] > 1.0 + tol) return false;
  return std::abs(x.sum() - p) <= tol;
}

bool convexHullContains(const std::vector<Eigen::VectorXd>& vertices, const Eigen::VectorXd& x,
                        double tol) {
  if (vertices.empty()) throw std::invalid_argument("empty vertex set");
  const int m = static_cast<int>(vertices.size());
  if (m > 16) throw std::invalid_argument("vertex set too large for support enumeration");
  const int dim = static_cast<int>(x.size());
  for (const auto& v : vertices)
    if (v.size() != dim) throw std::invalid_argument("vertex dimension mismatch");

  Eigen::VectorXd rhs(dim + 1);
  rhs.head(dim) = x;
  rhs[dim] = 1.0;
  // Every vertex support is tried; by Caratheodory a contained point has an
  // affinely independent support whose convex weights the least-squares
  // solve recovers exactly.
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    const int count = __builtin_popcount(mask);
    Eigen::MatrixXd a(dim + 1, count);
    int col = 0;
    for (int v = 0; v < m; ++v)
      if (mask & (1u << v)) {
        a.col(col).head(dim) = vertices[v];
        a(dim, col) = 1.0;
        ++col;
      }
    const Eigen::VectorXd w = a.colPivHouseholderQr().solve(rhs);
    if (w.minCoeff() < -tol) continue;
    if ((a * w - rhs).norm() <= tol) return true;
  }
  return false;
}

namespace {

Eigen::VectorXd minorIndicator(std::span<const int> rows, int n) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
  for (int i : rows) v[i] = 1.0;
  return v;
}

}  // namespace

ScanReport orbitScan(const GrassmannPoint& plane, int samples, std::mt19937_64& rng, double tol) {
  if (samples < 0) throw std::invalid_argument("sample count must be >= 0");
  const int n = plane.n(), p = plane.p();
  ScanReport report;

  // Fixed points reachable in the orbit closure: indicators of row subsets
  // with nonvanishing minor.
  std::vector<double> minors;
  minors.reserve(binomial(n, p));
  forEachSubset(n, p, [&](std::span<const int> rows) {
    minors.push_back(dieudonneDet(selectRows(plane.matrix(), rows)));
  });
  const double max_minor = *std::max_element(minors.begin(), minors.end());
  std::size_t idx = 0;
  forEachSubset(n, p, [&](std::span<const int> rows) {
    if (minors[idx++] > 1e-8 * max_minor) report.hull_vertices.push_back(minorIndicator(rows, n));
  });

  const Hypersimplex simplex(n, p);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  auto record = [&](int id, const char* kind, const QuatMatrixd& m) {
    const Eigen::VectorXd image = grassmannMomentum(GrassmannPoint(m));
    ScanSample sample{id, kind, image, simplex.contains(image, tol),
                      convexHullContains(report.hull_vertices, image, std::max(tol, 1e-8))};
    if (!sample.in_hypersimplex || !sample.in_hull) ++report.containment_failures;
    report.samples.push_back(std::move(sample));
  };

  for (int s = 0; s < samples; ++s) {
    std::vector<Quaterniond> units(n);
    for (auto& u : units) u = randomUnitQuaternion(rng).value();
    const QuatMatrixd acted = leftScaleRows(plane.matrix(), std::span<const Quaterniond>(units));
    record(s, "spheroid", acted);

    // Closure probe: shrink random rows toward zero, then rescale so minors
    // stay in range. Scales are kept off exact zero so the rank validator
    // never trips on a collapsed probe.
    std::vector<Quaterniond> shrink(n);
    for (int i = 0; i < n; ++i) shrink[i] = (1e-4 + (1.0 - 1e-4) * uniform(rng)) * units[i];
    QuatMatrixd degenerate = leftScaleRows(plane.matrix(), std::span<const Quaterniond>(shrink));
    const double scale = maxAbs(degenerate);
    if (scale > 0.0) degenerate = (1.0 / scale) * degenerate;
    record(s, "closure", degenerate);
  }
  return report;
}

std::string scanReportCsv(const ScanReport& report, int n) {
  std::ostringstream out;
  out << "sample_id,kind";
  for (int i = 1; i <= n; ++i) out << ",x_" << i;
  out << ",in_hypersimplex,in_matroid_hull\n";
  out.precision(17);
  for (const auto& s : report.samples) {
    out << s.id << "," << s.kind;
    for (int i = 0; i < n; ++i) out << "," << s.image[i];
    out << "," << (s.in_hypersimplex ? 1 : 0) << "," << (s.in_hull ? 1 : 0) << "\n";
  }
  return out.str();
}

Eigen::VectorXd gradientCentral(const ScalarField& f, const Eigen::VectorXd& x, double h) {
  if (h <= 0.0) throw std::invalid_argument("step must be positive");
  Eigen::VectorXd g(x.size());
  Eigen::VectorXd probe = x;
  for (int i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + h;
    const double fp = f(probe);
    probe[i] = x[i] - h;
    const double fm = f(probe);
    probe[i] = x[i];
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

double quaternaryBracket(const std::array<ScalarField, 4>& f, const Eigen::VectorXd& x, double h) {
  const int m = static_cast<int>(x.size() / 4);
  if (x.size() % 4 != 0 || m < 1) throw std::invalid_argument("point must lie in R^{4m}");
  AltForm four = wedge(AltForm::fromVector(gradientCentral(f[0], x, h)),
                       AltForm::fromVector(gradientCentral(f[1], x, h)));
  four = wedge(four, AltForm::fromVector(gradientCentral(f[2], x, h)));
  four = wedge(four, AltForm::fromVector(gradientCentral(f[3], x, h)));
  return pairing(four, standardFourVector(m));
}

namespace {

Eigen::VectorXd hamiltonianField(const std::array<ScalarField, 3>& f, const MultiVector& xi,
                                 const Eigen::VectorXd& x, double h) {
  AltForm rho = wedge(AltForm::fromVector(gradientCentral(f[0], x, h)),
                      AltForm::fromVector(gradientCentral(f[1], x, h)));
  rho = wedge(rho, AltForm::fromVector(gradientCentral(f[2], x, h)));
  return contract(rho, xi).coeffs();
}

}  // namespace

Trajectory nambuFlow(const std::array<ScalarField, 3>& f, const Eigen::VectorXd& start, double dt,
                     int steps, double h) {
  if (dt <= 0.0) throw std::invalid_argument("time step must be positive");
  if (steps < 0) throw std::invalid_argument("step count must be >= 0");
  const int m = static_cast<int>(start.size() / 4);
  if (start.size() % 4 != 0 || m < 1) throw std::invalid_argument("state must lie in R^{4m}");
  const MultiVector xi = standardFourVector(m);

  Trajectory out;
  out.times.reserve(steps + 1);
  out.states.reserve(steps + 1);
  Eigen::VectorXd x = start;
  out.times.push_back(0.0);
  out.states.push_back(x);
  for (int s = 0; s < steps; ++s) {
    const Eigen::VectorXd k1 = hamiltonianField(f, xi, x, h);
    const Eigen::VectorXd k2 = hamiltonianField(f, xi, x + 0.5 * dt * k1, h);
    const Eigen::VectorXd k3 = hamiltonianField(f, xi, x + 0.5 * dt * k2, h);
    const Eigen::VectorXd k4 = hamiltonianField(f, xi, x + dt * k3, h);
    x += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!x.allFinite()) {
      std::ostringstream msg;
      msg << "flow diverged at step " << (s + 1) << " (t = " << (s + 1) * dt << ")";
      throw std::runtime_error(msg.str());
    }
    out.times.push_back((s + 1) * dt);
    out.states.push_back(x);
  }
  return out;
}

VectorField blockLeftMultField(int block, int m, const Quaterniond& u) {
  if (block < 0 || block >= m) throw std::invalid_argument("block index out of range");
  return [block, m, u](const Eigen::VectorXd& x) {
    if (x.size() != 4 * m) throw std::invalid_argument("point dimension mismatch");
    const Quaterniond q{x[4 * block], x[4 * block + 1], x[4 * block + 2], x[4 * block + 3]};
    const Quaterniond v = u * q;
    Eigen::VectorXd out = Eigen::VectorXd::Zero(4 * m);
    out[4 * block] = v.w;
    out[4 * block + 1] = v.x;
    out[4 * block + 2] = v.y;
    out[4 * block + 3] = v.z;
    return out;
  };
}

VectorField diagonalLeftMultField(int m, const Quaterniond& u) {
  return [m, u](const Eigen::VectorXd& x) {
    if (x.size() != 4 * m) throw std::invalid_argument("point dimension mismatch");
    Eigen::VectorXd out(4 * m);
    for (int i = 0; i < m; ++i) {
      const Quaterniond q{x[4 * i], x[4 * i + 1], x[4 * i + 2], x[4 * i + 3]};
      const Quaterniond v = u * q;
      out[4 * i] = v.w;
      out[4 * i + 1] = v.x;
      out[4 * i + 2] = v.y;
      out[4 * i + 3] = v.z;
    }
    return out;
  };
}

double momentumIdentityResidual(const ScalarField& mu, const std::array<VectorField, 3>& generators,
                                const FormField& psi, std::span<const Eigen::VectorXd> points,
                                double h, double scale) {
  double worst = 0.0;
  for (const auto& x : points) {
    MultiVector trivector = wedge(MultiVector::fromVector(generators[0](x)),
                                  MultiVector::fromVector(generators[1](x)));
    trivector = wedge(trivector, MultiVector::fromVector(generators[2](x)));
    const AltForm contraction = interior(trivector, psi(x));
    const Eigen::VectorXd dmu = gradientCentral(mu, x, h);
    worst = std::max(worst, (contraction.coeffs() - scale * dmu).cwiseAbs().maxCoeff());
  }
  return worst;
}

double horizontalityResidual(const FormField& psi, const std::vector<ScalarField>& level_fns,
                             const std::vector<VectorField>& generators,
                             std::span<const Eigen::VectorXd> points, double h) {
  if (level_fns.empty()) throw std::invalid_argument("at least one level function required");
  double worst = 0.0;
  for (const auto& x : points) {
    const int d = static_cast<int>(x.size());
    const int k = static_cast<int>(level_fns.size());
    Eigen::MatrixXd jac(k, d);
    for (int r = 0; r < k; ++r) jac.row(r) = gradientCentral(level_fns[r], x, h).transpose();

    // Tangent space of the joint level set: right singular vectors with
    // negligible singular value.
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac, Eigen::ComputeFullV);
    const double sigma_max = svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
    std::vector<Eigen::VectorXd> tangent;
    for (int c = 0; c < d; ++c) {
      const double sigma = c < svd.singularValues().size() ? svd.singularValues()[c] : 0.0;
      if (sigma <= 1e-7 * std::max(1.0, sigma_max)) tangent.push_back(svd.matrixV().col(c));
    }

    const AltForm form = psi(x);
    for (const auto& gen : generators) {
      const AltForm three = interior(MultiVector::fromVector(gen(x)), form);
      const int t = static_cast<int>(tangent.size());
      std::array<Eigen::VectorXd, 3> triple;
      for (int a = 0; a < t; ++a)
        for (int b = a + 1; b < t; ++b)
          for (int c = b + 1; c < t; ++c) {
            triple = {tangent[a], tangent[b], tangent[c]};
            worst = std::max(worst, std::abs(evaluate(three, triple)));
          }
    }
  }
  return worst;
}

}  // namespace tetra
