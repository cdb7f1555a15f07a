#include "tetra/orbit_form.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tetra {

double reTraceProduct(const QuatMatrixd& a, const QuatMatrixd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols())
    throw std::invalid_argument("pairing requires equal-size square matrices");
  double total = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const Quaterniond& p = a(i, k);
      const Quaterniond& q = b(k, i);
      total += p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z;  // Re(p q)
    }
  return total;
}

namespace {

// Antisymmetrizer via expansion by the leading factor:
//   alt(a_1, ..., a_k) = sum_i (-1)^{i-1} a_i alt(a_1, ..., ^a_i, ..., a_k).
QuatMatrixd alternatingProduct(const std::vector<QuatMatrixd>& a) {
  if (a.size() == 1) return a[0];
  const int n = a[0].rows();
  QuatMatrixd total(n, n);
  std::vector<QuatMatrixd> rest;
  rest.reserve(a.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    rest.clear();
    for (std::size_t t = 0; t < a.size(); ++t)
      if (t != i) rest.push_back(a[t]);
    const QuatMatrixd term = a[i] * alternatingProduct(rest);
    total = (i % 2 == 0) ? total + term : total - term;
  }
  return total;
}

void requireEqualSquare(std::span<const QuatMatrixd> ms) {
  const int n = ms[0].rows();
  for (const auto& m : ms)
    if (m.rows() != n || m.cols() != n)
      throw std::invalid_argument("arguments must be square matrices of equal size");
}

}  // namespace

QuatMatrixd fourCommutator(const std::array<QuatMatrixd, 4>& a) {
  requireEqualSquare(a);
  return alternatingProduct({a[0], a[1], a[2], a[3]});
}

double jacobi5Residual(const std::array<QuatMatrixd, 5>& a) {
  requireEqualSquare(a);
  const int n = a[0].rows();
  QuatMatrixd lhs(n, n);
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) {
      std::array<QuatMatrixd, 4> args = {a[i] * a[j] - a[j] * a[i], QuatMatrixd(), QuatMatrixd(),
                                         QuatMatrixd()};
      int slot = 1;
      for (int t = 0; t < 5; ++t)
        if (t != i && t != j) args[slot++] = a[t];
      const QuatMatrixd term = fourCommutator(args);
      lhs = (((i + 1) + (j + 1)) % 2 == 0) ? lhs + term : lhs - term;
    }
  return maxAbs(lhs);
}

double orbitFormValue(const HermitianMatrixd& y, const std::array<QuatMatrixd, 4>& a) {
  for (const auto& m : a)
    if (m.rows() != y.size() || m.cols() != y.size())
      throw std::invalid_argument("tangent argument size mismatch");
  return reTraceProduct(y.matrix(), fourCommutator(a));
}

std::vector<QuatMatrixd> spLieBasis(int n) {
  if (n < 1) throw std::invalid_argument("spLieBasis expects n >= 1");
  std::vector<QuatMatrixd> basis;
  basis.reserve(n * (2 * n + 1));
  const Quaterniond units[3] = {Quaterniond::i(), Quaterniond::j(), Quaterniond::k()};
  for (int a = 0; a < n; ++a)
    for (const auto& u : units) {
      QuatMatrixd w(n, n);
      w(a, a) = u;
      basis.push_back(std::move(w));
    }
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      QuatMatrixd re(n, n);
      re(a, b) = Quaterniond::one();
      re(b, a) = -Quaterniond::one();
      basis.push_back(std::move(re));
      for (const auto& u : units) {
        QuatMatrixd w(n, n);
        w(a, b) = u;
        w(b, a) = u;
        basis.push_back(std::move(w));
      }
    }
  return basis;
}

BracketTable spStructureConstants(int n) {
  const std::vector<QuatMatrixd> basis = spLieBasis(n);
  const int d = static_cast<int>(basis.size());
  // Gram matrix of the basis under <V, W> = Re Tr(V W*), positive definite
  // on antihermitian matrices.
  Eigen::MatrixXd gram(d, d);
  std::vector<QuatMatrixd> adjoints;
  adjoints.reserve(d);
  for (const auto& w : basis) adjoints.push_back(adjoint(w));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) gram(i, j) = reTraceProduct(basis[i], adjoints[j]);
  const Eigen::LDLT<Eigen::MatrixXd> solver(gram);

  std::vector<Eigen::MatrixXd> c(d, Eigen::MatrixXd::Zero(d, d));
  Eigen::VectorXd rhs(d);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      const QuatMatrixd br = basis[i] * basis[j] - basis[j] * basis[i];
      for (int k = 0; k < d; ++k) rhs[k] = reTraceProduct(br, adjoints[k]);
      const Eigen::VectorXd coef = solver.solve(rhs);
      for (int k = 0; k < d; ++k) {
        c[k](i, j) = coef[k];
        c[k](j, i) = -coef[k];
      }
    }
  return BracketTable(std::move(c));
}

OrbitTangentBasis orbitTangentBasis(const HermitianMatrixd& y, double rank_tol) {
  std::vector<QuatMatrixd> lie = spLieBasis(y.size());
  std::vector<QuatMatrixd> tangent;
  for (const auto& w : lie) {
    QuatMatrixd v = w * y.matrix() - y.matrix() * w;
    // Gram-Schmidt under the Re-trace pairing, two passes.
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& u : tangent) {
        const double h = reTraceProduct(v, u);
        v = v - h * u;
      }
    const double nrm = std::sqrt(std::max(0.0, reTraceProduct(v, v)));
    if (nrm > rank_tol) tangent.push_back((1.0 / nrm) * v);
  }
  const int dim = static_cast<int>(tangent.size());
  return {y, std::move(lie), std::move(tangent), dim};
}

AltForm orbitFormAsAltForm(const OrbitTangentBasis& basis) {
  if (basis.dim < 4) throw std::invalid_argument("orbit too small");
  AltForm form(basis.dim, 4);
  forEachSubset(basis.dim, 4, [&](std::span<const int> s) {
    const std::array<QuatMatrixd, 4> args = {basis.tangent[s[0]], basis.tangent[s[1]],
                                             basis.tangent[s[2]], basis.tangent[s[3]]};
    form.setCoefficient(s, orbitFormValue(basis.base, args));
  });
  return form;
}

double ceClosednessResidual(const HermitianMatrixd& y) {
  const int n = y.size();
  const std::vector<QuatMatrixd> basis = spLieBasis(n);
  const int d = static_cast<int>(basis.size());
  std::vector<QuatMatrixd> tangent;
  tangent.reserve(d);
  for (const auto& w : basis) tangent.push_back(w * y.matrix() - y.matrix() * w);

  Eigen::VectorXd phi(binomial(d, 4));
  std::int64_t rank = 0;
  forEachSubset(d, 4, [&](std::span<const int> s) {
    const std::array<QuatMatrixd, 4> args = {tangent[s[0]], tangent[s[1]], tangent[s[2]],
                                             tangent[s[3]]};
    phi[rank++] = orbitFormValue(y, args);
  });

  const Eigen::VectorXd dphi = ceDifferentialCoeffs(d, 4, phi, spStructureConstants(n));
  return dphi.size() == 0 ? 0.0 : dphi.cwiseAbs().maxCoeff();
}

double conjugationInvarianceResidual(const HermitianMatrixd& y, int trials, std::mt19937_64& rng) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  const int n = y.size();
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const UnitaryMatrixd u = randomUnitary(n, rng);
    const QuatMatrixd ustar = adjoint(u.matrix());
    std::array<QuatMatrixd, 4> args = {QuatMatrixd(), QuatMatrixd(), QuatMatrixd(), QuatMatrixd()};
    std::array<QuatMatrixd, 4> conjugated = args;
    for (int i = 0; i < 4; ++i) {
      args[i] = randomHermitian(n, rng).matrix();
      conjugated[i] = u.matrix() * args[i] * ustar;
    }
    const HermitianMatrixd moved(u.matrix() * y.matrix() * ustar);
    const double base = orbitFormValue(y, args);
    const double there = orbitFormValue(moved, conjugated);
    worst = std::max(worst, std::abs(there - base) / std::max(1.0, std::abs(base)));
  }
  return worst;
}

Eigen::VectorXd realDiagonal(const HermitianMatrixd& y) {
  Eigen::VectorXd d(y.size());
  for (int i = 0; i < y.size(); ++i) d[i] = y.matrix()(i, i).w;
  return d;
}

HermitianMatrixd rankOneProjector(const Quaterniond& a, const Quaterniond& b) {
  const double n2 = normSquared(a) + normSquared(b);
  if (std::abs(n2 - 1.0) > 1e-10)
    throw std::invalid_argument("rankOneProjector expects a unit pair");
  QuatMatrixd p(2, 2);
  p(0, 0) = {normSquared(a), 0, 0, 0};
  p(0, 1) = a * conj(b);
  p(1, 0) = b * conj(a);
  p(1, 1) = {normSquared(b), 0, 0, 0};
  return HermitianMatrixd(p);
}

HermitianMatrixd realDiagonalMatrix(const std::vector<double>& diagonal) {
  const int n = static_cast<int>(diagonal.size());
  QuatMatrixd m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = {diagonal[i], 0, 0, 0};
  return HermitianMatrixd(m);
}

OrbitReport orbitCertificate(const std::vector<double>& diagonal, int invariance_trials,
                             std::mt19937_64& rng) {
  const HermitianMatrixd y = realDiagonalMatrix(diagonal);
  OrbitReport report;
  std::ostringstream label;
  label << "diag(";
  for (std::size_t i = 0; i < diagonal.size(); ++i) label << (i ? "," : "") << diagonal[i];
  label << ")";
  report.spectrum = label.str();

  const OrbitTangentBasis basis = orbitTangentBasis(y);
  report.dim = basis.dim;
  if (basis.dim >= 4)
    report.nondegeneracy_sigma_min = smallestSingularValue(kernelMatrix(orbitFormAsAltForm(basis)));
  report.ce_residual = ceClosednessResidual(y);
  report.invariance_discrepancy = conjugationInvarianceResidual(y, invariance_trials, rng);

  double eq = 0.0;
  for (int t = 0; t < 20; ++t) {
    std::array<QuatMatrixd, 5> tuple = {QuatMatrixd(), QuatMatrixd(), QuatMatrixd(), QuatMatrixd(),
                                        QuatMatrixd()};
    for (auto& m : tuple) m = randomHermitian(y.size(), rng).matrix();
    eq = std::max(eq, jacobi5Residual(tuple));
  }
  report.eq_residual = eq;
  return report;
}

}  // namespace tetra
