#pragma once

#include <Eigen/Dense>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

#include "tetra/subsets.hpp"

namespace tetra {

/// Dense storage is indexed by sorted k-subsets; the cap keeps wedge products
/// of arbitrary degrees cheap. Degree-limited paths (ceDifferentialCoeffs)
/// accept larger bases.
inline constexpr int kMaxExteriorDim = 16;

enum class Variance { Covariant, Contravariant };

/// Alternating tensor of fixed degree on R^d with real coefficients, stored
/// densely over sorted k-subsets of {0, ..., d-1} in lexicographic order.
/// Covariant tensors are forms, contravariant ones are multivectors.
template <Variance V>
class AltTensor {
 public:
  /// Degrees above the dimension are allowed and denote the zero space
  /// (empty coefficient storage), so top-degree differentials stay total.
  AltTensor(int dim, int degree)
      : m_dim(dim), m_degree(degree), m_coeffs(Eigen::VectorXd::Zero(binomial(dim, degree))) {
    if (dim < 0 || dim > kMaxExteriorDim) throw std::invalid_argument("dimension outside [0, 16]");
    if (degree < 0) throw std::invalid_argument("degree must be nonnegative");
  }

  /// Basis tensor e_{s1} ^ ... ^ e_{sk} for a sorted index set.
  static AltTensor basis(int dim, std::initializer_list<int> subset) {
    AltTensor t(dim, static_cast<int>(subset.size()));
    std::vector<int> s(subset);
    for (std::size_t i = 1; i < s.size(); ++i)
      if (s[i - 1] >= s[i]) throw std::invalid_argument("subset must be strictly increasing");
    if (!s.empty() && (s.front() < 0 || s.back() >= dim))
      throw std::invalid_argument("subset index out of range");
    t.m_coeffs[subsetRank(s, dim)] = 1.0;
    return t;
  }

  /// Degree-1 tensor with the given components.
  static AltTensor fromVector(const Eigen::VectorXd& v) {
    AltTensor t(static_cast<int>(v.size()), 1);
    t.m_coeffs = v;
    return t;
  }

  int dim() const { return m_dim; }
  int degree() const { return m_degree; }

  double& operator[](std::int64_t rank) { return m_coeffs[rank]; }
  double operator[](std::int64_t rank) const { return m_coeffs[rank]; }

  double coefficient(std::span<const int> subset) const {
    return m_coeffs[subsetRank(subset, m_dim)];
  }
  void setCoefficient(std::span<const int> subset, double value) {
    m_coeffs[subsetRank(subset, m_dim)] = value;
  }

  const Eigen::VectorXd& coeffs() const { return m_coeffs; }
  Eigen::VectorXd& coeffs() { return m_coeffs; }

  friend AltTensor operator+(const AltTensor& a, const AltTensor& b) {
    requireCompatible(a, b);
    AltTensor c = a;
    c.m_coeffs += b.m_coeffs;
    return c;
  }
  friend AltTensor operator-(const AltTensor& a, const AltTensor& b) {
    requireCompatible(a, b);
    AltTensor c = a;
    c.m_coeffs -= b.m_coeffs;
    return c;
  }
  friend AltTensor operator*(double s, const AltTensor& a) {
    AltTensor c = a;
    c.m_coeffs *= s;
    return c;
  }

  double maxAbsCoeff() const {
    return m_coeffs.size() == 0 ? 0.0 : m_coeffs.cwiseAbs().maxCoeff();
  }

 private:
  static void requireCompatible(const AltTensor& a, const AltTensor& b) {
    if (a.m_dim != b.m_dim || a.m_degree != b.m_degree)
      throw std::invalid_argument("tensors of different shape");
  }

  int m_dim, m_degree;
  Eigen::VectorXd m_coeffs;
};

using AltForm = AltTensor<Variance::Covariant>;
using MultiVector = AltTensor<Variance::Contravariant>;

/// Graded-commutative wedge product: a ^ b = (-1)^{kl} b ^ a.
template <Variance V>
AltTensor<V> wedge(const AltTensor<V>& a, const AltTensor<V>& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("wedge of tensors on different spaces");
  const int d = a.dim();
  if (a.degree() + b.degree() > d) throw std::invalid_argument("wedge exceeds ambient degree");
  AltTensor<V> out(d, a.degree() + b.degree());
  std::vector<int> t(b.degree()), merged;
  forEachSubset(d, a.degree(), [&](std::span<const int> s) {
    const double as = a.coefficient(s);
    if (as == 0.0) return;
    const std::int64_t nb = binomial(d, b.degree());
    for (std::int64_t rb = 0; rb < nb; ++rb) {
      const double bt = b[rb];
      if (bt == 0.0) continue;
      subsetUnrank(rb, d, b.degree(), t);
      const int sign = mergeDisjoint(s, t, merged);
      if (sign == 0) continue;
      out[subsetRank(merged, d)] += sign * as * bt;
    }
  });
  return out;
}

/// m-fold wedge power of a form.
template <Variance V>
AltTensor<V> power(const AltTensor<V>& a, int m) {
  if (m < 1) throw std::invalid_argument("power expects m >= 1");
  if (a.degree() * m > a.dim()) throw std::invalid_argument("power exceeds ambient degree");
  AltTensor<V> out = a;
  for (int i = 1; i < m; ++i) out = wedge(out, a);
  return out;
}

/// Interior product i_v a of a degree-j multivector with a degree-k form,
/// contracting the multivector's leftmost factor first, so that
/// i_{u ^ v} = i_v . i_u. For j = k this is the full pairing.
inline AltForm interior(const MultiVector& v, const AltForm& a) {
  if (v.dim() != a.dim()) throw std::invalid_argument("contraction on different spaces");
  if (v.degree() > a.degree()) throw std::invalid_argument("contraction degree exceeds form degree");
  const int d = a.dim();
  const int out_degree = a.degree() - v.degree();
  AltForm out(d, out_degree);
  std::vector<int> s(out_degree), merged;
  forEachSubset(d, v.degree(), [&](std::span<const int> t) {
    const double vt = v.coefficient(t);
    if (vt == 0.0) return;
    const std::int64_t ns = binomial(d, out_degree);
    for (std::int64_t rs = 0; rs < ns; ++rs) {
      subsetUnrank(rs, d, out_degree, s);
      const int sign = mergeDisjoint(t, s, merged);
      if (sign == 0) continue;
      out[rs] += sign * vt * a.coefficient(merged);
    }
  });
  return out;
}

/// Contraction of a degree-j form into a degree-k multivector, the mirror of
/// interior(). Used to turn hamiltonian triples of 1-forms into vector fields.
inline MultiVector contract(const AltForm& rho, const MultiVector& v) {
  if (rho.dim() != v.dim()) throw std::invalid_argument("contraction on different spaces");
  if (rho.degree() > v.degree()) throw std::invalid_argument("contraction degree exceeds multivector degree");
  const int d = v.dim();
  const int out_degree = v.degree() - rho.degree();
  MultiVector out(d, out_degree);
  std::vector<int> s(out_degree), merged;
  forEachSubset(d, rho.degree(), [&](std::span<const int> t) {
    const double rt = rho.coefficient(t);
    if (rt == 0.0) return;
    const std::int64_t ns = binomial(d, out_degree);
    for (std::int64_t rs = 0; rs < ns; ++rs) {
      subsetUnrank(rs, d, out_degree, s);
      const int sign = mergeDisjoint(t, s, merged);
      if (sign == 0) continue;
      out[rs] += sign * rt * v.coefficient(merged);
    }
  });
  return out;
}

/// Full pairing of a form with a multivector of the same degree.
inline double pairing(const AltForm& a, const MultiVector& v) {
  if (a.dim() != v.dim() || a.degree() != v.degree())
    throw std::invalid_argument("pairing requires matching shape");
  return a.coeffs().dot(v.coeffs());
}

/// Value of a degree-k form on k vectors: sum_S a[S] det(vectors restricted
/// to the rows of S).
inline double evaluate(const AltForm& a, std::span<const Eigen::VectorXd> vectors) {
  const int k = a.degree();
  if (static_cast<int>(vectors.size()) != k)
    throw std::invalid_argument("evaluate expects one vector per degree");
  for (const auto& v : vectors)
    if (static_cast<int>(v.size()) != a.dim()) throw std::invalid_argument("vector dimension mismatch");
  double total = 0.0;
  Eigen::MatrixXd minor(k, k);
  forEachSubset(a.dim(), k, [&](std::span<const int> s) {
    const double c = a.coefficient(s);
    if (c == 0.0) return;
    for (int col = 0; col < k; ++col)
      for (int row = 0; row < k; ++row) minor(row, col) = vectors[row][s[col]];
    total += c * minor.determinant();
  });
  return total;
}

/// Matrix of the map v -> i_v a over basis vectors, for a degree-4 form:
/// rows are basis directions, columns enumerate sorted 3-subsets. The form is
/// non-degenerate iff this matrix has full row rank.
inline Eigen::MatrixXd kernelMatrix(const AltForm& a) {
  if (a.degree() != 4) throw std::invalid_argument("kernelMatrix expects a 4-form");
  const int d = a.dim();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, binomial(d, 3));
  std::vector<int> merged;
  forEachSubset(d, 3, [&](std::span<const int> s3) {
    const std::int64_t col = subsetRank(s3, d);
    for (int v = 0; v < d; ++v) {
      const int one[1] = {v};
      const int sign = mergeDisjoint(std::span<const int>(one, 1), s3, merged);
      if (sign == 0) continue;
      m(v, col) = sign * a.coefficient(merged);
    }
  });
  return m;
}

inline double smallestSingularValue(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues().size() == 0 ? 0.0 : svd.singularValues().minCoeff();
}

/// Structure constants of a Lie algebra over a chosen basis:
/// [X_i, X_j] = sum_k c(i, j, k) X_k, with c(i, j, .) = -c(j, i, .).
class BracketTable {
 public:
  explicit BracketTable(std::vector<Eigen::MatrixXd> coefficients)
      : m_c(std::move(coefficients)) {
    const int d = static_cast<int>(m_c.size());
    for (const auto& m : m_c)
      if (m.rows() != d || m.cols() != d) throw std::invalid_argument("bracket table must be d x d x d");
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          if (std::abs(m_c[k](i, j) + m_c[k](j, i)) > 1e-12)
            throw std::invalid_argument("bracket table is not antisymmetric");
  }

  int dim() const { return static_cast<int>(m_c.size()); }
  /// Coefficient of X_k in [X_i, X_j].
  double operator()(int i, int j, int k) const { return m_c[k](i, j); }

 private:
  std::vector<Eigen::MatrixXd> m_c;  // m_c[k](i, j)
};

/// Chevalley-Eilenberg differential of a degree-k cochain given by its
/// coefficients over sorted k-subsets of the basis:
///
///   (d phi)(X_1, ..., X_{k+1}) =
///     1/(k+1) sum_{i<j} (-1)^{i+j+1} phi([X_i, X_j], ..., ^X_i, ..., ^X_j, ...)
///
/// (indices 1-based). Works for any basis size; only degrees k and k+1 are
/// materialized.
inline Eigen::VectorXd ceDifferentialCoeffs(int dim, int degree, const Eigen::VectorXd& coeffs,
                                            const BracketTable& table) {
  if (table.dim() != dim) throw std::invalid_argument("bracket table dimension mismatch");
  if (coeffs.size() != binomial(dim, degree)) throw std::invalid_argument("coefficient count mismatch");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(binomial(dim, degree + 1));
  std::vector<int> rest(degree - 1), inserted(degree);
  std::int64_t out_rank = 0;
  forEachSubset(dim, degree + 1, [&](std::span<const int> s) {
    double total = 0.0;
    for (int a = 0; a < degree + 1; ++a) {
      for (int b = a + 1; b < degree + 1; ++b) {
        // phi([X_{s_a}, X_{s_b}], rest) expanded over the bracket table
        int r = 0;
        for (int t = 0; t < degree + 1; ++t)
          if (t != a && t != b) rest[r++] = s[t];
        double term = 0.0;
        for (int k = 0; k < dim; ++k) {
          const double ck = table(s[a], s[b], k);
          if (ck == 0.0) continue;
          bool repeated = false;
          int pos = 0;
          for (int t = 0; t < degree - 1; ++t) {
            if (rest[t] == k) {
              repeated = true;
              break;
            }
            if (rest[t] < k) ++pos;
          }
          if (repeated) continue;
          // insert k in sorted position; sign moves it to the front
          int w = 0;
          for (int t = 0; t < degree - 1 && rest[t] < k; ++t) inserted[w++] = rest[t];
          inserted[w++] = k;
          for (int t = w - 1; t < degree - 1; ++t) inserted[w++] = rest[t];
          const double phi_val = coeffs[subsetRank(inserted, dim)];
          term += ck * ((pos % 2 == 0) ? phi_val : -phi_val);
        }
        const int sign = ((a + 1) + (b + 1) + 1) % 2 == 0 ? 1 : -1;
        total += sign * term;
      }
    }
    out[out_rank++] = total / (degree + 1);
  });
  return out;
}

/// CE differential of a form living on a Lie algebra basis (dim <= 16).
inline AltForm ceDifferential(const AltForm& phi, const BracketTable& table) {
  AltForm out(phi.dim(), phi.degree() + 1);
  out.coeffs() = ceDifferentialCoeffs(phi.dim(), phi.degree(), phi.coeffs(), table);
  return out;
}

/// The standard 4-form on R^{4m}: the sum of the coordinate volume forms of
/// the m consecutive 4-blocks. Its m-th power is m! times the volume form.
inline AltForm standardFourForm(int m) {
  if (m < 1) throw std::invalid_argument("standardFourForm expects m >= 1");
  AltForm psi(4 * m, 4);
  int block[4];
  for (int i = 0; i < m; ++i) {
    for (int t = 0; t < 4; ++t) block[t] = 4 * i + t;
    psi.setCoefficient(block, 1.0);
  }
  return psi;
}

/// The 4-vector dual to standardFourForm: (1/m) sum of block 4-vectors,
/// normalized so contracting it into the m-th power of the standard form
/// yields the (m-1)-st power.
inline MultiVector standardFourVector(int m) {
  if (m < 1) throw std::invalid_argument("standardFourVector expects m >= 1");
  MultiVector xi(4 * m, 4);
  int block[4];
  for (int i = 0; i < m; ++i) {
    for (int t = 0; t < 4; ++t) block[t] = 4 * i + t;
    xi.setCoefficient(block, 1.0 / m);
  }
  return xi;
}

}  // namespace tetra
