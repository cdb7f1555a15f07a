#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "tetra/quaternion.hpp"

namespace tetra {

/// Dense rectangular matrix of quaternions, row-major.
///
/// Convention: H^n is a right module, so matrices act on vectors from the
/// left and scalars multiply vectors on the right. Products preserve factor
/// order entrywise.
template <typename Scalar>
class QuatMatrix {
 public:
  QuatMatrix() : m_rows(0), m_cols(0) {}
  QuatMatrix(int rows, int cols) : m_rows(rows), m_cols(cols), m_entries(rows * cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
  }

  static QuatMatrix identity(int n) {
    QuatMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = Quaternion<Scalar>::one();
    return m;
  }

  int rows() const { return m_rows; }
  int cols() const { return m_cols; }

  Quaternion<Scalar>& operator()(int i, int j) { return m_entries[i * m_cols + j]; }
  const Quaternion<Scalar>& operator()(int i, int j) const { return m_entries[i * m_cols + j]; }

  friend QuatMatrix operator+(const QuatMatrix& a, const QuatMatrix& b) {
    requireSameShape(a, b);
    QuatMatrix c(a.m_rows, a.m_cols);
    for (std::size_t t = 0; t < a.m_entries.size(); ++t) c.m_entries[t] = a.m_entries[t] + b.m_entries[t];
    return c;
  }

  friend QuatMatrix operator-(const QuatMatrix& a, const QuatMatrix& b) {
    requireSameShape(a, b);
    QuatMatrix c(a.m_rows, a.m_cols);
    for (std::size_t t = 0; t < a.m_entries.size(); ++t) c.m_entries[t] = a.m_entries[t] - b.m_entries[t];
    return c;
  }

  friend QuatMatrix operator*(const QuatMatrix& a, const QuatMatrix& b) {
    if (a.m_cols != b.m_rows) throw std::invalid_argument("matrix product dimension mismatch");
    QuatMatrix c(a.m_rows, b.m_cols);
    for (int i = 0; i < a.m_rows; ++i)
      for (int k = 0; k < a.m_cols; ++k) {
        const Quaternion<Scalar>& aik = a(i, k);
        for (int j = 0; j < b.m_cols; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend QuatMatrix operator*(Scalar s, const QuatMatrix& a) {
    QuatMatrix c(a.m_rows, a.m_cols);
    for (std::size_t t = 0; t < a.m_entries.size(); ++t) c.m_entries[t] = s * a.m_entries[t];
    return c;
  }

 private:
  static void requireSameShape(const QuatMatrix& a, const QuatMatrix& b) {
    if (a.m_rows != b.m_rows || a.m_cols != b.m_cols)
      throw std::invalid_argument("matrix shape mismatch");
  }

  int m_rows, m_cols;
  std::vector<Quaternion<Scalar>> m_entries;
};

using QuatMatrixd = QuatMatrix<double>;

/// Transposed quaternionic conjugate.
template <typename Scalar>
QuatMatrix<Scalar> adjoint(const QuatMatrix<Scalar>& a) {
  QuatMatrix<Scalar> b(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) b(j, i) = conj(a(i, j));
  return b;
}

/// Largest entry magnitude.
template <typename Scalar>
Scalar maxAbs(const QuatMatrix<Scalar>& a) {
  Scalar m(0);
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m = std::max(m, abs(a(i, j)));
  return m;
}

/// Rows of m selected by the sorted index set rows_j, order preserved.
template <typename Scalar>
QuatMatrix<Scalar> selectRows(const QuatMatrix<Scalar>& m, std::span<const int> rows_j) {
  QuatMatrix<Scalar> out(static_cast<int>(rows_j.size()), m.cols());
  int r = 0;
  for (int i : rows_j) {
    if (i < 0 || i >= m.rows()) throw std::invalid_argument("row index out of range");
    for (int j = 0; j < m.cols(); ++j) out(r, j) = m(i, j);
    ++r;
  }
  return out;
}

/// Scales row i on the left by factors[i].
template <typename Scalar>
QuatMatrix<Scalar> leftScaleRows(const QuatMatrix<Scalar>& m,
                                 std::span<const Quaternion<Scalar>> factors) {
  if (static_cast<int>(factors.size()) != m.rows())
    throw std::invalid_argument("one factor per row required");
  QuatMatrix<Scalar> out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = factors[i] * m(i, j);
  return out;
}

/// Square matrix with A = A* (entrywise within tol, scaled by magnitude).
template <typename Scalar>
class HermitianMatrix {
 public:
  explicit HermitianMatrix(QuatMatrix<Scalar> a, Scalar tol = Scalar(1e-12)) : m_inner(std::move(a)) {
    if (m_inner.rows() != m_inner.cols()) throw std::invalid_argument("hermitian matrix must be square");
    const Scalar scale = std::max(Scalar(1), maxAbs(m_inner));
    for (int i = 0; i < m_inner.rows(); ++i)
      for (int j = 0; j < m_inner.cols(); ++j)
        if (abs(m_inner(i, j) - conj(m_inner(j, i))) > tol * scale)
          throw std::invalid_argument("matrix is not hermitian");
  }

  const QuatMatrix<Scalar>& matrix() const { return m_inner; }
  int size() const { return m_inner.rows(); }

 private:
  QuatMatrix<Scalar> m_inner;
};

using HermitianMatrixd = HermitianMatrix<double>;

/// Element of the quaternionic unitary group: U U* = I within tol.
template <typename Scalar>
class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(QuatMatrix<Scalar> u, Scalar tol = Scalar(1e-10)) : m_inner(std::move(u)) {
    if (m_inner.rows() != m_inner.cols()) throw std::invalid_argument("unitary matrix must be square");
    const QuatMatrix<Scalar> g = m_inner * adjoint(m_inner);
    const QuatMatrix<Scalar> id = QuatMatrix<Scalar>::identity(m_inner.rows());
    for (int i = 0; i < g.rows(); ++i)
      for (int j = 0; j < g.cols(); ++j)
        if (abs(g(i, j) - id(i, j)) > tol) throw std::invalid_argument("matrix is not unitary");
  }

  const QuatMatrix<Scalar>& matrix() const { return m_inner; }
  int size() const { return m_inner.rows(); }

 private:
  QuatMatrix<Scalar> m_inner;
};

using UnitaryMatrixd = UnitaryMatrix<double>;

}  // namespace tetra
