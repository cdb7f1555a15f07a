#pragma once

#include <Eigen/Dense>
#include <complex>
#include <random>

#include "tetra/quat_matrix.hpp"

namespace tetra {

/// Embedding of an n x n quaternionic matrix as a 2n x 2n complex matrix via
/// q = z1 + z2 j, z1 = w + x i, z2 = y + z i:
///
///   A = Z1 + Z2 j  ->  [ Z1          Z2        ]
///                      [ -conj(Z2)   conj(Z1)  ]
///
/// This is an algebra homomorphism, which makes |det| of the image an
/// independent oracle for the Dieudonne determinant (D(A)^2 = |det|).
template <typename Scalar>
Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic> complexEmbedding(
    const QuatMatrix<Scalar>& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("complex embedding requires a square matrix");
  const int n = a.rows();
  Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic> m(2 * n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Quaternion<Scalar>& q = a(i, j);
      const std::complex<Scalar> z1(q.w, q.x), z2(q.y, q.z);
      m(i, j) = z1;
      m(i, j + n) = z2;
      m(i + n, j) = -std::conj(z2);
      m(i + n, j + n) = std::conj(z1);
    }
  return m;
}

/// |det(complexEmbedding(a))|, computed by complex LU with partial pivoting.
template <typename Scalar>
Scalar studyAbsDet(const QuatMatrix<Scalar>& a) {
  const auto m = complexEmbedding(a);
  return std::abs(Eigen::PartialPivLU<std::decay_t<decltype(m)>>(m).determinant());
}

/// Dieudonne determinant on GL(n, H), extended by 0 to singular matrices.
///
/// Gaussian elimination with quaternionic row operations and partial pivoting
/// (largest entry magnitude in the column, ties to the lowest row). Adding a
/// left multiple of one row to another and swapping rows leave the value
/// unchanged, so the result is the product of pivot magnitudes. A column
/// whose remaining entries all fall below tol * maxAbs(a) makes the matrix
/// singular to tolerance and the value is 0.
template <typename Scalar>
Scalar dieudonneDet(QuatMatrix<Scalar> a, Scalar tol = Scalar(1e-10)) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant requires a square matrix");
  if (tol < Scalar(0)) throw std::invalid_argument("tolerance must be nonnegative");
  const int n = a.rows();
  if (n == 0) return Scalar(1);
  const Scalar threshold = tol * maxAbs(a);
  Scalar det(1);
  for (int k = 0; k < n; ++k) {
    int pivot_row = k;
    Scalar pivot_mag = abs(a(k, k));
    for (int r = k + 1; r < n; ++r) {
      const Scalar m = abs(a(r, k));
      if (m > pivot_mag) {
        pivot_mag = m;
        pivot_row = r;
      }
    }
    if (pivot_mag < threshold || pivot_mag == Scalar(0)) return Scalar(0);
    if (pivot_row != k)
      for (int c = k; c < n; ++c) std::swap(a(k, c), a(pivot_row, c));
    det *= pivot_mag;
    const Quaternion<Scalar> pivot_inv = inverse(a(k, k));
    for (int r = k + 1; r < n; ++r) {
      const Quaternion<Scalar> factor = a(r, k) * pivot_inv;
      for (int c = k; c < n; ++c) a(r, c) -= factor * a(k, c);
    }
  }
  return det;
}

template <typename Scalar>
struct GramSchmidtResult {
  QuatMatrix<Scalar> q;  // rank orthonormal columns
  int rank;
};

/// Gram-Schmidt on the columns of a under the hermitian pairing
/// <u, v> = sum_i conj(u_i) v_i (right-linear in v). Columns whose residual
/// after projection falls below tol * (largest column norm) are dropped.
template <typename Scalar>
GramSchmidtResult<Scalar> gramSchmidt(const QuatMatrix<Scalar>& a, Scalar tol = Scalar(1e-12)) {
  const int n = a.rows(), k = a.cols();
  std::vector<std::vector<Quaternion<Scalar>>> basis;
  Scalar scale(0);
  for (int c = 0; c < k; ++c) {
    Scalar s(0);
    for (int i = 0; i < n; ++i) s += normSquared(a(i, c));
    scale = std::max(scale, std::sqrt(s));
  }
  for (int c = 0; c < k; ++c) {
    std::vector<Quaternion<Scalar>> v(n);
    for (int i = 0; i < n; ++i) v[i] = a(i, c);
    // two GS passes for orthogonality to working precision
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& e : basis) {
        Quaternion<Scalar> h{};  // <e, v>
        for (int i = 0; i < n; ++i) h += conj(e[i]) * v[i];
        for (int i = 0; i < n; ++i) v[i] -= e[i] * h;
      }
    }
    Scalar nrm(0);
    for (int i = 0; i < n; ++i) nrm += normSquared(v[i]);
    nrm = std::sqrt(nrm);
    if (nrm > tol * scale && nrm > Scalar(0)) {
      for (int i = 0; i < n; ++i) v[i] = v[i] / nrm;
      basis.push_back(std::move(v));
    }
  }
  QuatMatrix<Scalar> q(n, static_cast<int>(basis.size()));
  for (int c = 0; c < q.cols(); ++c)
    for (int i = 0; i < n; ++i) q(i, c) = basis[c][i];
  return {std::move(q), static_cast<int>(basis.size())};
}

template <typename Scalar = double, typename Rng>
QuatMatrix<Scalar> randomQuatMatrix(int rows, int cols, Rng& rng) {
  QuatMatrix<Scalar> m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = randomQuaternion<Scalar>(rng);
  return m;
}

/// Haar-distributed element of the quaternionic unitary group, obtained by
/// orthonormalizing a gaussian matrix (unitary invariance of the gaussian).
template <typename Scalar = double, typename Rng>
UnitaryMatrix<Scalar> randomUnitary(int n, Rng& rng) {
  while (true) {
    const auto gs = gramSchmidt(randomQuatMatrix<Scalar>(n, n, rng));
    if (gs.rank == n) return UnitaryMatrix<Scalar>(gs.q);
  }
}

/// Gaussian element of the Lie algebra sp(n): W + W* = 0.
template <typename Scalar = double, typename Rng>
QuatMatrix<Scalar> randomAntiHermitian(int n, Rng& rng) {
  const QuatMatrix<Scalar> g = randomQuatMatrix<Scalar>(n, n, rng);
  return Scalar(0.5) * (g - adjoint(g));
}

template <typename Scalar = double, typename Rng>
HermitianMatrix<Scalar> randomHermitian(int n, Rng& rng) {
  const QuatMatrix<Scalar> g = randomQuatMatrix<Scalar>(n, n, rng);
  return HermitianMatrix<Scalar>(Scalar(0.5) * (g + adjoint(g)));
}

}  // namespace tetra
