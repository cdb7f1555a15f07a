#pragma once

#include <Eigen/Dense>
#include <array>
#include <random>
#include <string>
#include <vector>

#include "tetra/exterior.hpp"
#include "tetra/qlinalg.hpp"
#include "tetra/quat_matrix.hpp"

namespace tetra {

/// Real part of Tr(a b): the invariant pairing on quaternionic hermitian
/// matrices (positive definite there).
double reTraceProduct(const QuatMatrixd& a, const QuatMatrixd& b);

/// Fully antisymmetrized product of four equal-size square matrices,
/// sum over permutations of sign(p) a_{p1} a_{p2} a_{p3} a_{p4}.
/// Maps hermitian quadruples to hermitian matrices.
QuatMatrixd fourCommutator(const std::array<QuatMatrixd, 4>& a);

/// Max entry magnitude of the five-term identity
///   sum_{i<j} (-1)^{i+j} [[a_i, a_j], a_1, ..., ^a_i, ..., ^a_j, ..., a_5],
/// which vanishes identically; the residual measures roundoff.
double jacobi5Residual(const std::array<QuatMatrixd, 5>& a);

/// Value of the orbit 4-form at base point y on four hermitian tangent
/// arguments: Re Tr(y [a_1, a_2, a_3, a_4]).
double orbitFormValue(const HermitianMatrixd& y, const std::array<QuatMatrixd, 4>& a);

/// Standard basis of the Lie algebra sp(n) (antihermitian quaternionic
/// matrices): i, j, k on each diagonal slot; E_ab - E_ba and i, j, k times
/// (E_ab + E_ba) for a < b. Size n(2n+1).
std::vector<QuatMatrixd> spLieBasis(int n);

/// Structure constants of sp(n) over spLieBasis, computed by projecting
/// brackets onto the basis under the Re-trace pairing.
BracketTable spStructureConstants(int n);

/// Orthonormal basis (under the Re-trace pairing) of the tangent space
/// {[W, y] : W in sp(n)} to the conjugation orbit through y.
struct OrbitTangentBasis {
  HermitianMatrixd base;
  std::vector<QuatMatrixd> lieBasis;   // the sp(n) basis used
  std::vector<QuatMatrixd> tangent;    // orthonormal, hermitian
  int dim;
};

OrbitTangentBasis orbitTangentBasis(const HermitianMatrixd& y, double rank_tol = 1e-9);

/// The orbit 4-form in coordinates of an orthonormal tangent basis. Requires
/// orbit dimension >= 4.
AltForm orbitFormAsAltForm(const OrbitTangentBasis& basis);

/// Max coefficient of the Chevalley-Eilenberg differential of the 4-cochain
/// W_1..W_4 -> orbitFormValue(y, [W_1, y], ..., [W_4, y]) over the sp(n)
/// basis. Directions fixing y contribute zero, so the cochain descends to the
/// orbit; a vanishing differential certifies the orbit form is closed.
/// Measured behavior: the residual is zero (to roundoff) exactly when the
/// spectrum of y takes at most two distinct values; with three or more the
/// form is genuinely not closed and the residual is large.
double ceClosednessResidual(const HermitianMatrixd& y);

/// Worst relative mismatch between the form at y on random hermitian
/// quadruples and the form at u y u* on the conjugated arguments, over random
/// unitaries u.
double conjugationInvarianceResidual(const HermitianMatrixd& y, int trials, std::mt19937_64& rng);

/// Real parts of the diagonal (the diagonal of a hermitian matrix is real).
Eigen::VectorXd realDiagonal(const HermitianMatrixd& y);

/// Rank-one hermitian projector [[|a|^2, a conj(b)], [b conj(a), |b|^2]]
/// built from a unit pair; satisfies P^2 = P and Re Tr P = 1.
HermitianMatrixd rankOneProjector(const Quaterniond& a, const Quaterniond& b);

/// Certificate record for one conjugation orbit.
struct OrbitReport {
  std::string spectrum;
  int dim = 0;
  double nondegeneracy_sigma_min = 0.0;
  double ce_residual = 0.0;
  double invariance_discrepancy = 0.0;
  double eq_residual = 0.0;  // five-term identity residual on random tuples
};

/// Runs the full certificate (non-degeneracy, closedness, invariance,
/// five-term identity) for the orbit through a real diagonal matrix.
OrbitReport orbitCertificate(const std::vector<double>& diagonal, int invariance_trials,
                             std::mt19937_64& rng);

/// Hermitian matrix with the given real diagonal.
HermitianMatrixd realDiagonalMatrix(const std::vector<double>& diagonal);

}  // namespace tetra
