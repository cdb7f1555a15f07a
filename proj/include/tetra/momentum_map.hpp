#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "tetra/exterior.hpp"
#include "tetra/qlinalg.hpp"
#include "tetra/quat_matrix.hpp"

namespace tetra {

using ScalarField = std::function<double(const Eigen::VectorXd&)>;
using VectorField = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
using FormField = std::function<AltForm(const Eigen::VectorXd&)>;

/// Scale relating the contraction of the standard 4-form by the unit-action
/// trivector to d(|q|^4), under the normalization sending the basis
/// trivector i ^ j ^ k to 1. Fixed once by calibration and pinned by tests.
inline constexpr double kStandardMomentScale = -0.25;

/// Componentwise fourth powers of the moduli, (|q_1|^4, ..., |q_n|^4).
/// Invariant under left multiplication of each component by units.
Eigen::VectorXd standardMomentum(std::span<const Quaterniond> q);

/// |q_1|^4 + |q_2|^4, invariant under the diagonal unit action.
double diagonalMomentum(const Quaterniond& q1, const Quaterniond& q2);

/// Identification of points of R^{4m} with m-tuples of quaternions,
/// x_{4i}..x_{4i+3} <-> w, x, y, z of component i.
std::vector<Quaterniond> toQuaternions(const Eigen::VectorXd& x);
Eigen::VectorXd fromQuaternions(std::span<const Quaterniond> q);

/// A quaternionic p-plane in H^n (right-module span of the columns of an
/// n x p matrix of full column rank).
class GrassmannPoint {
 public:
  explicit GrassmannPoint(QuatMatrixd m);

  const QuatMatrixd& matrix() const { return m_matrix; }
  int n() const { return m_matrix.rows(); }
  int p() const { return m_matrix.cols(); }

 private:
  QuatMatrixd m_matrix;
};

/// Plane coordinates built from fourth powers of minor determinants:
///   x_i = sum_{J : i in J} D^4(M(J)) / sum_J D^4(M(J)),
/// J running over the p-subsets of rows. The image lies in the hypersimplex
/// {0 <= x_i <= 1, sum x_i = p}; the value is invariant under right basis
/// change and under left multiplication of rows by unit quaternions.
Eigen::VectorXd grassmannMomentum(const GrassmannPoint& plane);

/// Left action of a tuple of unit quaternions on the rows of the plane
/// matrix (the componentwise unit-group action on H^n).
GrassmannPoint rowAction(std::span<const UnitQuaterniond> a, const GrassmannPoint& plane);

/// Right basis change by an invertible p x p matrix.
GrassmannPoint basisChange(const GrassmannPoint& plane, const QuatMatrixd& g,
                           double singular_tol = 1e-12);

/// The hypersimplex {x in R^n : 0 <= x_i <= 1, sum x_i = p}.
struct Hypersimplex {
  int n;
  int p;

  Hypersimplex(int n_, int p_);
  bool contains(const Eigen::VectorXd& x, double tol = 1e-9) const;
};

/// Membership of x in the convex hull of the given vertices, decided by a
/// small dense feasibility solve (least squares over every vertex support,
/// convex weights >= 0 summing to 1).
bool convexHullContains(const std::vector<Eigen::VectorXd>& vertices, const Eigen::VectorXd& x,
                        double tol = 1e-8);

struct ScanSample {
  int id;
  std::string kind;  // "spheroid" (unit-row action) or "closure" (row shrink)
  Eigen::VectorXd image;
  bool in_hypersimplex;
  bool in_hull;
};

struct ScanReport {
  std::vector<ScanSample> samples;
  std::vector<Eigen::VectorXd> hull_vertices;  // indicators of nonvanishing minors
  int containment_failures = 0;
};

/// Samples the orbit of the plane under the componentwise unit action plus
/// random row-shrink degenerations probing the orbit closure, and records for
/// every image its membership in the hypersimplex and in the convex hull of
/// the nonvanishing-minor vertices.
ScanReport orbitScan(const GrassmannPoint& plane, int samples, std::mt19937_64& rng,
                     double tol = 1e-9);

std::string scanReportCsv(const ScanReport& report, int n);

/// Central-difference gradient.
Eigen::VectorXd gradientCentral(const ScalarField& f, const Eigen::VectorXd& x, double h);

/// Quaternary bracket {f1, f2, f3, f4}(x) on R^{4m}: the pairing of the
/// standard 4-vector with df1 ^ df2 ^ df3 ^ df4, gradients taken by central
/// differences. Equals (1/m) sum_i det of the i-th 4x4 Jacobian block.
double quaternaryBracket(const std::array<ScalarField, 4>& f, const Eigen::VectorXd& x,
                         double h = 1e-5);

struct Trajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;
};

/// Integrates the hamiltonian vector field of the triple (f1, f2, f3), the
/// contraction of df1 ^ df2 ^ df3 into the standard 4-vector, with classical
/// fourth-order Runge-Kutta. The three hamiltonians are conserved along the
/// flow. Throws on non-finite states.
Trajectory nambuFlow(const std::array<ScalarField, 3>& f, const Eigen::VectorXd& start, double dt,
                     int steps, double h = 1e-5);

/// Vector field of the infinitesimal left multiplication by an imaginary
/// unit u on quaternion component `block` of R^{4m} (zero elsewhere).
VectorField blockLeftMultField(int block, int m, const Quaterniond& u);

/// Same action applied to every component at once (the diagonal action).
VectorField diagonalLeftMultField(int m, const Quaterniond& u);

/// Worst absolute mismatch, over the sample points, between the 1-form
/// obtained by contracting the generator trivector g1 ^ g2 ^ g3 into psi and
/// scale times the central-difference differential of mu.
double momentumIdentityResidual(const ScalarField& mu, const std::array<VectorField, 3>& generators,
                                const FormField& psi, std::span<const Eigen::VectorXd> points,
                                double h = 1e-5, double scale = 1.0);

/// Worst value, over sample points on a joint level set of the given
/// functions, of the generator contractions of psi evaluated on triples of
/// level-set tangent vectors (the tangent space is the numerical kernel of
/// the finite-difference Jacobian). Zero certifies horizontality.
double horizontalityResidual(const FormField& psi, const std::vector<ScalarField>& level_fns,
                             const std::vector<VectorField>& generators,
                             std::span<const Eigen::VectorXd> points, double h = 1e-5);

}  // namespace tetra
