#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tetra/qlinalg.hpp"

using namespace tetra;

namespace {

double entrywiseDistance(const QuatMatrixd& a, const QuatMatrixd& b) { return maxAbs(a - b); }

}  // namespace

TEST_CASE("matrix product and adjoint") {
  std::mt19937_64 rng(1);
  const QuatMatrixd a = randomQuatMatrix(3, 3, rng);
  CHECK(entrywiseDistance(QuatMatrixd::identity(3) * a, a) == 0.0);

  QuatMatrixd qi(1, 1), qj(1, 1);
  qi(0, 0) = Quaterniond::i();
  qj(0, 0) = Quaterniond::j();
  CHECK((qi * qj)(0, 0) == Quaterniond::k());

  for (int t = 0; t < 50; ++t) {
    const QuatMatrixd x = randomQuatMatrix(3, 3, rng), y = randomQuatMatrix(3, 3, rng);
    CHECK(entrywiseDistance(adjoint(x * y), adjoint(y) * adjoint(x)) <= 1e-13 * maxAbs(x * y));
    const QuatMatrixd z = randomQuatMatrix(3, 3, rng);
    CHECK(entrywiseDistance((x * y) * z, x * (y * z)) <= 1e-12 * maxAbs(x) * maxAbs(y) * maxAbs(z));
  }

  CHECK_THROWS_AS(randomQuatMatrix(2, 3, rng) * randomQuatMatrix(2, 3, rng),
                  std::invalid_argument);
}

TEST_CASE("complex embedding") {
  QuatMatrixd one(1, 1);
  one(0, 0) = Quaterniond::one();
  const auto chi_one = complexEmbedding(one);
  CHECK((chi_one - Eigen::MatrixXcd::Identity(2, 2)).norm() == 0.0);

  QuatMatrixd qi(1, 1);
  qi(0, 0) = Quaterniond::i();
  const auto chi_i = complexEmbedding(qi);
  CHECK(std::abs(chi_i(0, 0) - std::complex<double>(0, 1)) == 0.0);
  CHECK(std::abs(chi_i(1, 1) - std::complex<double>(0, -1)) == 0.0);
  CHECK(std::abs(chi_i(0, 1)) == 0.0);
  CHECK(std::abs(chi_i(1, 0)) == 0.0);

  std::mt19937_64 rng(2);
  for (int t = 0; t < 50; ++t) {
    const QuatMatrixd a = randomQuatMatrix(2, 2, rng), b = randomQuatMatrix(2, 2, rng);
    const Eigen::MatrixXcd lhs = complexEmbedding(a * b);
    const Eigen::MatrixXcd rhs = complexEmbedding(a) * complexEmbedding(b);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, rhs.cwiseAbs().maxCoeff()));
  }

  CHECK_THROWS_AS(complexEmbedding(randomQuatMatrix(2, 3, rng)), std::invalid_argument);
}

TEST_CASE("determinant of a single quaternion is its modulus") {
  QuatMatrixd m(1, 1);
  m(0, 0) = {1, 2, -2, 4};
  CHECK(dieudonneDet(m) == doctest::Approx(5.0).epsilon(1e-14));  // |q| = sqrt(25)
}

TEST_CASE("block triangular recursion") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 30; ++t) {
    const Quaterniond q1 = randomQuaternion(rng);
    const QuatMatrixd b = randomQuatMatrix(3, 3, rng);
    QuatMatrixd m(4, 4);
    m(0, 0) = q1;
    for (int j = 1; j < 4; ++j) m(0, j) = randomQuaternion(rng);
    for (int i = 1; i < 4; ++i)
      for (int j = 1; j < 4; ++j) m(i, j) = b(i - 1, j - 1);
    const double expected = abs(q1) * dieudonneDet(b);
    CHECK(std::abs(dieudonneDet(m) - expected) <= 1e-12 * expected);
  }
}

TEST_CASE("identity and singular determinants") {
  CHECK(dieudonneDet(QuatMatrixd::identity(4)) == 1.0);

  std::mt19937_64 rng(4);
  QuatMatrixd m = randomQuatMatrix(3, 3, rng);
  for (int j = 0; j < 3; ++j) m(2, j) = m(0, j) + m(1, j);  // dependent row
  CHECK(dieudonneDet(m) == 0.0);

  CHECK_THROWS_AS(dieudonneDet(m, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(dieudonneDet(randomQuatMatrix(2, 3, rng)), std::invalid_argument);
}

TEST_CASE("determinant against the complex-embedding oracle") {
  std::mt19937_64 rng(5);
  for (int n = 1; n <= 5; ++n)
    for (int t = 0; t < 40; ++t) {
      const QuatMatrixd a = randomQuatMatrix(n, n, rng);
      const double d = dieudonneDet(a);
      const double oracle = studyAbsDet(a);
      CHECK(std::abs(d * d - oracle) <= 1e-9 * oracle);
    }
}

TEST_CASE("determinant multiplicativity and invariances") {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 60; ++t) {
    const int n = 2 + static_cast<int>(t % 4);
    const QuatMatrixd a = randomQuatMatrix(n, n, rng), b = randomQuatMatrix(n, n, rng);
    const double da = dieudonneDet(a), db = dieudonneDet(b);
    CHECK(std::abs(dieudonneDet(a * b) - da * db) <= 1e-9 * da * db);

    const UnitaryMatrixd u = randomUnitary(n, rng);
    CHECK(std::abs(dieudonneDet(u.matrix()) - 1.0) <= 1e-9);
    CHECK(std::abs(dieudonneDet(u.matrix() * a) - da) <= 1e-9 * da);

    QuatMatrixd swapped = a;
    for (int c = 0; c < n; ++c) std::swap(swapped(0, c), swapped(n - 1, c));
    CHECK(std::abs(dieudonneDet(swapped) - da) <= 1e-12 * da);
  }
}

TEST_CASE("gram-schmidt orthonormalizes columns") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 40; ++t) {
    const QuatMatrixd a = randomQuatMatrix(4, 2, rng);
    const auto gs = gramSchmidt(a);
    REQUIRE(gs.rank == 2);
    const QuatMatrixd gram = adjoint(gs.q) * gs.q;
    CHECK(entrywiseDistance(gram, QuatMatrixd::identity(2)) <= 1e-11);
  }

  // orthonormal input is returned unchanged
  const QuatMatrixd id = QuatMatrixd::identity(3);
  const auto gs = gramSchmidt(id);
  CHECK(gs.rank == 3);
  CHECK(entrywiseDistance(gs.q, id) <= 1e-12);

  // duplicated column drops the rank by one
  QuatMatrixd dup = randomQuatMatrix(4, 3, rng);
  for (int i = 0; i < 4; ++i) dup(i, 2) = dup(i, 0);
  CHECK(gramSchmidt(dup).rank == 2);
}

TEST_CASE("group and algebra sampling") {
  std::mt19937_64 rng(8);
  for (int n = 1; n <= 3; ++n)
    for (int t = 0; t < 10; ++t) {
      const UnitaryMatrixd u = randomUnitary(n, rng);
      const QuatMatrixd gram = u.matrix() * adjoint(u.matrix());
      CHECK(entrywiseDistance(gram, QuatMatrixd::identity(n)) <= 1e-10);
      CHECK(std::abs(std::sqrt(studyAbsDet(u.matrix())) - 1.0) <= 1e-9);

      const QuatMatrixd w = randomAntiHermitian(n, rng);
      CHECK(maxAbs(w + adjoint(w)) <= 1e-14);
    }
}

TEST_CASE("row selection") {
  std::mt19937_64 rng(9);
  const QuatMatrixd m = randomQuatMatrix(4, 2, rng);
  const int leading[2] = {0, 1};
  const QuatMatrixd top = selectRows(m, leading);
  CHECK(top(0, 0) == m(0, 0));
  CHECK(top(1, 1) == m(1, 1));

  const int second[1] = {1};
  QuatMatrixd col(2, 1);
  col(0, 0) = {1, 0, 0, 0};
  col(1, 0) = {0, 2, 0, 0};
  CHECK(selectRows(col, second)(0, 0) == Quaterniond{0, 2, 0, 0});

  const int bad[1] = {7};
  CHECK_THROWS_AS(selectRows(m, bad), std::invalid_argument);
}

TEST_CASE("hermitian and unitary wrappers validate") {
  std::mt19937_64 rng(10);
  const QuatMatrixd g = randomQuatMatrix(3, 3, rng);
  CHECK_NOTHROW(HermitianMatrixd(0.5 * (g + adjoint(g))));
  CHECK_THROWS_AS(HermitianMatrixd{g}, std::invalid_argument);
  CHECK_THROWS_AS(UnitaryMatrixd{g}, std::invalid_argument);
  CHECK_NOTHROW(UnitaryMatrixd(QuatMatrixd::identity(3)));
}
