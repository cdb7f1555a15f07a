#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "tetra/quaternion.hpp"

using namespace tetra;

namespace {

double dist(const Quaterniond& a, const Quaterniond& b) { return abs(a - b); }

}  // namespace

TEST_CASE("defining products") {
  CHECK(Quaterniond::i() * Quaterniond::j() == Quaterniond::k());
  CHECK(Quaterniond::j() * Quaterniond::k() == Quaterniond::i());
  CHECK(Quaterniond::k() * Quaterniond::i() == Quaterniond::j());

  const Quaterniond q{0.3, -1.2, 0.7, 2.5};
  CHECK(q * Quaterniond::one() == q);
  CHECK(Quaterniond::one() * q == q);

  // (1 + i)(1 + j) expanded by hand: 1 + j + i + ij = 1 + i + j + k
  const Quaterniond lhs = Quaterniond{1, 1, 0, 0} * Quaterniond{1, 0, 1, 0};
  CHECK(lhs == Quaterniond{1, 1, 1, 1});
}

TEST_CASE("norm and conjugation properties") {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 200; ++t) {
    const Quaterniond a = randomQuaternion(rng), b = randomQuaternion(rng);
    CHECK(std::abs(abs(a * b) - abs(a) * abs(b)) <= 1e-13 * abs(a) * abs(b));
    CHECK(dist(conj(a * b), conj(b) * conj(a)) <= 4 * std::numeric_limits<double>::epsilon() *
                                                      std::max(1.0, abs(a) * abs(b)));
    const Quaterniond n = conj(a) * a;
    CHECK(std::abs(n.w - normSquared(a)) <= 4 * std::numeric_limits<double>::epsilon() *
                                                std::max(1.0, normSquared(a)));
    CHECK(std::abs(n.x) + std::abs(n.y) + std::abs(n.z) <= 1e-15 * std::max(1.0, normSquared(a)));
  }
}

TEST_CASE("polar decomposition") {
  const auto [r, u] = polar(Quaterniond{0, 2, 0, 0});
  CHECK(r == doctest::Approx(2.0));
  CHECK(dist(u.value(), Quaterniond::i()) <= 1e-15);

  // |1 + i + j + k|^2 = 4
  const auto p = polar(Quaterniond{1, 1, 1, 1});
  CHECK(p.radius == doctest::Approx(2.0));
  CHECK(dist(p.unit.value(), Quaterniond{0.5, 0.5, 0.5, 0.5}) <= 1e-15);

  std::mt19937_64 rng(7);
  for (int t = 0; t < 100; ++t) {
    const Quaterniond q = randomQuaternion(rng);
    const auto f = polar(q);
    CHECK(dist(f.radius * f.unit.value(), q) <= 1e-14 * abs(q));
  }

  CHECK_THROWS_AS(polar(Quaterniond{}), std::domain_error);
}

TEST_CASE("exponential and logarithm") {
  const UnitQuaterniond e = exp(ImQuaterniond{std::numbers::pi / 2, 0, 0});
  CHECK(dist(e.value(), Quaterniond::i()) <= 1e-15);
  CHECK(dist(exp(ImQuaterniond{}).value(), Quaterniond::one()) <= 1e-15);

  std::mt19937_64 rng(11);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> radius(0.0, 3.0);
  for (int t = 0; t < 300; ++t) {
    ImQuaterniond v{gauss(rng), gauss(rng), gauss(rng)};
    const double n = abs(v);
    if (n == 0.0) continue;
    v = (radius(rng) / n) * v;
    const ImQuaterniond w = log(exp(v));
    CHECK(std::abs(w.x - v.x) <= 1e-12);
    CHECK(std::abs(w.y - v.y) <= 1e-12);
    CHECK(std::abs(w.z - v.z) <= 1e-12);
  }

  CHECK_THROWS_AS(log(UnitQuaterniond(Quaterniond{-1, 0, 0, 0})), std::domain_error);
}

TEST_CASE("imaginary bracket is twice the cross product") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> gauss;
  for (int t = 0; t < 200; ++t) {
    const ImQuaterniond u{gauss(rng), gauss(rng), gauss(rng)};
    const ImQuaterniond v{gauss(rng), gauss(rng), gauss(rng)};
    const Quaterniond b = u.embed() * v.embed() - v.embed() * u.embed();
    CHECK(std::abs(b.w) <= 1e-15);
    const ImQuaterniond c = cross(u, v);
    CHECK(std::abs(b.x - 2 * c.x) <= 1e-13);
    CHECK(std::abs(b.y - 2 * c.y) <= 1e-13);
    CHECK(std::abs(b.z - 2 * c.z) <= 1e-13);
    const ImQuaterniond lie = bracket(u, v);
    CHECK(std::abs(lie.x - b.x) <= 1e-15);
  }
}

TEST_CASE("hyperspherical chart") {
  const auto origin = hypersphericalAngles(UnitQuaterniond(Quaterniond::one()));
  CHECK(origin.alpha == 0.0);
  CHECK(origin.beta == 0.0);
  CHECK(origin.gamma == 0.0);

  std::mt19937_64 rng(19);
  int accepted = 0;
  while (accepted < 200) {
    const UnitQuaterniond u = randomUnitQuaternion(rng);
    if (std::hypot(u.value().y, u.value().z) < 1e-3) continue;  // off the singular locus
    ++accepted;
    const auto a = hypersphericalAngles(u);
    const UnitQuaterniond back = fromHypersphericalAngles(a.alpha, a.beta, a.gamma);
    CHECK(dist(back.value(), u.value()) <= 1e-10);
  }

  // sin(alpha) sin(beta) = 0 away from the origin
  CHECK_THROWS_AS(hypersphericalAngles(UnitQuaterniond(Quaterniond::i())), std::domain_error);
  CHECK_THROWS_AS(hypersphericalAngles(UnitQuaterniond(Quaterniond{-1, 0, 0, 0})),
                  std::domain_error);
  CHECK_THROWS_AS(hypersphericalAngles(UnitQuaterniond(Quaterniond{0.6, 0.8, 0, 0})),
                  std::domain_error);
}

TEST_CASE("unit sampling") {
  std::mt19937_64 a(123), b(123);
  for (int t = 0; t < 10; ++t)
    CHECK(randomUnitQuaternion(a).value() == randomUnitQuaternion(b).value());

  std::mt19937_64 rng(5);
  double sum_w = 0.0;
  const int n = 100000;
  for (int t = 0; t < n; ++t) {
    const UnitQuaterniond u = randomUnitQuaternion(rng);
    CHECK(std::abs(abs(u.value()) - 1.0) <= 1e-14);
    sum_w += u.value().w;
  }
  // E[w] = 0 with Var(w) = 1/4 on the unit sphere; allow 3 standard errors.
  CHECK(std::abs(sum_w / n) <= 3.0 * 0.5 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("unit construction renormalizes") {
  const UnitQuaterniond u(Quaterniond{3, 4, 0, 0});
  CHECK(std::abs(abs(u.value()) - 1.0) <= 1e-15);
  CHECK_THROWS_AS(UnitQuaterniond(Quaterniond{}), std::domain_error);
}
