#pragma once

#include <cmath>
#include <random>
#include <stdexcept>

namespace tetra {

/// A quaternion q = w + x i + y j + z k over a real scalar type.
///
/// Values are plain aggregates; all arithmetic is by value. The product is
/// the Hamilton product (non-commutative).
template <typename Scalar>
struct Quaternion {
  Scalar w{0}, x{0}, y{0}, z{0};

  constexpr Quaternion() = default;
  constexpr Quaternion(Scalar w_, Scalar x_, Scalar y_, Scalar z_) : w(w_), x(x_), y(y_), z(z_) {}

  static constexpr Quaternion one() { return {Scalar(1), Scalar(0), Scalar(0), Scalar(0)}; }
  static constexpr Quaternion i() { return {Scalar(0), Scalar(1), Scalar(0), Scalar(0)}; }
  static constexpr Quaternion j() { return {Scalar(0), Scalar(0), Scalar(1), Scalar(0)}; }
  static constexpr Quaternion k() { return {Scalar(0), Scalar(0), Scalar(0), Scalar(1)}; }

  friend constexpr Quaternion operator+(const Quaternion& a, const Quaternion& b) {
    return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend constexpr Quaternion operator-(const Quaternion& a, const Quaternion& b) {
    return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend constexpr Quaternion operator-(const Quaternion& a) { return {-a.w, -a.x, -a.y, -a.z}; }

  friend constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
  }

  friend constexpr Quaternion operator*(Scalar s, const Quaternion& q) {
    return {s * q.w, s * q.x, s * q.y, s * q.z};
  }
  friend constexpr Quaternion operator*(const Quaternion& q, Scalar s) { return s * q; }
  friend constexpr Quaternion operator/(const Quaternion& q, Scalar s) {
    return {q.w / s, q.x / s, q.y / s, q.z / s};
  }

  Quaternion& operator+=(const Quaternion& o) { return *this = *this + o; }
  Quaternion& operator-=(const Quaternion& o) { return *this = *this - o; }
  Quaternion& operator*=(const Quaternion& o) { return *this = *this * o; }

  friend constexpr bool operator==(const Quaternion& a, const Quaternion& b) {
    return a.w == b.w && a.x == b.x && a.y == b.y && a.z == b.z;
  }
};

using Quaterniond = Quaternion<double>;

template <typename Scalar>
constexpr Quaternion<Scalar> conj(const Quaternion<Scalar>& q) {
  return {q.w, -q.x, -q.y, -q.z};
}

template <typename Scalar>
constexpr Scalar normSquared(const Quaternion<Scalar>& q) {
  return q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z;
}

template <typename Scalar>
Scalar abs(const Quaternion<Scalar>& q) {
  return std::sqrt(normSquared(q));
}

/// Multiplicative inverse; throws std::domain_error at 0.
template <typename Scalar>
Quaternion<Scalar> inverse(const Quaternion<Scalar>& q) {
  const Scalar n2 = normSquared(q);
  if (n2 == Scalar(0)) throw std::domain_error("quaternion inverse undefined at 0");
  return conj(q) / n2;
}

/// A quaternion of unit norm. The constructor renormalizes its argument
/// (branch-free for sampling loops); only exact zero is rejected.
template <typename Scalar>
class UnitQuaternion {
 public:
  explicit UnitQuaternion(const Quaternion<Scalar>& q) : m_value(q) {
    const Scalar n = tetra::abs(q);
    if (n == Scalar(0)) throw std::domain_error("cannot normalize zero quaternion");
    m_value = q / n;
  }

  const Quaternion<Scalar>& value() const { return m_value; }

  friend UnitQuaternion operator*(const UnitQuaternion& a, const UnitQuaternion& b) {
    return UnitQuaternion(a.m_value * b.m_value);
  }

 private:
  Quaternion<Scalar> m_value;
};

using UnitQuaterniond = UnitQuaternion<double>;

/// A purely imaginary quaternion x i + y j + z k, i.e. an element of the Lie
/// algebra of the unit group. Under the identification with R^3 the algebra
/// bracket uv - vu equals twice the cross product.
template <typename Scalar>
struct ImQuaternion {
  Scalar x{0}, y{0}, z{0};

  constexpr Quaternion<Scalar> embed() const { return {Scalar(0), x, y, z}; }

  friend constexpr ImQuaternion operator+(const ImQuaternion& a, const ImQuaternion& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend constexpr ImQuaternion operator*(Scalar s, const ImQuaternion& v) {
    return {s * v.x, s * v.y, s * v.z};
  }
};

using ImQuaterniond = ImQuaternion<double>;

template <typename Scalar>
Scalar abs(const ImQuaternion<Scalar>& v) {
  return std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z);
}

/// Lie bracket uv - vu, returned as an imaginary quaternion.
template <typename Scalar>
ImQuaternion<Scalar> bracket(const ImQuaternion<Scalar>& u, const ImQuaternion<Scalar>& v) {
  const Quaternion<Scalar> p = u.embed() * v.embed() - v.embed() * u.embed();
  return {p.x, p.y, p.z};
}

template <typename Scalar>
ImQuaternion<Scalar> cross(const ImQuaternion<Scalar>& u, const ImQuaternion<Scalar>& v) {
  return {u.y * v.z - u.z * v.y, u.z * v.x - u.x * v.z, u.x * v.y - u.y * v.x};
}

template <typename Scalar>
struct PolarForm {
  Scalar radius;
  UnitQuaternion<Scalar> unit;
};

/// Polar decomposition q = radius * unit of a nonzero quaternion.
template <typename Scalar>
PolarForm<Scalar> polar(const Quaternion<Scalar>& q) {
  const Scalar r = tetra::abs(q);
  if (r == Scalar(0)) throw std::domain_error("polar undefined at 0");
  return {r, UnitQuaternion<Scalar>(q)};
}

/// exp(v) = cos|v| + (v/|v|) sin|v| for imaginary v.
template <typename Scalar>
UnitQuaternion<Scalar> exp(const ImQuaternion<Scalar>& v) {
  const Scalar t = tetra::abs(v);
  // sin(t)/t, stable through t = 0
  const Scalar s = t < Scalar(1e-8) ? Scalar(1) - t * t / Scalar(6) : std::sin(t) / t;
  return UnitQuaternion<Scalar>({std::cos(t), s * v.x, s * v.y, s * v.z});
}

/// Inverse of exp on the unit group minus the antipode. Throws at u = -1.
template <typename Scalar>
ImQuaternion<Scalar> log(const UnitQuaternion<Scalar>& u) {
  const Quaternion<Scalar>& q = u.value();
  const Scalar s = std::sqrt(q.x * q.x + q.y * q.y + q.z * q.z);
  if (s < Scalar(1e-12) && q.w < Scalar(0)) throw std::domain_error("cut locus");
  const Scalar theta = std::atan2(s, q.w);
  const Scalar f = s < Scalar(1e-8) ? Scalar(1) / q.w : theta / s;
  return {f * q.x, f * q.y, f * q.z};
}

struct HypersphericalAngles {
  double alpha, beta, gamma;
};

/// Chart on the unit quaternions:
///   w = cos a, x = sin a cos b, y = sin a sin b cos g, z = sin a sin b sin g.
/// Undefined where sin a sin b = 0 except at the origin u = 1, which maps to
/// (0, 0, 0) by convention. Throws std::domain_error on the singular locus.
template <typename Scalar>
HypersphericalAngles hypersphericalAngles(const UnitQuaternion<Scalar>& u,
                                          Scalar singular_tol = Scalar(1e-9)) {
  const Quaternion<Scalar>& q = u.value();
  const Scalar s_im = std::sqrt(q.x * q.x + q.y * q.y + q.z * q.z);
  if (s_im <= Scalar(1e-12) && q.w > Scalar(0)) return {0.0, 0.0, 0.0};
  const Scalar s_yz = std::hypot(q.y, q.z);
  if (s_yz <= singular_tol) throw std::domain_error("chart singular");
  const Scalar alpha = std::atan2(s_im, q.w);
  const Scalar beta = std::atan2(s_yz, q.x);
  const Scalar gamma = std::atan2(q.z, q.y);
  return {alpha, beta, gamma};
}

template <typename Scalar>
UnitQuaternion<Scalar> fromHypersphericalAngles(Scalar alpha, Scalar beta, Scalar gamma) {
  const Scalar sa = std::sin(alpha), sb = std::sin(beta);
  return UnitQuaternion<Scalar>({std::cos(alpha), sa * std::cos(beta), sa * sb * std::cos(gamma),
                                 sa * sb * std::sin(gamma)});
}

/// Haar-distributed unit quaternion: a normalized 4-dimensional standard
/// gaussian sample. Deterministic for a fixed generator state.
template <typename Scalar = double, typename Rng>
UnitQuaternion<Scalar> randomUnitQuaternion(Rng& rng) {
  std::normal_distribution<Scalar> gauss(Scalar(0), Scalar(1));
  while (true) {
    const Quaternion<Scalar> q{gauss(rng), gauss(rng), gauss(rng), gauss(rng)};
    if (normSquared(q) > Scalar(1e-12)) return UnitQuaternion<Scalar>(q);
  }
}

template <typename Scalar = double, typename Rng>
Quaternion<Scalar> randomQuaternion(Rng& rng) {
  std::normal_distribution<Scalar> gauss(Scalar(0), Scalar(1));
  return {gauss(rng), gauss(rng), gauss(rng), gauss(rng)};
}

}  // namespace tetra
