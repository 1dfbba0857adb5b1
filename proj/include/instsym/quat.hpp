#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <ostream>

namespace instsym {

using cplx = std::complex<double>;

// w + xi + yj + zk
struct Quaternion {
  double w = 0, x = 0, y = 0, z = 0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_) : w(w_) {}
  constexpr Quaternion(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}

  // q = alpha + beta j with alpha = w + xi, beta = y + zi
  static Quaternion from_pair(cplx alpha, cplx beta) {
    return {alpha.real(), alpha.imag(), beta.real(), beta.imag()};
  }
  cplx alpha() const { return {w, x}; }
  cplx beta() const { return {y, z}; }

  constexpr Quaternion conj() const { return {w, -x, -y, -z}; }
  constexpr double norm2() const { return w * w + x * x + y * y + z * z; }
  double norm() const { return std::sqrt(norm2()); }
  constexpr Quaternion real_part() const { return {w, 0, 0, 0}; }
  constexpr Quaternion vec_part() const { return {0, x, y, z}; }
  Quaternion inverse() const {
    double n = norm2();
    return {w / n, -x / n, -y / n, -z / n};
  }

  constexpr Quaternion& operator+=(const Quaternion& o) {
    w += o.w; x += o.x; y += o.y; z += o.z;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& o) {
    w -= o.w; x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }
  constexpr Quaternion& operator*=(double s) {
    w *= s; x *= s; y *= s; z *= s;
    return *this;
  }
};

constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
constexpr Quaternion operator-(const Quaternion& a) { return {-a.w, -a.x, -a.y, -a.z}; }
constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }
constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }
constexpr Quaternion operator/(Quaternion a, double s) { return a *= 1.0 / s; }

constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

inline bool operator==(const Quaternion& a, const Quaternion& b) {
  return a.w == b.w && a.x == b.x && a.y == b.y && a.z == b.z;
}

inline double dist(const Quaternion& a, const Quaternion& b) { return (a - b).norm(); }

namespace qunit {
inline constexpr Quaternion one{1, 0, 0, 0};
inline constexpr Quaternion i{0, 1, 0, 0};
inline constexpr Quaternion j{0, 0, 1, 0};
inline constexpr Quaternion k{0, 0, 0, 1};
}  // namespace qunit

// exp of a quaternion; pure imaginary input gives a unit quaternion
inline Quaternion qexp(const Quaternion& q) {
  double v = std::sqrt(q.x * q.x + q.y * q.y + q.z * q.z);
  double e = std::exp(q.w);
  if (v < 1e-300) return {e, 0, 0, 0};
  double s = e * std::sin(v) / v;
  return {e * std::cos(v), s * q.x, s * q.y, s * q.z};
}

inline std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
  return os << "[" << q.w << "," << q.x << "," << q.y << "," << q.z << "]";
}

}  // namespace instsym
