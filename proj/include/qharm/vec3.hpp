#pragma once

#include <array>
#include <cmath>

#include "qharm/rational.hpp"

namespace qharm {

// 3-vector in a fixed right-handed orthonormal frame e1,e2,e3.
template <typename T>
struct Vec3T {
  T x{}, y{}, z{};

  Vec3T() = default;
  Vec3T(T a, T b, T c) : x(std::move(a)), y(std::move(b)), z(std::move(c)) {}

  T& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
  const T& operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

  friend Vec3T operator+(const Vec3T& a, const Vec3T& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend Vec3T operator-(const Vec3T& a, const Vec3T& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend Vec3T operator-(const Vec3T& a) { return {-a.x, -a.y, -a.z}; }
  friend Vec3T operator*(const T& s, const Vec3T& a) {
    return {s * a.x, s * a.y, s * a.z};
  }
  friend Vec3T operator*(const Vec3T& a, const T& s) { return s * a; }
  friend bool operator==(const Vec3T& a, const Vec3T& b) {
    return a.x == b.x && a.y == b.y && a.z == b.z;
  }
};

template <typename T>
T dot(const Vec3T<T>& a, const Vec3T<T>& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

// Right-handed cross product.
template <typename T>
Vec3T<T> cross(const Vec3T<T>& a, const Vec3T<T>& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

template <typename T>
T norm_sq(const Vec3T<T>& a) {
  return dot(a, a);
}

using Vec3 = Vec3T<double>;
using Vec3Q = Vec3T<Rational>;

inline double norm(const Vec3& a) { return std::sqrt(norm_sq(a)); }

inline Vec3 normalized(const Vec3& a) {
  double n = norm(a);
  return {a.x / n, a.y / n, a.z / n};
}

inline Vec3 to_vec3(const Vec3Q& a) {
  return {to_double(a.x), to_double(a.y), to_double(a.z)};
}

inline Vec3Q to_vec3q(const Vec3& a) {
  return {Rational(a.x), Rational(a.y), Rational(a.z)};
}

}  // namespace qharm
