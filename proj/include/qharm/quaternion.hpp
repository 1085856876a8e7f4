#pragma once

#include <cmath>

#include "qharm/vec3.hpp"

namespace qharm {

// Geometric quaternion: a scalar paired with a 3-vector. The identification
// {re, A e1 + B e2 + C e3} <-> re + Ai + Bj + Ck is fixed once and for all.
// Two scalar variants are used: double for numerics, Rational for exact checks.
template <typename T>
struct QuaternionT {
  T re{};
  Vec3T<T> im{};

  QuaternionT() = default;
  QuaternionT(T r, Vec3T<T> v) : re(std::move(r)), im(std::move(v)) {}

  friend QuaternionT operator+(const QuaternionT& p, const QuaternionT& q) {
    return {p.re + q.re, p.im + q.im};
  }
  friend QuaternionT operator-(const QuaternionT& p, const QuaternionT& q) {
    return {p.re - q.re, p.im - q.im};
  }
  friend QuaternionT operator*(const T& s, const QuaternionT& q) {
    return {s * q.re, s * q.im};
  }
  friend bool operator==(const QuaternionT& p, const QuaternionT& q) {
    return p.re == q.re && p.im == q.im;
  }
};

using Quaternion = QuaternionT<double>;
using QuaternionQ = QuaternionT<Rational>;

// pq = {re_p re_q - im_p . im_q, re_p im_q + re_q im_p + im_p x im_q}.
template <typename T>
QuaternionT<T> qmul(const QuaternionT<T>& p, const QuaternionT<T>& q) {
  return {p.re * q.re - dot(p.im, q.im),
          p.re * q.im + q.re * p.im + cross(p.im, q.im)};
}

template <typename T>
QuaternionT<T> conj(const QuaternionT<T>& q) {
  return {q.re, -q.im};
}

template <typename T>
T modulus_sq(const QuaternionT<T>& q) {
  return q.re * q.re + norm_sq(q.im);
}

inline double modulus(const Quaternion& q) { return std::sqrt(modulus_sq(q)); }

// p and q commute iff their imaginary parts are linearly dependent,
// i.e. im_p x im_q = 0; |pq - qp| = 2|im_p x im_q|.
inline bool commutes(const Quaternion& p, const Quaternion& q, double tol) {
  if (tol < 0) throw std::invalid_argument("commutes: negative tolerance");
  return norm(cross(p.im, q.im)) <= tol;
}

inline bool commutes_exact(const QuaternionQ& p, const QuaternionQ& q) {
  return cross(p.im, q.im) == Vec3Q{};
}

inline QuaternionQ to_exact(const Quaternion& q) {
  return {Rational(q.re), to_vec3q(q.im)};
}

inline Quaternion to_quaternion(const QuaternionQ& q) {
  return {to_double(q.re), to_vec3(q.im)};
}

}  // namespace qharm
