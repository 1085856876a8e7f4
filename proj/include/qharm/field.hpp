#pragma once

#include <string>
#include <vector>

#include "qharm/domain.hpp"
#include "qharm/polynomial.hpp"
#include "qharm/quaternion.hpp"

namespace qharm {

enum class Backend { Polynomial, Grid };

std::string backend_name(Backend b);

// Scalar function on a domain under one of two backends: an exact polynomial
// in x1,x2,x3 or an array of samples at the domain's grid nodes. Immutable.
class ScalarField {
 public:
  static ScalarField polynomial(Poly p, DomainPtr dom);
  static ScalarField grid(DomainPtr dom, std::vector<double> node_values);
  static ScalarField constant(const Rational& c, Backend b, const DomainPtr& dom);
  static ScalarField zero(Backend b, const DomainPtr& dom);

  Backend backend() const { return backend_; }
  const DomainPtr& domain() const { return dom_; }
  const Poly& poly() const;
  const std::vector<double>& values() const;

  double operator()(const Vec3& x) const;  // see evaluate()

  ScalarField operator-() const;
  friend ScalarField operator+(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator-(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator*(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator*(const Rational& s, const ScalarField& f);
  friend ScalarField operator*(double s, const ScalarField& f);

 private:
  ScalarField() = default;
  Backend backend_{};
  DomainPtr dom_;
  Poly poly_;
  std::vector<double> values_;
};

// Three scalar components sharing one backend and one domain.
class VectorField {
 public:
  VectorField(ScalarField c1, ScalarField c2, ScalarField c3);
  static VectorField polynomial(Poly p1, Poly p2, Poly p3, const DomainPtr& dom);
  static VectorField constant(const Vec3Q& v, Backend b, const DomainPtr& dom);
  static VectorField zero(Backend b, const DomainPtr& dom);

  Backend backend() const { return comp_[0].backend(); }
  const DomainPtr& domain() const { return comp_[0].domain(); }
  const ScalarField& component(int i) const { return comp_[i]; }

  Vec3 operator()(const Vec3& x) const;

  VectorField operator-() const;
  friend VectorField operator+(const VectorField& a, const VectorField& b);
  friend VectorField operator-(const VectorField& a, const VectorField& b);
  friend VectorField operator*(const Rational& s, const VectorField& f);
  friend VectorField operator*(double s, const VectorField& f);
  friend VectorField operator*(const ScalarField& a, const VectorField& v);

 private:
  std::array<ScalarField, 3> comp_;
};

// Candidate element of the quaternion field space: {scalar part, vector part}.
struct QuaternionField {
  ScalarField scalar;
  VectorField vector;

  QuaternionField(ScalarField s, VectorField v);

  Backend backend() const { return scalar.backend(); }
  const DomainPtr& domain() const { return scalar.domain(); }

  Quaternion operator()(const Vec3& x) const;

  static QuaternionField constant(const QuaternionQ& q, Backend b, const DomainPtr& dom);
  static QuaternionField unit(Backend b, const DomainPtr& dom);  // {1, 0}

  friend QuaternionField operator+(const QuaternionField& p, const QuaternionField& q);
  friend QuaternionField operator-(const QuaternionField& p, const QuaternionField& q);
  friend QuaternionField operator*(const Rational& s, const QuaternionField& p);
};

bool is_unit_field(const QuaternionField& p, double tol = 0.0);

// Point evaluation. Polynomial backend is exact; grid backend interpolates
// trilinearly among the 8 enclosing nodes. Throws when x lies outside the
// closed domain (grid slack h/2).
double evaluate(const ScalarField& f, const Vec3& x);
Vec3 evaluate(const VectorField& u, const Vec3& x);
Quaternion evaluate(const QuaternionField& p, const Vec3& x);

Quaternion node_value(const QuaternionField& p, std::size_t node);

// (pq)(x) = qmul(p(x), q(x)); exact polynomial product on the poly backend.
QuaternionField pointwise_product(const QuaternionField& p, const QuaternionField& q);

// Sup of |p| over the closed domain. Grid: max over nodes. Polynomial: max
// over a sampling lattice of spacing h_eval (0 -> the domain's own h).
double sup_norm(const QuaternionField& p, double h_eval = 0.0);
double sup_norm(const ScalarField& f, double h_eval = 0.0);
double sup_norm(const VectorField& u, double h_eval = 0.0);

ScalarField sample(const ScalarField& f, const DomainPtr& dom);
VectorField sample(const VectorField& u, const DomainPtr& dom);
QuaternionField sample(const QuaternionField& p, const DomainPtr& dom);

// Max |f| over interior nodes with boundary distance >= margin_h * h.
// Polynomial fields evaluate on the same node set; an identically-zero
// polynomial reports exactly 0.
double max_abs_interior(const ScalarField& f, double margin_h = 0.0);
double max_abs_interior(const VectorField& u, double margin_h = 0.0);

// Largest |f(x+h)-2f(x)+f(x-h)|/h^2 over nodes and axes: the scale that
// grid tolerances are calibrated against.
double second_difference_scale(const ScalarField& f);
double second_difference_scale(const VectorField& u);
double second_difference_scale(const QuaternionField& p);

void require_same_frame(const ScalarField& a, const ScalarField& b, const char* op);

}  // namespace qharm
