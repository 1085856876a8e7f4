#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "qharm/rational.hpp"
#include "qharm/vec3.hpp"

namespace qharm {

// Sparse trivariate polynomial in x1,x2,x3 with exact rational coefficients.
// Canonical form: no zero coefficients stored, terms keyed by exponent triple.
class Poly {
 public:
  using Exp = std::array<int, 3>;

  Poly() = default;

  static Poly constant(Rational c);
  static Poly variable(int axis);  // axis in {0,1,2}
  static Poly monomial(Rational c, Exp e);

  // Total-degree cap shared by all polynomials; products beyond it throw.
  static int degree_cap();
  static void set_degree_cap(int cap);

  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;  // 0 for the zero polynomial

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Rational& s, const Poly& p);
  friend Poly operator*(const Poly& p, const Rational& s) { return s * p; }
  friend bool operator==(const Poly& a, const Poly& b) {
    return a.terms_ == b.terms_;
  }

  Poly derivative(int axis) const;

  double eval(const Vec3& x) const;
  Rational eval_exact(const Vec3Q& x) const;

  const std::map<Exp, Rational>& terms() const { return terms_; }

  std::string str() const;

 private:
  std::map<Exp, Rational> terms_;

  void add_term(const Exp& e, const Rational& c);
};

// Flattened double-coefficient copy for tight sampling loops.
struct CompiledPoly {
  struct Term {
    double c;
    int e0, e1, e2;
  };
  std::vector<Term> terms;

  explicit CompiledPoly(const Poly& p);
  double eval(const Vec3& x) const;
};

}  // namespace qharm
