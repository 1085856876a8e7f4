#include "qharm/polynomial.hpp"

#include <atomic>
#include <sstream>
#include <stdexcept>

namespace qharm {

namespace {
std::atomic<int> g_degree_cap{16};

double int_pow(double x, int e) {
  double r = 1.0;
  while (e-- > 0) r *= x;
  return r;
}
}  // namespace

int Poly::degree_cap() { return g_degree_cap.load(); }

void Poly::set_degree_cap(int cap) {
  if (cap < 1) throw std::invalid_argument("degree cap must be positive");
  g_degree_cap.store(cap);
}

Poly Poly::constant(Rational c) {
  Poly p;
  p.add_term({0, 0, 0}, c);
  return p;
}

Poly Poly::variable(int axis) {
  if (axis < 0 || axis > 2) throw std::invalid_argument("variable axis out of range");
  Exp e{0, 0, 0};
  e[axis] = 1;
  return monomial(rational(1), e);
}

Poly Poly::monomial(Rational c, Exp e) {
  if (e[0] < 0 || e[1] < 0 || e[2] < 0)
    throw std::invalid_argument("monomial with negative exponent");
  if (e[0] + e[1] + e[2] > degree_cap())
    throw std::domain_error("monomial exceeds polynomial degree cap");
  Poly p;
  p.add_term(e, c);
  return p;
}

void Poly::add_term(const Exp& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

int Poly::total_degree() const {
  int d = 0;
  for (auto& [e, c] : terms_) d = std::max(d, e[0] + e[1] + e[2]);
  return d;
}

Poly Poly::operator-() const {
  Poly r;
  for (auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  for (auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.total_degree() + b.total_degree() > Poly::degree_cap())
    throw std::domain_error("polynomial product exceeds degree cap");
  Poly r;
  for (auto& [ea, ca] : a.terms_)
    for (auto& [eb, cb] : b.terms_)
      r.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
  return r;
}

Poly operator*(const Rational& s, const Poly& p) {
  if (s == 0) return {};
  Poly r;
  for (auto& [e, c] : p.terms_) r.terms_.emplace(e, s * c);
  return r;
}

Poly Poly::derivative(int axis) const {
  if (axis < 0 || axis > 2) throw std::invalid_argument("derivative axis out of range");
  Poly r;
  for (auto& [e, c] : terms_) {
    if (e[axis] == 0) continue;
    Exp d = e;
    d[axis] -= 1;
    r.add_term(d, rational(e[axis]) * c);
  }
  return r;
}

double Poly::eval(const Vec3& x) const {
  double s = 0.0;
  for (auto& [e, c] : terms_)
    s += c.get_d() * int_pow(x.x, e[0]) * int_pow(x.y, e[1]) * int_pow(x.z, e[2]);
  return s;
}

Rational Poly::eval_exact(const Vec3Q& x) const {
  Rational s = 0;
  for (auto& [e, c] : terms_) {
    Rational t = c;
    for (int i = 0; i < e[0]; ++i) t *= x.x;
    for (int i = 0; i < e[1]; ++i) t *= x.y;
    for (int i = 0; i < e[2]; ++i) t *= x.z;
    s += t;
  }
  return s;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.get_str();
    for (int a = 0; a < 3; ++a)
      if (e[a] > 0) {
        os << "*x" << (a + 1);
        if (e[a] > 1) os << "^" << e[a];
      }
  }
  return os.str();
}

CompiledPoly::CompiledPoly(const Poly& p) {
  terms.reserve(p.terms().size());
  for (auto& [e, c] : p.terms()) terms.push_back({c.get_d(), e[0], e[1], e[2]});
}

double CompiledPoly::eval(const Vec3& x) const {
  double s = 0.0;
  for (const Term& t : terms)
    s += t.c * int_pow(x.x, t.e0) * int_pow(x.y, t.e1) * int_pow(x.z, t.e2);
  return s;
}

}  // namespace qharm
