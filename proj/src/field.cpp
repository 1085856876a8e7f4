#include "qharm/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qharm {

std::string backend_name(Backend b) {
  return b == Backend::Polynomial ? "polynomial" : "grid";
}

void require_same_frame(const ScalarField& a, const ScalarField& b, const char* op) {
  if (a.backend() != b.backend())
    throw std::invalid_argument(std::string(op) + ": backend mismatch (" +
                                backend_name(a.backend()) + " vs " +
                                backend_name(b.backend()) + ")");
  if (!same_domain(a.domain(), b.domain()))
    throw std::invalid_argument(std::string(op) + ": domain mismatch");
}

ScalarField ScalarField::polynomial(Poly p, DomainPtr dom) {
  if (!dom) throw std::invalid_argument("ScalarField: null domain");
  ScalarField f;
  f.backend_ = Backend::Polynomial;
  f.dom_ = std::move(dom);
  f.poly_ = std::move(p);
  return f;
}

ScalarField ScalarField::grid(DomainPtr dom, std::vector<double> node_values) {
  if (!dom) throw std::invalid_argument("ScalarField: null domain");
  if (node_values.size() != dom->node_count())
    throw std::invalid_argument("ScalarField: value array length != node count");
  ScalarField f;
  f.backend_ = Backend::Grid;
  f.dom_ = std::move(dom);
  f.values_ = std::move(node_values);
  return f;
}

ScalarField ScalarField::constant(const Rational& c, Backend b, const DomainPtr& dom) {
  if (b == Backend::Polynomial) return polynomial(Poly::constant(c), dom);
  return grid(dom, std::vector<double>(dom->node_count(), to_double(c)));
}

ScalarField ScalarField::zero(Backend b, const DomainPtr& dom) {
  return constant(rational(0), b, dom);
}

const Poly& ScalarField::poly() const {
  if (backend_ != Backend::Polynomial)
    throw std::logic_error("ScalarField::poly on grid backend");
  return poly_;
}

const std::vector<double>& ScalarField::values() const {
  if (backend_ != Backend::Grid)
    throw std::logic_error("ScalarField::values on polynomial backend");
  return values_;
}

double ScalarField::operator()(const Vec3& x) const { return evaluate(*this, x); }

ScalarField ScalarField::operator-() const {
  if (backend_ == Backend::Polynomial) return polynomial(-poly_, dom_);
  std::vector<double> v(values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = -values_[i];
  return grid(dom_, std::move(v));
}

namespace {
template <typename FP, typename FG>
ScalarField zip(const ScalarField& a, const ScalarField& b, const char* op,
                FP&& fpoly, FG&& fgrid) {
  require_same_frame(a, b, op);
  if (a.backend() == Backend::Polynomial)
    return ScalarField::polynomial(fpoly(a.poly(), b.poly()), a.domain());
  std::vector<double> v(a.values().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = fgrid(a.values()[i], b.values()[i]);
  return ScalarField::grid(a.domain(), std::move(v));
}
}  // namespace

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  return zip(a, b, "field sum", [](const Poly& p, const Poly& q) { return p + q; },
             [](double p, double q) { return p + q; });
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  return zip(a, b, "field difference", [](const Poly& p, const Poly& q) { return p - q; },
             [](double p, double q) { return p - q; });
}

ScalarField operator*(const ScalarField& a, const ScalarField& b) {
  return zip(a, b, "field product", [](const Poly& p, const Poly& q) { return p * q; },
             [](double p, double q) { return p * q; });
}

ScalarField operator*(const Rational& s, const ScalarField& f) {
  if (f.backend() == Backend::Polynomial)
    return ScalarField::polynomial(s * f.poly(), f.domain());
  double sd = to_double(s);
  std::vector<double> v(f.values().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = sd * f.values()[i];
  return ScalarField::grid(f.domain(), std::move(v));
}

ScalarField operator*(double s, const ScalarField& f) { return Rational(s) * f; }

VectorField::VectorField(ScalarField c1, ScalarField c2, ScalarField c3)
    : comp_{std::move(c1), std::move(c2), std::move(c3)} {
  require_same_frame(comp_[0], comp_[1], "VectorField");
  require_same_frame(comp_[0], comp_[2], "VectorField");
}

VectorField VectorField::polynomial(Poly p1, Poly p2, Poly p3, const DomainPtr& dom) {
  return {ScalarField::polynomial(std::move(p1), dom),
          ScalarField::polynomial(std::move(p2), dom),
          ScalarField::polynomial(std::move(p3), dom)};
}

VectorField VectorField::constant(const Vec3Q& v, Backend b, const DomainPtr& dom) {
  return {ScalarField::constant(v.x, b, dom), ScalarField::constant(v.y, b, dom),
          ScalarField::constant(v.z, b, dom)};
}

VectorField VectorField::zero(Backend b, const DomainPtr& dom) {
  return constant(Vec3Q{}, b, dom);
}

Vec3 VectorField::operator()(const Vec3& x) const { return evaluate(*this, x); }

VectorField VectorField::operator-() const { return {-comp_[0], -comp_[1], -comp_[2]}; }

VectorField operator+(const VectorField& a, const VectorField& b) {
  return {a.comp_[0] + b.comp_[0], a.comp_[1] + b.comp_[1], a.comp_[2] + b.comp_[2]};
}

VectorField operator-(const VectorField& a, const VectorField& b) {
  return {a.comp_[0] - b.comp_[0], a.comp_[1] - b.comp_[1], a.comp_[2] - b.comp_[2]};
}

VectorField operator*(const Rational& s, const VectorField& f) {
  return {s * f.comp_[0], s * f.comp_[1], s * f.comp_[2]};
}

VectorField operator*(double s, const VectorField& f) { return Rational(s) * f; }

VectorField operator*(const ScalarField& a, const VectorField& v) {
  return {a * v.comp_[0], a * v.comp_[1], a * v.comp_[2]};
}

QuaternionField::QuaternionField(ScalarField s, VectorField v)
    : scalar(std::move(s)), vector(std::move(v)) {
  require_same_frame(scalar, vector.component(0), "QuaternionField");
}

Quaternion QuaternionField::operator()(const Vec3& x) const {
  return evaluate(*this, x);
}

QuaternionField QuaternionField::constant(const QuaternionQ& q, Backend b,
                                          const DomainPtr& dom) {
  return {ScalarField::constant(q.re, b, dom), VectorField::constant(q.im, b, dom)};
}

QuaternionField QuaternionField::unit(Backend b, const DomainPtr& dom) {
  return constant({rational(1), {}}, b, dom);
}

QuaternionField operator+(const QuaternionField& p, const QuaternionField& q) {
  return {p.scalar + q.scalar, p.vector + q.vector};
}

QuaternionField operator-(const QuaternionField& p, const QuaternionField& q) {
  return {p.scalar - q.scalar, p.vector - q.vector};
}

QuaternionField operator*(const Rational& s, const QuaternionField& p) {
  return {s * p.scalar, s * p.vector};
}

bool is_unit_field(const QuaternionField& p, double tol) {
  if (p.backend() == Backend::Polynomial) {
    if (!(p.scalar.poly() == Poly::constant(rational(1)))) return false;
    for (int i = 0; i < 3; ++i)
      if (!p.vector.component(i).poly().is_zero()) return false;
    return true;
  }
  for (std::size_t n = 0; n < p.domain()->node_count(); ++n) {
    Quaternion v = node_value(p, n);
    if (std::abs(v.re - 1.0) > tol || norm(v.im) > tol) return false;
  }
  return true;
}

namespace {

double grid_eval(const ScalarField& f, const Vec3& x) {
  const Domain& d = *f.domain();
  const Vec3& o = d.lattice_origin();
  const Vec3& st = d.lattice_step();
  double fi = (x.x - o.x) / st.x, fj = (x.y - o.y) / st.y, fk = (x.z - o.z) / st.z;
  int i = (int)std::floor(fi), j = (int)std::floor(fj), k = (int)std::floor(fk);
  // Snap to an exact node when the point sits on one.
  auto near_int = [](double t) { return std::abs(t - std::llround(t)) < 1e-9; };
  if (near_int(fi) && near_int(fj) && near_int(fk)) {
    int n = d.node_at((int)std::llround(fi), (int)std::llround(fj), (int)std::llround(fk));
    if (n >= 0) return f.values()[(std::size_t)n];
  }
  i = std::clamp(i, 0, d.dims()[0] - 2);
  j = std::clamp(j, 0, d.dims()[1] - 2);
  k = std::clamp(k, 0, d.dims()[2] - 2);
  double tx = std::clamp(fi - i, 0.0, 1.0);
  double ty = std::clamp(fj - j, 0.0, 1.0);
  double tz = std::clamp(fk - k, 0.0, 1.0);

  bool all_corners = true;
  double c[2][2][2];
  for (int di = 0; di < 2 && all_corners; ++di)
    for (int dj = 0; dj < 2 && all_corners; ++dj)
      for (int dk = 0; dk < 2; ++dk) {
        int n = d.node_at(i + di, j + dj, k + dk);
        if (n < 0) {
          all_corners = false;
          break;
        }
        c[di][dj][dk] = f.values()[(std::size_t)n];
      }
  if (all_corners) {
    auto lerp = [](double a, double b, double t) { return a + (b - a) * t; };
    double c00 = lerp(c[0][0][0], c[1][0][0], tx);
    double c10 = lerp(c[0][1][0], c[1][1][0], tx);
    double c01 = lerp(c[0][0][1], c[1][0][1], tx);
    double c11 = lerp(c[0][1][1], c[1][1][1], tx);
    return lerp(lerp(c00, c10, ty), lerp(c01, c11, ty), tz);
  }
  // Cell clipped by a curved boundary: fall back to the nearest stored node.
  double best = -1.0;
  double val = 0.0;
  for (std::size_t n = 0; n < d.node_count(); ++n) {
    double dist = norm_sq(d.node(n) - x);
    if (best < 0 || dist < best) {
      best = dist;
      val = f.values()[n];
    }
  }
  return val;
}

void require_inside(const ScalarField& f, const Vec3& x) {
  double slack = f.backend() == Backend::Grid ? f.domain()->spacing() / 2 : 0.0;
  if (!f.domain()->contains(x, slack))
    throw std::domain_error("evaluate: point (" + std::to_string(x.x) + "," +
                            std::to_string(x.y) + "," + std::to_string(x.z) +
                            ") outside domain " + f.domain()->describe());
}

}  // namespace

double evaluate(const ScalarField& f, const Vec3& x) {
  require_inside(f, x);
  if (f.backend() == Backend::Polynomial) return f.poly().eval(x);
  return grid_eval(f, x);
}

Vec3 evaluate(const VectorField& u, const Vec3& x) {
  return {evaluate(u.component(0), x), evaluate(u.component(1), x),
          evaluate(u.component(2), x)};
}

Quaternion evaluate(const QuaternionField& p, const Vec3& x) {
  return {evaluate(p.scalar, x), evaluate(p.vector, x)};
}

Quaternion node_value(const QuaternionField& p, std::size_t node) {
  if (p.backend() == Backend::Grid)
    return {p.scalar.values()[node],
            {p.vector.component(0).values()[node], p.vector.component(1).values()[node],
             p.vector.component(2).values()[node]}};
  const Vec3& x = p.domain()->node(node);
  return {p.scalar.poly().eval(x),
          {p.vector.component(0).poly().eval(x), p.vector.component(1).poly().eval(x),
           p.vector.component(2).poly().eval(x)}};
}

QuaternionField pointwise_product(const QuaternionField& p, const QuaternionField& q) {
  require_same_frame(p.scalar, q.scalar, "pointwise_product");
  const ScalarField &a = p.scalar, &b = q.scalar;
  const VectorField &u = p.vector, &v = q.vector;
  ScalarField re = a * b - (u.component(0) * v.component(0) +
                            u.component(1) * v.component(1) +
                            u.component(2) * v.component(2));
  VectorField im{
      a * v.component(0) + b * u.component(0) +
          (u.component(1) * v.component(2) - u.component(2) * v.component(1)),
      a * v.component(1) + b * u.component(1) +
          (u.component(2) * v.component(0) - u.component(0) * v.component(2)),
      a * v.component(2) + b * u.component(2) +
          (u.component(0) * v.component(1) - u.component(1) * v.component(0))};
  return {std::move(re), std::move(im)};
}

namespace {

// Visit the sampling lattice of the closed domain at spacing h_eval.
template <typename F>
void for_lattice(const Domain& d, double h_eval, F&& fn) {
  if (h_eval <= 0 || h_eval == d.spacing()) {
    for (std::size_t n = 0; n < d.node_count(); ++n) fn(d.node(n));
    return;
  }
  Vec3 lo = d.lo(), hi = d.hi();
  int ni = std::max(1, (int)std::llround((hi.x - lo.x) / h_eval));
  int nj = std::max(1, (int)std::llround((hi.y - lo.y) / h_eval));
  int nk = std::max(1, (int)std::llround((hi.z - lo.z) / h_eval));
  for (int i = 0; i <= ni; ++i)
    for (int j = 0; j <= nj; ++j)
      for (int k = 0; k <= nk; ++k) {
        Vec3 x{lo.x + i * (hi.x - lo.x) / ni, lo.y + j * (hi.y - lo.y) / nj,
               lo.z + k * (hi.z - lo.z) / nk};
        if (d.contains(x)) fn(x);
      }
}

}  // namespace

double sup_norm(const QuaternionField& p, double h_eval) {
  double m = 0.0;
  if (p.backend() == Backend::Grid) {
    for (std::size_t n = 0; n < p.domain()->node_count(); ++n)
      m = std::max(m, modulus(node_value(p, n)));
    return m;
  }
  CompiledPoly s(p.scalar.poly());
  CompiledPoly v0(p.vector.component(0).poly());
  CompiledPoly v1(p.vector.component(1).poly());
  CompiledPoly v2(p.vector.component(2).poly());
  for_lattice(*p.domain(), h_eval, [&](const Vec3& x) {
    Quaternion q{s.eval(x), {v0.eval(x), v1.eval(x), v2.eval(x)}};
    m = std::max(m, modulus(q));
  });
  return m;
}

double sup_norm(const ScalarField& f, double h_eval) {
  double m = 0.0;
  if (f.backend() == Backend::Grid) {
    for (double v : f.values()) m = std::max(m, std::abs(v));
    return m;
  }
  CompiledPoly c(f.poly());
  for_lattice(*f.domain(), h_eval, [&](const Vec3& x) { m = std::max(m, std::abs(c.eval(x))); });
  return m;
}

double sup_norm(const VectorField& u, double h_eval) {
  double m = 0.0;
  if (u.backend() == Backend::Grid) {
    for (std::size_t n = 0; n < u.domain()->node_count(); ++n) {
      Vec3 v{u.component(0).values()[n], u.component(1).values()[n],
             u.component(2).values()[n]};
      m = std::max(m, norm(v));
    }
    return m;
  }
  CompiledPoly c0(u.component(0).poly()), c1(u.component(1).poly()), c2(u.component(2).poly());
  for_lattice(*u.domain(), h_eval, [&](const Vec3& x) {
    m = std::max(m, norm(Vec3{c0.eval(x), c1.eval(x), c2.eval(x)}));
  });
  return m;
}

ScalarField sample(const ScalarField& f, const DomainPtr& dom) {
  if (f.backend() != Backend::Polynomial)
    throw std::invalid_argument("sample: input must be a polynomial field");
  CompiledPoly c(f.poly());
  std::vector<double> v(dom->node_count());
  for (std::size_t n = 0; n < v.size(); ++n) v[n] = c.eval(dom->node(n));
  return ScalarField::grid(dom, std::move(v));
}

VectorField sample(const VectorField& u, const DomainPtr& dom) {
  return {sample(u.component(0), dom), sample(u.component(1), dom),
          sample(u.component(2), dom)};
}

QuaternionField sample(const QuaternionField& p, const DomainPtr& dom) {
  return {sample(p.scalar, dom), sample(p.vector, dom)};
}

namespace {

// Nodes at boundary distance >= margin_h * h; falls back to non-boundary
// nodes, then to all nodes, so coarse grids still report something.
std::vector<std::size_t> measurement_nodes(const Domain& d, double margin_h) {
  double eps = 1e-9 * d.spacing();
  std::vector<std::size_t> out;
  for (std::size_t n = 0; n < d.node_count(); ++n)
    if (d.boundary_distance(d.node(n)) >= margin_h * d.spacing() - eps) out.push_back(n);
  if (out.empty())
    for (std::size_t n = 0; n < d.node_count(); ++n)
      if (!d.is_boundary(n)) out.push_back(n);
  if (out.empty())
    for (std::size_t n = 0; n < d.node_count(); ++n) out.push_back(n);
  return out;
}

}  // namespace

double max_abs_interior(const ScalarField& f, double margin_h) {
  if (f.backend() == Backend::Polynomial && f.poly().is_zero()) return 0.0;
  const Domain& d = *f.domain();
  auto set = measurement_nodes(d, margin_h);
  double m = 0.0;
  if (f.backend() == Backend::Grid) {
    for (auto n : set) m = std::max(m, std::abs(f.values()[n]));
  } else {
    CompiledPoly c(f.poly());
    for (auto n : set) m = std::max(m, std::abs(c.eval(d.node(n))));
  }
  return m;
}

double max_abs_interior(const VectorField& u, double margin_h) {
  double m = 0.0;
  for (int i = 0; i < 3; ++i) m = std::max(m, max_abs_interior(u.component(i), margin_h));
  return m;
}

double second_difference_scale(const ScalarField& f) {
  const Domain& d = *f.domain();
  std::vector<double> vals;
  if (f.backend() == Backend::Grid) {
    vals = f.values();
  } else {
    CompiledPoly c(f.poly());
    vals.resize(d.node_count());
    for (std::size_t n = 0; n < vals.size(); ++n) vals[n] = c.eval(d.node(n));
  }
  double s = 0.0;
  for (std::size_t n = 0; n < d.node_count(); ++n) {
    auto [i, j, k] = d.node_ijk(n);
    int nb[3][2] = {{d.node_at(i - 1, j, k), d.node_at(i + 1, j, k)},
                    {d.node_at(i, j - 1, k), d.node_at(i, j + 1, k)},
                    {d.node_at(i, j, k - 1), d.node_at(i, j, k + 1)}};
    for (int a = 0; a < 3; ++a) {
      if (nb[a][0] < 0 || nb[a][1] < 0) continue;
      double h = d.lattice_step()[a];
      double dd = vals[(std::size_t)nb[a][0]] - 2 * vals[n] + vals[(std::size_t)nb[a][1]];
      s = std::max(s, std::abs(dd) / (h * h));
    }
  }
  return s;
}

double second_difference_scale(const VectorField& u) {
  double s = 0.0;
  for (int i = 0; i < 3; ++i) s = std::max(s, second_difference_scale(u.component(i)));
  return s;
}

double second_difference_scale(const QuaternionField& p) {
  return std::max(second_difference_scale(p.scalar), second_difference_scale(p.vector));
}

}  // namespace qharm
