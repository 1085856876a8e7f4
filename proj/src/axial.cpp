#include "qharm/axial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qharm {

CPoly::CPoly(std::vector<std::pair<Rational, Rational>> coeffs) : c_(std::move(coeffs)) {
  strip();
}

void CPoly::strip() {
  while (!c_.empty() && c_.back().first == 0 && c_.back().second == 0) c_.pop_back();
}

CPoly CPoly::zpow(int k) {
  if (k < 0) throw std::invalid_argument("CPoly::zpow: negative power");
  std::vector<std::pair<Rational, Rational>> c(k + 1, {rational(0), rational(0)});
  c[k] = {rational(1), rational(0)};
  return CPoly(std::move(c));
}

CPoly operator+(const CPoly& a, const CPoly& b) {
  std::vector<std::pair<Rational, Rational>> c(std::max(a.c_.size(), b.c_.size()),
                                               {Rational(0), Rational(0)});
  for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] = a.c_[k];
  for (std::size_t k = 0; k < b.c_.size(); ++k) {
    c[k].first += b.c_[k].first;
    c[k].second += b.c_[k].second;
  }
  return CPoly(std::move(c));
}

CPoly operator*(const CPoly& a, const CPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<std::pair<Rational, Rational>> c(a.c_.size() + b.c_.size() - 1,
                                               {Rational(0), Rational(0)});
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      c[i + j].first += a.c_[i].first * b.c_[j].first - a.c_[i].second * b.c_[j].second;
      c[i + j].second += a.c_[i].first * b.c_[j].second + a.c_[i].second * b.c_[j].first;
    }
  return CPoly(std::move(c));
}

CPoly operator*(const Rational& s, const CPoly& f) {
  std::vector<std::pair<Rational, Rational>> c = f.c_;
  for (auto& [re, im] : c) {
    re *= s;
    im *= s;
  }
  return CPoly(std::move(c));
}

std::complex<double> CPoly::eval(std::complex<double> z) const {
  std::complex<double> s{0.0, 0.0};
  for (std::size_t k = c_.size(); k-- > 0;)
    s = s * z + std::complex<double>(to_double(c_[k].first), to_double(c_[k].second));
  return s;
}

std::pair<Poly, Poly> CPoly::expand(const Vec3Q& a, const Vec3Q& b) const {
  Poly X = Poly::monomial(a.x, {1, 0, 0}) + Poly::monomial(a.y, {0, 1, 0}) +
           Poly::monomial(a.z, {0, 0, 1});
  Poly Y = Poly::monomial(b.x, {1, 0, 0}) + Poly::monomial(b.y, {0, 1, 0}) +
           Poly::monomial(b.z, {0, 0, 1});
  Poly re, im;
  Poly zk_re = Poly::constant(rational(1)), zk_im;  // z^0
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (k > 0) {
      Poly nre = zk_re * X - zk_im * Y;
      Poly nim = zk_re * Y + zk_im * X;
      zk_re = std::move(nre);
      zk_im = std::move(nim);
    }
    re += c_[k].first * zk_re - c_[k].second * zk_im;
    im += c_[k].first * zk_im + c_[k].second * zk_re;
  }
  return {std::move(re), std::move(im)};
}

bool PlanarFrame::exactly_orthonormal() const {
  return dot(a, a) == 1 && dot(b, b) == 1 && dot(omega, omega) == 1 &&
         dot(a, b) == 0 && dot(a, omega) == 0 && dot(b, omega) == 0 &&
         cross(a, b) == omega;
}

PlanarFrame frame_from_omega(const Vec3& omega) {
  double n2 = norm_sq(omega);
  if (std::abs(n2 - 1.0) > 2e-12)
    throw std::invalid_argument("frame_from_omega: omega is not a unit vector");
  // First standard basis vector making a well-conditioned cross product.
  Vec3 k{1, 0, 0};
  if (norm(cross(omega, k)) <= 0.5) k = {0, 1, 0};
  if (norm(cross(omega, k)) <= 0.5) k = {0, 0, 1};
  Vec3 b = cross(omega, k);
  double bn = norm(b);
  // Axis-aligned omegas give |omega x k| = 1; skip the irrational division.
  if (bn != 1.0) b = {b.x / bn, b.y / bn, b.z / bn};
  Vec3 a = cross(b, omega);
  return {to_vec3q(a), to_vec3q(b), to_vec3q(omega)};
}

PlanarFrame frame_from_rotation(const QuaternionQ& q) {
  const Rational &w = q.re, &x = q.im.x, &y = q.im.y, &z = q.im.z;
  Rational n = w * w + x * x + y * y + z * z;
  if (n == 0) throw std::invalid_argument("frame_from_rotation: zero quaternion");
  Vec3Q a{(w * w + x * x - y * y - z * z) / n, rational(2) * (x * y + w * z) / n,
          rational(2) * (x * z - w * y) / n};
  Vec3Q b{rational(2) * (x * y - w * z) / n, (w * w - x * x + y * y - z * z) / n,
          rational(2) * (y * z + w * x) / n};
  Vec3Q o{rational(2) * (x * z + w * y) / n, rational(2) * (y * z - w * x) / n,
          (w * w - x * x - y * y + z * z) / n};
  return {a, b, o};
}

Vec3 RadialChart::unit(const Vec3& x) const {
  Vec3 r = x - pole;
  double n = norm(r);
  return {r.x / n, r.y / n, r.z / n};
}

std::complex<double> RadialChart::zeta(const Vec3& x) const {
  Vec3 e = unit(x);
  double den = 1.0 + dot(e, d);
  return {dot(e, t1) / den, dot(e, t2) / den};
}

bool AxisDescriptor::same_axis(const AxisDescriptor& o) const {
  if (kind != o.kind) return false;
  if (kind == AxisKind::Planar)
    return frame.a == o.frame.a && frame.b == o.frame.b && frame.omega == o.frame.omega;
  return chart.pole == o.chart.pole && chart.d == o.chart.d;
}

std::string AxisDescriptor::describe() const {
  if (kind == AxisKind::Planar) {
    Vec3 o = to_vec3(frame.omega);
    return "planar omega=(" + std::to_string(o.x) + "," + std::to_string(o.y) + "," +
           std::to_string(o.z) + ")";
  }
  return "radial pole=(" + std::to_string(chart.pole.x) + "," +
         std::to_string(chart.pole.y) + "," + std::to_string(chart.pole.z) + ")";
}

std::pair<double, double> AxialElement::phi_psi(const Vec3& x) const {
  if (axis.kind == AxisKind::Planar) {
    std::complex<double> z{dot(x, to_vec3(axis.frame.a)), dot(x, to_vec3(axis.frame.b))};
    std::complex<double> w = generator.eval(z);
    return {w.real(), w.imag()};
  }
  std::complex<double> w = generator.eval(axis.chart.zeta(x));
  return {w.real(), w.imag()};
}

Vec3 AxialElement::axis_direction(const Vec3& x) const {
  if (axis.kind == AxisKind::Planar) return to_vec3(axis.frame.omega);
  return axis.chart.unit(x);
}

AxialElement build_planar(const PlanarFrame& frame, const CPoly& f, const DomainPtr& dom,
                          Backend backend) {
  auto [phi, psi] = f.expand(frame.a, frame.b);
  QuaternionField p{
      ScalarField::polynomial(phi, dom),
      {ScalarField::polynomial(psi * Poly::constant(frame.omega.x), dom),
       ScalarField::polynomial(psi * Poly::constant(frame.omega.y), dom),
       ScalarField::polynomial(psi * Poly::constant(frame.omega.z), dom)}};
  AxialElement el{AxisDescriptor{AxisKind::Planar, frame, {}}, f,
                  backend == Backend::Polynomial ? std::move(p) : sample(p, dom)};
  return el;
}

AxialElement build_planar(const Vec3& omega, const CPoly& f, const DomainPtr& dom,
                          Backend backend) {
  return build_planar(frame_from_omega(omega), f, dom, backend);
}

AxialElement build_radial(const Vec3& pole, const CPoly& f, const DomainPtr& dom) {
  double gap = dom->exterior_distance(pole);
  if (gap < 2 * dom->spacing())
    throw std::invalid_argument(
        "build_radial: pole must lie outside the closed domain by at least 2h "
        "(distance " + std::to_string(gap) + ", h " + std::to_string(dom->spacing()) + ")");

  RadialChart chart;
  chart.pole = pole;
  chart.d = normalized(dom->center() - pole);
  PlanarFrame fr = frame_from_omega(chart.d);
  chart.t1 = to_vec3(fr.a);
  chart.t2 = to_vec3(fr.b);

  // The chart degenerates where e(x).d -> -1; with the projection point
  // antipodal to the domain direction this cannot meet pi(closure(Omega)).
  for (const Vec3& x : dom->nodes())
    if (dot(chart.unit(x), chart.d) < 0.05)
      throw std::invalid_argument("build_radial: chart singularity intersects the domain");

  std::size_t n = dom->node_count();
  std::vector<double> phi(n), v1(n), v2(n), v3(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3& x = dom->node(i);
    std::complex<double> w = f.eval(chart.zeta(x));
    Vec3 e = chart.unit(x);
    phi[i] = w.real();
    v1[i] = w.imag() * e.x;
    v2[i] = w.imag() * e.y;
    v3[i] = w.imag() * e.z;
  }
  QuaternionField p{ScalarField::grid(dom, std::move(phi)),
                    {ScalarField::grid(dom, std::move(v1)),
                     ScalarField::grid(dom, std::move(v2)),
                     ScalarField::grid(dom, std::move(v3))}};
  return {AxisDescriptor{AxisKind::Radial, {}, chart}, f, std::move(p)};
}

AxialElement algebra_mul(const AxialElement& p, const AxialElement& q) {
  if (!p.axis.same_axis(q.axis))
    throw std::invalid_argument("algebra_mul: axis mismatch (" + p.axis.describe() +
                                " vs " + q.axis.describe() +
                                "); mixed-axis products need not stay harmonic");
  CPoly fg = p.generator * q.generator;
  if (p.axis.kind == AxisKind::Planar)
    return build_planar(p.axis.frame, fg, p.field.domain(), p.field.backend());

  // Radial: combine stored node values by the algebra product so the result
  // matches the pointwise quaternion product at nodes.
  const DomainPtr& dom = p.field.domain();
  if (!same_domain(dom, q.field.domain()))
    throw std::invalid_argument("algebra_mul: domain mismatch");
  std::size_t n = dom->node_count();
  std::vector<double> phi(n), v1(n), v2(n), v3(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3& x = dom->node(i);
    auto [pp, ps] = p.phi_psi(x);
    auto [qp, qs] = q.phi_psi(x);
    Vec3 e = p.axis.chart.unit(x);
    double re = pp * qp - ps * qs, im = pp * qs + ps * qp;
    phi[i] = re;
    v1[i] = im * e.x;
    v2[i] = im * e.y;
    v3[i] = im * e.z;
  }
  QuaternionField field{ScalarField::grid(dom, std::move(phi)),
                        {ScalarField::grid(dom, std::move(v1)),
                         ScalarField::grid(dom, std::move(v2)),
                         ScalarField::grid(dom, std::move(v3))}};
  return {p.axis, fg, std::move(field)};
}

namespace {

// Fields for the axis direction e and distance function tau in the element's
// backend. Planar: e = omega (constant), tau = x.omega, exact polynomials.
// Radial: sampled e(x) and r(x).
VectorField axis_field(const AxialElement& el) {
  const DomainPtr& dom = el.field.domain();
  if (el.axis.kind == AxisKind::Planar)
    return VectorField::constant(el.axis.frame.omega, el.field.backend(), dom);
  std::size_t n = dom->node_count();
  std::vector<double> v1(n), v2(n), v3(n);
  for (std::size_t i = 0; i < n; ++i) {
    Vec3 e = el.axis.chart.unit(dom->node(i));
    v1[i] = e.x;
    v2[i] = e.y;
    v3[i] = e.z;
  }
  return {ScalarField::grid(dom, std::move(v1)), ScalarField::grid(dom, std::move(v2)),
          ScalarField::grid(dom, std::move(v3))};
}

ScalarField tau_field(const AxialElement& el) {
  const DomainPtr& dom = el.field.domain();
  if (el.axis.kind == AxisKind::Planar) {
    Poly tau = Poly::monomial(el.axis.frame.omega.x, {1, 0, 0}) +
               Poly::monomial(el.axis.frame.omega.y, {0, 1, 0}) +
               Poly::monomial(el.axis.frame.omega.z, {0, 0, 1});
    if (el.field.backend() == Backend::Polynomial)
      return ScalarField::polynomial(tau, dom);
    return sample(ScalarField::polynomial(tau, dom), dom);
  }
  std::size_t n = dom->node_count();
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = norm(dom->node(i) - el.axis.chart.pole);
  return ScalarField::grid(dom, std::move(v));
}

// psi recovered from the realized field as u . e, so validation checks the
// element's actual vector part rather than trusting its generator.
ScalarField psi_field(const AxialElement& el, const VectorField& e) {
  return dot(el.field.vector, e);
}

}  // namespace

AxialValidation validate_axial(const AxialElement& el, double tol) {
  const DomainPtr& dom = el.field.domain();
  const ScalarField& phi = el.field.scalar;
  VectorField e = axis_field(el);
  ScalarField psi = psi_field(el, e);
  ScalarField tau = tau_field(el);

  double tolerance = tol;
  double scale = 0.0;
  if (tol < 0) {
    if (el.field.backend() == Backend::Polynomial) {
      tolerance = 1e-10;
    } else {
      scale = std::max({second_difference_scale(el.field), second_difference_scale(psi),
                        second_difference_scale(e)});
      double h = dom->spacing();
      tolerance = grid_tolerance_constant * h * h * scale;
    }
  }

  AxialValidation v;
  v.tol = tolerance;
  auto push = [&](const std::string& name, double r) {
    v.checks.push_back({name, r, r <= tolerance});
  };

  VectorField grad_phi = grad(phi), grad_psi = grad(psi), grad_tau = grad(tau);
  push("axis_alignment", max_abs_interior(el.field.vector - psi * e, interior_margin_h));
  push("axis_constancy_phi", max_abs_interior(dot(e, grad_phi), interior_margin_h));
  push("axis_constancy_psi", max_abs_interior(dot(e, grad_psi), interior_margin_h));
  push("geodesic_axis", max_abs_interior(dirderiv(e, e), interior_margin_h));
  push("frobenius", max_abs_interior(dot(e, rot(e)), interior_margin_h));
  push("harmonic_phi", max_abs_interior(laplacian(phi), interior_margin_h));
  push("harmonic_psi", max_abs_interior(laplacian(psi), interior_margin_h));
  push("conjugacy", max_abs_interior(grad_psi - wedge(grad_tau, grad_phi),
                                     interior_margin_h));
  if (el.axis.kind == AxisKind::Planar) {
    push("tau_harmonic", max_abs_interior(laplacian(tau), interior_margin_h));
  } else {
    // Delta tau = 2/r for the radial distance function.
    std::size_t n = dom->node_count();
    std::vector<double> two_over_r(n);
    for (std::size_t i = 0; i < n; ++i)
      two_over_r[i] = 2.0 / norm(dom->node(i) - el.axis.chart.pole);
    ScalarField rhs = ScalarField::grid(dom, std::move(two_over_r));
    push("tau_laplacian_2_over_r",
         max_abs_interior(laplacian(tau) - rhs, interior_margin_h));
  }

  v.pass = std::all_of(v.checks.begin(), v.checks.end(),
                       [](const AxialCheck& c) { return c.pass; });
  v.report = classify(el.field, tolerance);
  v.report.scale = scale;
  v.is_pure = v.report.div_max <= tolerance;
  return v;
}

ScalarField modulus_squared_laplacian(const AxialElement& p, double tol) {
  AxialValidation v = validate_axial(p, tol);
  if (!v.pass) {
    std::string worst;
    double worst_r = -1;
    for (auto& c : v.checks)
      if (!c.pass && c.max_residual > worst_r) {
        worst_r = c.max_residual;
        worst = c.name;
      }
    throw std::invalid_argument(
        "modulus_squared_laplacian: element fails axial validation (" + worst +
        " residual " + std::to_string(worst_r) + " > tol " + std::to_string(v.tol) + ")");
  }
  return modulus_squared_laplacian_field(p.field);
}

}  // namespace qharm
