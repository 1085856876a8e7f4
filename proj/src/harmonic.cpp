#include "qharm/harmonic.hpp"

#include <cmath>
#include <stdexcept>

namespace qharm {

std::string harmonic_class_name(HarmonicClass c) {
  switch (c) {
    case HarmonicClass::NotHarmonic: return "not_harmonic";
    case HarmonicClass::Harmonic: return "harmonic";
    case HarmonicClass::PureHarmonic: return "pure_harmonic";
  }
  return "?";
}

VectorField residual(const QuaternionField& p) {
  return grad(p.scalar) - rot(p.vector);
}

ResidualReport classify(const QuaternionField& p, double tol) {
  if (tol < 0) throw std::invalid_argument("classify: negative tolerance");
  ResidualReport r;
  r.backend = p.backend();
  r.domain = p.domain();
  r.tol = tol;
  r.scale = 0.0;
  r.epsilon_max = max_abs_interior(residual(p), interior_margin_h);
  r.div_max = max_abs_interior(div(p.vector), interior_margin_h);
  if (r.epsilon_max <= tol && r.div_max <= tol)
    r.classification = HarmonicClass::PureHarmonic;
  else if (r.epsilon_max <= tol)
    r.classification = HarmonicClass::Harmonic;
  else
    r.classification = HarmonicClass::NotHarmonic;
  return r;
}

ResidualReport classify(const QuaternionField& p) {
  double tol, scale = 0.0;
  if (p.backend() == Backend::Polynomial) {
    tol = 1e-10;
  } else {
    scale = second_difference_scale(p);
    double h = p.domain()->spacing();
    tol = grid_tolerance_constant * h * h * scale;
  }
  ResidualReport r = classify(p, tol);
  r.scale = scale;
  return r;
}

std::pair<VectorField, ScalarField> residual_product_general(const QuaternionField& p,
                                                             const QuaternionField& q) {
  require_same_frame(p.scalar, q.scalar, "residual_product_general");
  const ScalarField &a = p.scalar, &b = q.scalar;
  const VectorField &u = p.vector, &v = q.vector;
  VectorField ep = residual(p), eq = residual(q);
  ScalarField divu = div(u), divv = div(v);
  VectorField eps_pq = b * ep + a * eq + wedge(v, ep) + wedge(u, eq) + divu * v -
                       divv * u - rational(2) * dirderiv(v, u);
  ScalarField div_im_pq =
      a * divv + b * divu + dot(u, eq) + dot(v, ep) + rational(2) * dot(v, rot(u));
  return {std::move(eps_pq), std::move(div_im_pq)};
}

std::pair<VectorField, ScalarField> residual_product_harmonic(const QuaternionField& p,
                                                              const QuaternionField& q) {
  require_same_frame(p.scalar, q.scalar, "residual_product_harmonic");
  const ScalarField &a = p.scalar, &b = q.scalar;
  const VectorField &u = p.vector, &v = q.vector;
  ScalarField divu = div(u), divv = div(v);
  VectorField eps_pq = divu * v - divv * u - rational(2) * dirderiv(v, u);
  ScalarField div_im_pq = a * divv + b * divu + rational(2) * dot(v, rot(u));
  return {std::move(eps_pq), std::move(div_im_pq)};
}

std::pair<VectorField, ScalarField> residual_product_pure(const QuaternionField& p,
                                                          const QuaternionField& q) {
  require_same_frame(p.scalar, q.scalar, "residual_product_pure");
  if (classify(p).classification != HarmonicClass::PureHarmonic)
    throw std::invalid_argument("residual_product_pure: first argument is not pure harmonic");
  if (classify(q).classification != HarmonicClass::PureHarmonic)
    throw std::invalid_argument("residual_product_pure: second argument is not pure harmonic");
  const VectorField &u = p.vector, &v = q.vector;
  return {rational(-2) * dirderiv(v, u), rational(2) * dot(v, rot(u))};
}

ScalarField modulus_squared(const QuaternionField& p) {
  return p.scalar * p.scalar + dot(p.vector, p.vector);
}

ScalarField modulus_squared_laplacian_field(const QuaternionField& p) {
  return laplacian(modulus_squared(p));
}

MaxModulusReport max_modulus_check(const QuaternionField& p, double tol) {
  if (p.backend() != Backend::Grid)
    throw std::invalid_argument(
        "max_modulus_check: needs the grid backend (interior/boundary split)");
  const Domain& d = *p.domain();
  MaxModulusReport r{0.0, 0.0, tol, false};
  for (std::size_t n = 0; n < d.node_count(); ++n) {
    double m = modulus(node_value(p, n));
    if (d.is_boundary(n))
      r.boundary_max = std::max(r.boundary_max, m);
    else
      r.interior_max = std::max(r.interior_max, m);
  }
  r.pass = r.interior_max <= r.boundary_max + tol;
  return r;
}

}  // namespace qharm
