#pragma once

#include <string>
#include <vector>

#include "qharm/field.hpp"

namespace qharm {

// Flat-R^3 differential operators. Polynomial backend differentiates exactly;
// grid backend uses centered second-order stencils with one-sided
// second-order stencils where a neighbor is missing.
VectorField grad(const ScalarField& f);
ScalarField div(const VectorField& u);
VectorField rot(const VectorField& u);
ScalarField laplacian(const ScalarField& f);  // div(grad f), stencils composed

// Directional derivative nabla_v u: component i is v . grad(u_i).
VectorField dirderiv(const VectorField& v, const VectorField& u);

ScalarField dot(const VectorField& u, const VectorField& v);
VectorField wedge(const VectorField& u, const VectorField& v);

struct IdentityResult {
  std::string name;
  double max_residual;
  double tolerance;
  bool pass;
};

struct IdentityReport {
  std::vector<IdentityResult> identities;
  Backend backend;
  double scale;  // second-difference scale used for grid tolerances
  bool all_pass() const;
};

// The six product identities relating grad/div/rot/dirderiv:
//   grad(ab)        = b grad a + a grad b
//   grad(u.v)       = dirderiv(v,u) + dirderiv(u,v) + v x rot u + u x rot v
//   rot(a v)        = grad a x v + a rot v
//   rot(u x v)      = dirderiv(v,u) - dirderiv(u,v) - (div u) v + (div v) u
//   div(u x v)      = v . rot u - u . rot v
//   div(a v)        = grad a . v + a div v
// Residuals are max-norms over interior nodes at distance >= 2h from the
// boundary. tol < 0 selects the default: 0 on the polynomial backend,
// C h^2 S on the grid backend.
IdentityReport identity_battery_f1(const VectorField& u, const VectorField& v,
                                   const ScalarField& a, const ScalarField& b,
                                   double tol = -1.0);

// Default grid tolerance policy: grid_tolerance_constant * h^2 * scale.
inline constexpr double grid_tolerance_constant = 10.0;
inline constexpr double interior_margin_h = 2.0;

}  // namespace qharm
