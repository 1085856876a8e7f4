#pragma once

#include <string>
#include <utility>

#include "qharm/calculus.hpp"

namespace qharm {

enum class HarmonicClass { NotHarmonic, Harmonic, PureHarmonic };

std::string harmonic_class_name(HarmonicClass c);

struct ResidualReport {
  double epsilon_max;  // max |grad Re p - rot Im p| over the evaluation set
  double div_max;      // max |div Im p|
  HarmonicClass classification;
  double tol;
  double scale;  // second-difference scale behind a computed grid tolerance
  Backend backend;
  DomainPtr domain;
};

// Harmonic residual eps(p) = grad(Re p) - rot(Im p); zero exactly on harmonic
// fields.
VectorField residual(const QuaternionField& p);

ResidualReport classify(const QuaternionField& p, double tol);
// Default tolerance: 1e-10 (polynomial), C h^2 S (grid) with S computed from p.
ResidualReport classify(const QuaternionField& p);

// Assembled right-hand sides for the product residual of pq, valid for any
// smooth p={a,u}, q={b,v}:
//   eps(pq)      = b eps(p) + a eps(q) + v x eps(p) + u x eps(q)
//                  + (div u) v - (div v) u - 2 nabla_v u
//   div Im(pq)   = a div v + b div u + u.eps(q) + v.eps(p) + 2 v.rot u
std::pair<VectorField, ScalarField> residual_product_general(const QuaternionField& p,
                                                             const QuaternionField& q);

// Reduced forms when eps(p) = eps(q) = 0:
//   eps(pq)    = (div u) v - (div v) u - 2 nabla_v u
//   div Im(pq) = a div v + b div u + 2 v.rot u
std::pair<VectorField, ScalarField> residual_product_harmonic(const QuaternionField& p,
                                                              const QuaternionField& q);

// Fully reduced forms for pure harmonic p, q:
//   eps(pq) = -2 nabla_v u,  div Im(pq) = 2 v.rot u
// Throws (naming the offending argument) unless both classify pure harmonic.
std::pair<VectorField, ScalarField> residual_product_pure(const QuaternionField& p,
                                                          const QuaternionField& q);

// laplacian(|p|^2); for axial elements this equals 2(|grad Re p|^2 + |rot Im p|^2)
// and is nonnegative. Validation against the axial structural equations lives
// in the axial module.
ScalarField modulus_squared_laplacian_field(const QuaternionField& p);

ScalarField modulus_squared(const QuaternionField& p);

struct MaxModulusReport {
  double interior_max;
  double boundary_max;
  double tol;
  bool pass;  // interior_max <= boundary_max + tol
};

// Discrete maximum-modulus check on a grid field. The continuum statement is
// an equality; on a lattice the interior can only fall short, so the check is
// the inequality with slack tol.
MaxModulusReport max_modulus_check(const QuaternionField& p, double tol);

}  // namespace qharm
