#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "qharm/harmonic.hpp"

namespace qharm {

// Complex polynomial f(z) = sum c_k z^k with exact rational coefficients,
// trailing zeros stripped. Supplies the conjugate pair phi = Re f, psi = Im f.
class CPoly {
 public:
  CPoly() = default;
  explicit CPoly(std::vector<std::pair<Rational, Rational>> coeffs);

  static CPoly one() { return CPoly({{rational(1), rational(0)}}); }
  static CPoly z() { return CPoly({{rational(0), rational(0)}, {rational(1), rational(0)}}); }
  static CPoly zpow(int k);

  bool is_zero() const { return c_.size() == 0; }
  int degree() const { return c_.empty() ? 0 : (int)c_.size() - 1; }
  const std::vector<std::pair<Rational, Rational>>& coeffs() const { return c_; }

  friend CPoly operator+(const CPoly& a, const CPoly& b);
  friend CPoly operator*(const CPoly& a, const CPoly& b);
  friend CPoly operator*(const Rational& s, const CPoly& f);
  friend bool operator==(const CPoly& a, const CPoly& b) { return a.c_ == b.c_; }

  std::complex<double> eval(std::complex<double> z) const;

  // Expand f((x.a) + i (x.b)) into the exact trivariate pair (Re, Im).
  std::pair<Poly, Poly> expand(const Vec3Q& a, const Vec3Q& b) const;

 private:
  std::vector<std::pair<Rational, Rational>> c_;
  void strip();
};

// Exact right-handed orthonormal frame (a, b, omega): all pairwise dots and
// the cross relation a x b = omega hold in rational arithmetic.
struct PlanarFrame {
  Vec3Q a, b, omega;
  bool exactly_orthonormal() const;
};

// Frame for the axis omega per the deterministic rule: k is the first
// standard basis vector with |omega x k| > 1/2, b = normalize(omega x k),
// a = b x omega. Exact for axis-aligned omega, double-rounded otherwise.
PlanarFrame frame_from_omega(const Vec3& omega);

// Columns of the rotation matrix of a nonzero rational quaternion: an exactly
// orthonormal rational frame. Backbone of the seeded exact ensembles.
PlanarFrame frame_from_rotation(const QuaternionQ& q);

enum class AxisKind { Planar, Radial };

// Stereographic chart of the unit sphere around a radial pole. The projection
// point is antipodal to the domain's direction from the pole, so the chart is
// regular on the geodesic projection of the closed domain.
struct RadialChart {
  Vec3 pole;
  Vec3 t1, t2, d;  // right-handed frame, d points from pole to domain center

  Vec3 unit(const Vec3& x) const;                 // e(x) = (x - pole)/|x - pole|
  std::complex<double> zeta(const Vec3& x) const; // chart coordinate of e(x)
};

struct AxisDescriptor {
  AxisKind kind{};
  PlanarFrame frame;  // planar
  RadialChart chart;  // radial

  Vec3 omega() const { return to_vec3(frame.omega); }
  bool same_axis(const AxisDescriptor& o) const;
  std::string describe() const;
};

// Element of an axial algebra: generator f, axis data, and the realized
// quaternion field p = {phi, psi e}.
struct AxialElement {
  AxisDescriptor axis;
  CPoly generator;
  QuaternionField field;

  // Closed-form (phi, psi) at a point: polynomial evaluation for planar
  // elements, chart evaluation for radial ones. Works at any point of the
  // closed domain, independent of grid interpolation.
  std::pair<double, double> phi_psi(const Vec3& x) const;
  Vec3 axis_direction(const Vec3& x) const;  // omega, or e(x) for radial
};

// Planar algebra element p = {Re f(z), Im f(z) omega}, z = (x.a) + i (x.b).
// Polynomial backend: exact trivariate polynomials. Pure harmonic.
AxialElement build_planar(const PlanarFrame& frame, const CPoly& f, const DomainPtr& dom,
                          Backend backend = Backend::Polynomial);
AxialElement build_planar(const Vec3& omega, const CPoly& f, const DomainPtr& dom,
                          Backend backend = Backend::Polynomial);

// Radial algebra element p = {phi, psi e}, e = (x-O)/|x-O|, phi + i psi =
// f(zeta(x)). Grid backend only (closed-form node evaluation). Harmonic but
// generically not pure: div Im p = 2 psi / r.
AxialElement build_radial(const Vec3& pole, const CPoly& f, const DomainPtr& dom);

// Internal product {phi l - psi m, (phi m + psi l) e}; the generator of the
// result is the generator product. Requires identical axes.
AxialElement algebra_mul(const AxialElement& p, const AxialElement& q);

struct AxialCheck {
  std::string name;
  double max_residual;
  bool pass;
};

struct AxialValidation {
  std::vector<AxialCheck> checks;
  double tol;
  bool pass;
  bool is_pure;  // div Im p below tolerance
  ResidualReport report;
};

// Structural equations of axial elements: axis constancy of phi and psi,
// geodesic axis, Frobenius integrability, harmonicity of phi and psi, the
// conjugacy relation grad psi = grad tau x grad phi, and the distance
// function's Laplacian (0 for planar tau, 2/r for radial tau).
AxialValidation validate_axial(const AxialElement& p, double tol = -1.0);

// laplacian(|p|^2) for a validated axial element; equals
// 2(|grad phi|^2 + |rot Im p|^2) and is nonnegative. Throws when validation
// fails at tolerance tol.
ScalarField modulus_squared_laplacian(const AxialElement& p, double tol = -1.0);

}  // namespace qharm
