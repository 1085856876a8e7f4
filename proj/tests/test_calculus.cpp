#include <doctest.h>

#include <cmath>

#include "qharm/calculus.hpp"
#include "qharm/ensembles.hpp"

using namespace qharm;

namespace {
DomainPtr unit_box(double h = 0.25) { return Domain::box({-1, -1, -1}, {1, 1, 1}, h); }
Poly x() { return Poly::variable(0); }
Poly y() { return Poly::variable(1); }
Poly z() { return Poly::variable(2); }

bool poly_zero(const VectorField& u) {
  return u.component(0).poly().is_zero() && u.component(1).poly().is_zero() &&
         u.component(2).poly().is_zero();
}
}  // namespace

TEST_CASE("grad on polynomials") {
  auto dom = unit_box();
  VectorField g = grad(ScalarField::polynomial(x() * y(), dom));
  CHECK(g.component(0).poly() == y());
  CHECK(g.component(1).poly() == x());
  CHECK(g.component(2).poly().is_zero());
  CHECK(poly_zero(grad(ScalarField::constant(rational(7), Backend::Polynomial, dom))));
}

TEST_CASE("div and rot on polynomials") {
  auto dom = unit_box();
  // div (x1, x2, x3) = 3
  CHECK(div(VectorField::polynomial(x(), y(), z(), dom)).poly() ==
        Poly::constant(rational(3)));
  // rot (0,0,x2) = (1,0,0)
  VectorField r = rot(VectorField::polynomial({}, {}, y(), dom));
  CHECK(r.component(0).poly() == Poly::constant(rational(1)));
  CHECK(r.component(1).poly().is_zero());
  CHECK(r.component(2).poly().is_zero());
  // rot (-x2, x1, 0) = (0,0,2)
  VectorField rigid = rot(VectorField::polynomial(-y(), x(), {}, dom));
  CHECK(rigid.component(2).poly() == Poly::constant(rational(2)));
  CHECK(rigid.component(0).poly().is_zero());
  // div rot u = 0 for u = (x2 x3, x1^2, 0)
  CHECK(div(rot(VectorField::polynomial(y() * z(), x() * x(), {}, dom))).poly().is_zero());
  // rot grad f = 0 for f = x1^2 x3
  CHECK(poly_zero(rot(grad(ScalarField::polynomial(x() * x() * z(), dom)))));
}

TEST_CASE("laplacian on polynomials") {
  auto dom = unit_box();
  CHECK(laplacian(ScalarField::polynomial(x() * x() - y() * y(), dom)).poly().is_zero());
  CHECK(laplacian(ScalarField::polynomial(x() * x(), dom)).poly() ==
        Poly::constant(rational(2)));
  CHECK(laplacian(ScalarField::polynomial(x() * y() * z(), dom)).poly().is_zero());
}

TEST_CASE("dirderiv on polynomials") {
  auto dom = unit_box();
  VectorField e1 = VectorField::constant({rational(1), rational(0), rational(0)},
                                         Backend::Polynomial, dom);
  VectorField u = VectorField::polynomial(x(), {}, {}, dom);
  VectorField d = dirderiv(e1, u);
  CHECK(d.component(0).poly() == Poly::constant(rational(1)));
  CHECK(d.component(1).poly().is_zero());

  // dirderiv(x3 e1, 2 x1 x2 e3) = 2 x2 x3 e3
  VectorField v = VectorField::polynomial(z(), {}, {}, dom);
  VectorField w = VectorField::polynomial({}, {}, rational(2) * x() * y(), dom);
  VectorField dw = dirderiv(v, w);
  CHECK(dw.component(2).poly() == rational(2) * y() * z());
  CHECK(dw.component(0).poly().is_zero());
  CHECK(dw.component(1).poly().is_zero());
}

TEST_CASE("dot and wedge") {
  auto dom = unit_box();
  VectorField e1 = VectorField::constant({rational(1), rational(0), rational(0)},
                                         Backend::Polynomial, dom);
  VectorField e2 = VectorField::constant({rational(0), rational(1), rational(0)},
                                         Backend::Polynomial, dom);
  VectorField w = wedge(e1, e2);
  CHECK(w.component(2).poly() == Poly::constant(rational(1)));
  CHECK(w.component(0).poly().is_zero());

  VectorField u = VectorField::polynomial(x(), Poly::constant(rational(1)), {}, dom);
  VectorField v = VectorField::polynomial({}, y(), Poly::constant(rational(1)), dom);
  CHECK(dot(u, wedge(u, v)).poly().is_zero());
  CHECK(poly_zero(wedge(u, u)));
}

TEST_CASE("operators are linear in each argument") {
  SplitMix64 rng(41);
  auto dom = unit_box();
  for (int t = 0; t < 5; ++t) {
    ScalarField f = rand_scalar_field(rng, dom, 3), g = rand_scalar_field(rng, dom, 3);
    Rational c = rand_rational(rng);
    VectorField u = rand_vector_field(rng, dom, 3), v = rand_vector_field(rng, dom, 3);
    CHECK(poly_zero(grad(f + c * g) - (grad(f) + c * grad(g))));
    CHECK((div(u + c * v) - (div(u) + c * div(v))).poly().is_zero());
    CHECK(poly_zero(rot(u + c * v) - (rot(u) + c * rot(v))));
    VectorField w = rand_vector_field(rng, dom, 2);
    CHECK(poly_zero(dirderiv(u + c * v, w) - (dirderiv(u, w) + c * dirderiv(v, w))));
    CHECK(poly_zero(dirderiv(w, u + c * v) - (dirderiv(w, u) + c * dirderiv(w, v))));
  }
}

TEST_CASE("rot grad = 0 and div rot = 0 exactly for random polynomials") {
  SplitMix64 rng(43);
  auto dom = unit_box();
  for (int t = 0; t < 20; ++t) {
    ScalarField f = rand_scalar_field(rng, dom, 5);
    CHECK(poly_zero(rot(grad(f))));
    VectorField u = rand_vector_field(rng, dom, 5);
    CHECK(div(rot(u)).poly().is_zero());
  }
}

TEST_CASE("polynomial derivatives cross-checked against central differences") {
  SplitMix64 rng(47);
  auto dom = unit_box();
  ScalarField f = rand_scalar_field(rng, dom, 4);
  VectorField g = grad(f);
  double delta = 1e-6;
  for (Vec3 pt : {Vec3{0.2, -0.4, 0.6}, Vec3{-0.8, 0.1, 0.3}}) {
    for (int a = 0; a < 3; ++a) {
      Vec3 hi = pt, lo = pt;
      hi[a] += delta;
      lo[a] -= delta;
      double fd = (evaluate(f, hi) - evaluate(f, lo)) / (2 * delta);
      CHECK(evaluate(g.component(a), pt) == doctest::Approx(fd).epsilon(1e-6));
    }
  }
}

TEST_CASE("grid stencils: centered difference exact on quadratics") {
  auto dom = Domain::box({0, 0, 0}, {1, 1, 1}, 0.1);
  ScalarField f = sample(ScalarField::polynomial(x() * x(), dom), dom);
  VectorField g = grad(f);
  // interior node (0.3, 0.5, 0.5): d/dx x^2 = 0.6 exactly under the stencil
  CHECK(evaluate(g.component(0), {0.3, 0.5, 0.5}) == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(evaluate(g.component(1), {0.3, 0.5, 0.5}) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("grid rot grad and div rot vanish away from the boundary") {
  SplitMix64 rng(53);
  auto dom = unit_box(0.2);
  ScalarField f = rand_scalar_field(rng, dom, 3, Backend::Grid);
  CHECK(max_abs_interior(rot(grad(f)), 2.0) <= 1e-12);
  VectorField u = rand_vector_field(rng, dom, 3, Backend::Grid);
  CHECK(max_abs_interior(div(rot(u)), 2.0) <= 1e-12);
}

TEST_CASE("identity battery: exact on the polynomial backend") {
  auto dom = unit_box();
  // the worked example fields
  VectorField u = VectorField::polynomial(y(), {}, {}, dom);
  VectorField v = VectorField::polynomial({}, z(), {}, dom);
  ScalarField a = ScalarField::polynomial(x(), dom);
  ScalarField b = ScalarField::polynomial(y(), dom);
  IdentityReport rep = identity_battery_f1(u, v, a, b);
  CHECK(rep.identities.size() == 6);
  for (const IdentityResult& id : rep.identities) {
    CAPTURE(id.name);
    CHECK(id.max_residual == 0.0);
    CHECK(id.pass);
  }
  CHECK(rep.all_pass());

  // zero fields
  VectorField zv = VectorField::zero(Backend::Polynomial, dom);
  ScalarField zs = ScalarField::zero(Backend::Polynomial, dom);
  IdentityReport zrep = identity_battery_f1(zv, zv, zs, zs);
  for (const IdentityResult& id : zrep.identities) CHECK(id.max_residual == 0.0);
}

TEST_CASE("identity battery: exact for random polynomial fields") {
  SplitMix64 rng(59);
  auto dom = unit_box();
  for (int t = 0; t < 10; ++t) {
    VectorField u = rand_vector_field(rng, dom, 4);
    VectorField v = rand_vector_field(rng, dom, 4);
    ScalarField a = rand_scalar_field(rng, dom, 4);
    ScalarField b = rand_scalar_field(rng, dom, 4);
    IdentityReport rep = identity_battery_f1(u, v, a, b);
    for (const IdentityResult& id : rep.identities) {
      CAPTURE(id.name);
      CHECK(id.max_residual == 0.0);
    }
  }
}

TEST_CASE("identity battery: grid residuals converge at second order") {
  SplitMix64 rng(61);
  Poly pu1 = rand_poly(rng, 3), pu2 = rand_poly(rng, 3), pu3 = rand_poly(rng, 3);
  Poly pv1 = rand_poly(rng, 3), pv2 = rand_poly(rng, 3), pv3 = rand_poly(rng, 3);
  Poly pa = rand_poly(rng, 3), pb = rand_poly(rng, 3);

  auto run = [&](double h) {
    auto dom = unit_box(h);
    VectorField u = sample(VectorField::polynomial(pu1, pu2, pu3, dom), dom);
    VectorField v = sample(VectorField::polynomial(pv1, pv2, pv3, dom), dom);
    ScalarField a = sample(ScalarField::polynomial(pa, dom), dom);
    ScalarField b = sample(ScalarField::polynomial(pb, dom), dom);
    return identity_battery_f1(u, v, a, b);
  };

  IdentityReport coarse = run(0.05);
  IdentityReport fine = run(0.025);
  CHECK(coarse.all_pass());
  CHECK(fine.all_pass());
  for (std::size_t i = 0; i < coarse.identities.size(); ++i) {
    double rc = coarse.identities[i].max_residual;
    double rf = fine.identities[i].max_residual;
    if (rc < 1e-12) continue;  // stencil-exact identity for these fields
    double ratio = rc / rf;
    CAPTURE(coarse.identities[i].name);
    CHECK(ratio >= 3.0);
    CHECK(ratio <= 5.0);
  }
}
