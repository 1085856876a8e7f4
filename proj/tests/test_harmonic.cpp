#include <doctest.h>

#include "qharm/ensembles.hpp"
#include "qharm/harmonic.hpp"

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

QuaternionField qf(Poly s, Poly v1, Poly v2, Poly v3, const DomainPtr& dom) {
  return {ScalarField::polynomial(std::move(s), dom),
          VectorField::polynomial(std::move(v1), std::move(v2), std::move(v3), dom)};
}
}  // namespace

TEST_CASE("residual examples") {
  auto dom = unit_box();
  // p = {x1, 0}: eps = (1,0,0)
  VectorField e1 = residual(qf(x(), {}, {}, {}, dom));
  CHECK(e1.component(0).poly() == Poly::constant(rational(1)));
  CHECK(e1.component(1).poly().is_zero());
  // p = {x1, x2 e3}: eps = 0
  CHECK(poly_zero(residual(qf(x(), {}, {}, y(), dom))));
  // p = {x1^2 - x2^2, 2 x1 x2 e3}: eps = 0
  CHECK(poly_zero(residual(qf(x() * x() - y() * y(), {}, {}, rational(2) * x() * y(), dom))));
}

TEST_CASE("classify examples") {
  auto dom = unit_box();
  ResidualReport pure = classify(qf(x(), {}, {}, y(), dom), 1e-12);
  CHECK(pure.classification == HarmonicClass::PureHarmonic);
  CHECK(pure.epsilon_max == 0.0);
  CHECK(pure.div_max == 0.0);

  ResidualReport bad = classify(qf(x(), {}, {}, {}, dom), 1e-12);
  CHECK(bad.classification == HarmonicClass::NotHarmonic);
  CHECK(bad.epsilon_max > 0.5);

  // harmonic but not pure: u = grad(x1^2) has rot u = 0 = grad(0)... use
  // {0, (x1,0,0)}: eps = -rot u = 0, div u = 1
  ResidualReport h = classify(qf({}, x(), {}, {}, dom), 1e-12);
  CHECK(h.classification == HarmonicClass::Harmonic);
  CHECK(h.div_max == doctest::Approx(1.0));

  CHECK_THROWS_AS(classify(qf({}, {}, {}, {}, dom), -0.5), std::invalid_argument);
}

TEST_CASE("default classification tolerance policy") {
  auto dom = unit_box();
  ResidualReport poly = classify(qf(x(), {}, {}, y(), dom));
  CHECK(poly.tol == 1e-10);
  auto grid_dom = unit_box(0.2);
  QuaternionField sampled = sample(qf(x() * x(), {}, {}, y() * z(), grid_dom), grid_dom);
  ResidualReport grid = classify(sampled);
  CHECK(grid.scale > 0.0);
  CHECK(grid.tol == doctest::Approx(10.0 * 0.2 * 0.2 * grid.scale));
}

TEST_CASE("E1/E2 assembled RHS matches direct computation exactly") {
  SplitMix64 rng(67);
  auto dom = unit_box();
  for (int t = 0; t < 20; ++t) {
    QuaternionField p{rand_scalar_field(rng, dom, 3), rand_vector_field(rng, dom, 3)};
    QuaternionField q{rand_scalar_field(rng, dom, 3), rand_vector_field(rng, dom, 3)};
    QuaternionField pq = pointwise_product(p, q);
    auto [e1, e2] = residual_product_general(p, q);
    CHECK(poly_zero(residual(pq) - e1));
    CHECK((div(pq.vector) - e2).poly().is_zero());
  }
}

TEST_CASE("trivial product: p = q = {1,0}") {
  auto dom = unit_box();
  QuaternionField unit = QuaternionField::unit(Backend::Polynomial, dom);
  auto [e1, e2] = residual_product_general(unit, unit);
  CHECK(poly_zero(e1));
  CHECK(e2.poly().is_zero());
}

TEST_CASE("reduction chain E1 -> E3 -> E5") {
  SplitMix64 rng(71);
  auto dom = unit_box();
  for (int t = 0; t < 10; ++t) {
    // harmonic, generically not pure
    QuaternionField p = rand_harmonic_field(rng, dom);
    QuaternionField q = rand_harmonic_field(rng, dom);
    REQUIRE(poly_zero(residual(p)));
    REQUIRE(poly_zero(residual(q)));
    auto [e1, e2] = residual_product_general(p, q);
    auto [e3, e4] = residual_product_harmonic(p, q);
    CHECK(poly_zero(e1 - e3));
    CHECK((e2 - e4).poly().is_zero());

    // pure harmonic: E3 collapses to E5
    QuaternionField pp = rand_pure_field(rng, dom, 3);
    QuaternionField qq = rand_pure_field(rng, dom, 3);
    auto [e3p, e4p] = residual_product_harmonic(pp, qq);
    auto [e5, e5d] = residual_product_pure(pp, qq);
    CHECK(poly_zero(e3p - e5));
    CHECK((e4p - e5d).poly().is_zero());
    // and the E5 form matches the direct residual of the product
    QuaternionField prod = pointwise_product(pp, qq);
    CHECK(poly_zero(residual(prod) - e5));
    CHECK((div(prod.vector) - e5d).poly().is_zero());
  }
}

TEST_CASE("residual_product_pure rejects non-pure arguments by name") {
  auto dom = unit_box();
  QuaternionField pure = qf(x(), {}, {}, y(), dom);
  QuaternionField not_pure = qf({}, x(), {}, {}, dom);
  CHECK_THROWS_WITH_AS(residual_product_pure(not_pure, pure),
                       doctest::Contains("first argument"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(residual_product_pure(pure, not_pure),
                       doctest::Contains("second argument"), std::invalid_argument);
}

TEST_CASE("worked pure-product example: eps(pq) = -4 x2 x3 e3") {
  auto dom = unit_box();
  QuaternionField p = qf(x() * x() - y() * y(), {}, {}, rational(2) * x() * y(), dom);
  QuaternionField q = qf(y(), z(), {}, {}, dom);
  auto [e5, e5d] = residual_product_pure(p, q);
  CHECK(e5.component(0).poly().is_zero());
  CHECK(e5.component(1).poly().is_zero());
  CHECK(e5.component(2).poly() == rational(-4) * y() * z());
  // direct route agrees
  QuaternionField pq = pointwise_product(p, q);
  VectorField eps = residual(pq);
  CHECK(eps.component(2).poly() == rational(-4) * y() * z());
  CHECK((div(pq.vector) - e5d).poly().is_zero());
  CHECK(e5d.poly() == rational(4) * x() * z());
}

TEST_CASE("eps(p^2) = 0 for p = {x1, x2 e3}") {
  auto dom = unit_box();
  QuaternionField p = qf(x(), {}, {}, y(), dom);
  auto [e5, e5d] = residual_product_pure(p, p);
  CHECK(poly_zero(e5));
  CHECK(e5d.poly().is_zero());
}

TEST_CASE("unit right factor gives zero pure-product residuals") {
  auto dom = unit_box();
  QuaternionField p = qf(x() * x() - y() * y(), {}, {}, rational(2) * x() * y(), dom);
  auto [e5, e5d] = residual_product_pure(p, QuaternionField::unit(Backend::Polynomial, dom));
  CHECK(poly_zero(e5));
  CHECK(e5d.poly().is_zero());
}

TEST_CASE("harmonic classes are linear") {
  SplitMix64 rng(73);
  auto dom = unit_box();
  for (int t = 0; t < 10; ++t) {
    QuaternionField p = rand_harmonic_field(rng, dom), q = rand_harmonic_field(rng, dom);
    QuaternionField combo = rand_rational(rng) * p + rand_rational(rng) * q;
    CHECK(classify(combo, 0.0).classification != HarmonicClass::NotHarmonic);

    QuaternionField pp = rand_pure_field(rng, dom, 3), qq = rand_pure_field(rng, dom, 3);
    QuaternionField pcombo = rand_rational(rng) * pp + rand_rational(rng) * qq;
    CHECK(classify(pcombo, 0.0).classification == HarmonicClass::PureHarmonic);
  }
}

TEST_CASE("modulus squared laplacian examples") {
  auto dom = unit_box();
  // p = {x1, x2 e3}: |p|^2 = x1^2 + x2^2, laplacian 4
  QuaternionField p = qf(x(), {}, {}, y(), dom);
  CHECK(modulus_squared_laplacian_field(p).poly() == Poly::constant(rational(4)));
  // constant field
  CHECK(modulus_squared_laplacian_field(QuaternionField::unit(Backend::Polynomial, dom))
            .poly()
            .is_zero());
  // p = {x1^2-x2^2, 2x1x2 e3}: laplacian |p|^2 = 16(x1^2+x2^2)
  QuaternionField p2 = qf(x() * x() - y() * y(), {}, {}, rational(2) * x() * y(), dom);
  CHECK(modulus_squared_laplacian_field(p2).poly() ==
        rational(16) * (x() * x() + y() * y()));
}

TEST_CASE("max modulus check") {
  auto ball = Domain::ball({0, 0, 0}, 1.0, 0.1);
  QuaternionField p = sample(qf(x(), {}, {}, y(), ball), ball);
  MaxModulusReport r = max_modulus_check(p, 10 * 0.1);
  CHECK(r.pass);
  CHECK(r.boundary_max == doctest::Approx(1.0).epsilon(0.05));

  QuaternionField c = QuaternionField::constant({rational(-3), {}}, Backend::Grid, ball);
  MaxModulusReport rc = max_modulus_check(c, 0.0);
  CHECK(rc.pass);
  CHECK(rc.interior_max == doctest::Approx(3.0));
  CHECK(rc.boundary_max == doctest::Approx(3.0));

  // non-harmonic bump: interior max 1 at the center, tiny on the boundary
  // band. At h = 0.05 the 10h slack is 0.5, far below the interior peak.
  auto fine = Domain::ball({0, 0, 0}, 1.0, 0.05);
  Poly bump = Poly::constant(rational(1)) - x() * x() - y() * y() - z() * z();
  QuaternionField pb = sample(qf(bump, {}, {}, {}, fine), fine);
  MaxModulusReport rb = max_modulus_check(pb, 10 * 0.05);
  CHECK_FALSE(rb.pass);
  CHECK(rb.interior_max == doctest::Approx(1.0));
  CHECK(rb.boundary_max < 0.1);

  CHECK_THROWS_AS(max_modulus_check(qf(x(), {}, {}, {}, ball), 0.1), std::invalid_argument);
}

TEST_CASE("max modulus principle holds on box domains too") {
  SplitMix64 rng(211);
  auto box = Domain::box({-1, -1, -1}, {1, 1, 1}, 0.1);
  for (int t = 0; t < 10; ++t) {
    QuaternionField p = sample(rand_pure_field(rng, box, 3), box);
    MaxModulusReport r = max_modulus_check(p, 10 * box->spacing());
    CAPTURE(t);
    CHECK(r.pass);
  }
}
