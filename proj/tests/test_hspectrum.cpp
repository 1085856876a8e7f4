#include <doctest.h>

#include <cmath>

#include "qharm/ensembles.hpp"
#include "qharm/hspectrum.hpp"

using namespace qharm;

namespace {
DomainPtr unit_box(double h = 0.25) { return Domain::box({-1, -1, -1}, {1, 1, 1}, h); }
DomainPtr unit_ball(double h = 0.25) { return Domain::ball({0, 0, 0}, 1.0, h); }
Poly x() { return Poly::variable(0); }
Poly y() { return Poly::variable(1); }

bool poly_zero(const VectorField& u) {
  return u.component(0).poly().is_zero() && u.component(1).poly().is_zero() &&
         u.component(2).poly().is_zero();
}
}  // namespace

TEST_CASE("dirac evaluation") {
  auto dom = unit_box();
  QuaternionField p{ScalarField::polynomial(x(), dom),
                    VectorField::polynomial({}, {}, y(), dom)};
  Quaternion v = apply(DiracFunctional{{0.5, 0, 0}}, p);
  CHECK(v == Quaternion{0.5, {0, 0, 0}});
  QuaternionField unit = QuaternionField::unit(Backend::Polynomial, dom);
  CHECK(apply(DiracFunctional{{-0.3, 0.9, 0.2}}, unit) == Quaternion{1, {0, 0, 0}});
  CHECK_THROWS_AS(apply(DiracFunctional{{3, 0, 0}}, p), std::domain_error);
}

TEST_CASE("h_action basics and module law") {
  auto dom = unit_box();
  QuaternionField p{ScalarField::polynomial(x(), dom),
                    VectorField::polynomial({}, {}, y(), dom)};
  QuaternionField same = h_action(Quaternion{1, {}}, p);
  CHECK(same.scalar.poly() == x());
  CHECK(same.vector.component(2).poly() == y());

  // exact dyadic components keep the polynomial arithmetic exact
  Quaternion a{0.5, {-0.25, 1.5, 2}};
  Quaternion b{-1.25, {0.75, 0.5, -2.5}};
  QuaternionField lhs = h_action(a, h_action(b, p));
  QuaternionField rhs = h_action(qmul(a, b), p);
  QuaternionField diff = lhs - rhs;
  CHECK(diff.scalar.poly().is_zero());
  CHECK(poly_zero(diff.vector));

  // additivity in a
  QuaternionField sum = h_action(a, p) + h_action(b, p);
  QuaternionField both = h_action(a + b, p);
  QuaternionField d2 = sum - both;
  CHECK(d2.scalar.poly().is_zero());
  CHECK(poly_zero(d2.vector));
}

TEST_CASE("h_action preserves pure harmonicity with zero residual") {
  SplitMix64 rng(103);
  auto dom = unit_box();
  for (int t = 0; t < 12; ++t) {
    QuaternionField p = rand_pure_field(rng, dom, 3);
    Quaternion a = rand_quaternion(rng, 2.0);
    QuaternionField ap = h_action(a, p);
    ResidualReport r = classify(ap, 0.0);
    CHECK(r.classification == HarmonicClass::PureHarmonic);
    CHECK(r.epsilon_max == 0.0);
    CHECK(r.div_max == 0.0);
  }
}

TEST_CASE("H-linearity of evaluation") {
  SplitMix64 rng(107);
  auto dom = unit_box();
  for (int t = 0; t < 10; ++t) {
    QuaternionField p{rand_scalar_field(rng, dom, 3), rand_vector_field(rng, dom, 3)};
    Quaternion a = rand_quaternion(rng, 2.0);
    Vec3 m{rng.next_double() * 2 - 1, rng.next_double() * 2 - 1, rng.next_double() * 2 - 1};
    DiracFunctional theta{m};
    Quaternion lhs = apply(theta, h_action(a, p));
    Quaternion rhs = qmul(a, apply(theta, p));
    CHECK(modulus(lhs - rhs) <= 1e-12 * (1 + modulus(rhs)));
  }
}

TEST_CASE("functional_norm") {
  auto dom = unit_ball(0.2);
  std::vector<QuaternionField> probes;
  probes.push_back(QuaternionField::unit(Backend::Polynomial, dom));
  DiracFunctional theta{{0.3, -0.1, 0.4}};
  CHECK(functional_norm(theta, probes) == 1.0);

  SplitMix64 rng(109);
  for (int t = 0; t < 20; ++t)
    probes.push_back(rand_planar_element(rng, dom, 3).field);
  double n = functional_norm(theta, probes);
  CHECK(n == doctest::Approx(1.0).epsilon(1e-12));

  // a boundary-max point saturates its probe's ratio
  const QuaternionField& probe = probes[1];
  double best = -1;
  Vec3 argmax{};
  for (const Vec3& node : dom->nodes()) {
    double m = modulus(evaluate(probe, node));
    if (m > best) {
      best = m;
      argmax = node;
    }
  }
  double ratio = modulus(evaluate(probe, argmax)) / sup_norm(probe);
  CHECK(ratio == doctest::Approx(1.0).epsilon(1e-12));

  std::vector<QuaternionField> empty;
  CHECK_THROWS_AS(functional_norm(theta, empty), std::invalid_argument);
  std::vector<QuaternionField> no_unit{probes[1]};
  CHECK_THROWS_AS(functional_norm(theta, no_unit), std::invalid_argument);
}

TEST_CASE("evaluation inequality across nodes") {
  SplitMix64 rng(113);
  auto dom = unit_ball(0.25);
  for (int t = 0; t < 5; ++t) {
    QuaternionField p = rand_planar_element(rng, dom, 3).field;
    double sup = sup_norm(p);
    for (const Vec3& node : dom->nodes())
      CHECK(modulus(evaluate(p, node)) <= sup + 1e-12);
  }
}

TEST_CASE("multiplicativity: dirac passes exactly, averaged functional fails") {
  auto dom = unit_box();
  std::vector<std::pair<AxialElement, AxialElement>> pairs;
  AxialElement pz = build_planar(Vec3{0, 0, 1}, CPoly::z(), dom);
  pairs.emplace_back(pz, pz);
  pairs.emplace_back(build_planar(Vec3{1, 0, 0}, CPoly::zpow(2), dom),
                     build_planar(Vec3{1, 0, 0}, CPoly::z(), dom));

  MultiplicativityReport good =
      multiplicativity_check(DiracFunctional{{0.3, 0.25, -0.5}}, pairs, 1e-12);
  CHECK(good.pass);
  CHECK(good.max_residual <= 1e-15);

  // unit pair: residual 0 for any functional normalizing the unit
  std::vector<std::pair<AxialElement, AxialElement>> unit_pair;
  AxialElement one = build_planar(Vec3{0, 0, 1}, CPoly::one(), dom);
  unit_pair.emplace_back(one, one);
  MultiplicativityReport avg_unit = multiplicativity_check(
      average_functional({0.5, 0, 0}, {-0.5, 0, 0}), unit_pair, 1e-12);
  CHECK(avg_unit.pass);

  // average of two separated diracs: (y(m1) - y(m2))^2 / 4 != 0 on the pair (z, z)
  Vec3 m1{0.5, 0.2, 0}, m2{-0.3, -0.2, 0};
  MultiplicativityReport bad =
      multiplicativity_check(average_functional(m1, m2), pairs, 1e-12);
  CHECK_FALSE(bad.pass);
  // in-plane separation for the e3 element is |(0.8, 0.4)|; residual d^2/4
  double d2 = 0.8 * 0.8 + 0.4 * 0.4;
  CHECK(bad.residuals[0] == doctest::Approx(d2 / 4).epsilon(1e-12));

  // mismatched axes inside a pair
  std::vector<std::pair<AxialElement, AxialElement>> mixed;
  mixed.emplace_back(pz, build_planar(Vec3{1, 0, 0}, CPoly::z(), dom));
  CHECK_THROWS_AS(multiplicativity_check(DiracFunctional{{0, 0, 0}}, mixed, 1e-12),
                  std::invalid_argument);
}

TEST_CASE("panel readings and recover_point") {
  auto dom = unit_ball(0.25);
  GeneratorPanel panel = GeneratorPanel::standard(dom);
  Vec3 m{0.3, -0.2, 0.5};
  auto readings = panel_readings(panel, m);
  // the e3 element reads {m1, m2 e3}
  CHECK(readings[2].re == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(readings[2].im.z == doctest::Approx(-0.2).epsilon(1e-15));
  RecoverResult rec = recover_point(readings, panel);
  CHECK(rec.point.x == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(rec.point.y == doctest::Approx(-0.2).epsilon(1e-15));
  CHECK(rec.point.z == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(rec.inconsistency <= 1e-15);

  // center of a centered ball recovers to the origin
  RecoverResult center = recover_point(panel_readings(panel, {0, 0, 0}), panel);
  CHECK(norm(center.point) == 0.0);

  // readings mixed from two distinct points disagree
  auto r1 = panel_readings(panel, {0.4, 0.1, -0.2});
  auto r2 = panel_readings(panel, {-0.1, 0.3, 0.5});
  std::array<Quaternion, 3> mixed{r1[0], r2[1], r2[2]};
  RecoverResult bad = recover_point(mixed, panel);
  CHECK(bad.inconsistency > 0.05);
  CHECK_THROWS_AS(recover_point_checked(mixed, panel, 1e-9), std::invalid_argument);
}

TEST_CASE("round trip over random points and rotated panels") {
  SplitMix64 rng(127);
  auto dom = unit_ball(0.25);
  GeneratorPanel std_panel = GeneratorPanel::standard(dom);
  GeneratorPanel rot_panel = GeneratorPanel::from_rotation(
      QuaternionQ{rational(1), {rational(2), rational(-1), rational(3)}}, dom);
  for (const GeneratorPanel& panel : {std_panel, rot_panel}) {
    for (int t = 0; t < 50; ++t) {
      Vec3 m{rng.next_double() - 0.5, rng.next_double() - 0.5, rng.next_double() - 0.5};
      RecoverResult rec = recover_point(panel_readings(panel, m), panel);
      CHECK(norm(rec.point - m) <= 1e-12);
      CHECK(rec.inconsistency <= 1e-12);
    }
  }
}

TEST_CASE("totality: nodes distinguish nonzero ensemble members") {
  SplitMix64 rng(131);
  auto dom = unit_ball(0.25);
  for (int t = 0; t < 10; ++t) {
    QuaternionField p = rand_pure_field(rng, dom, 3);
    double best = 0;
    for (const Vec3& node : dom->nodes())
      best = std::max(best, modulus(evaluate(p, node)));
    bool zero_field = p.scalar.poly().is_zero() && poly_zero(p.vector);
    if (!zero_field) CHECK(best > 0.0);
  }
}

TEST_CASE("spectrum scan accepts every node and rejects injected functionals") {
  auto dom = unit_ball(0.25);
  GeneratorPanel panel = GeneratorPanel::standard(dom);
  ScanReport rep = spectrum_scan(panel, dom, 1e-9);
  CHECK(rep.all_nodes_passed);
  CHECK(rep.accepted.size() == dom->node_count());
  for (std::size_t n = 0; n < dom->node_count(); ++n) {
    CHECK(rep.entries[n].passed);
    CHECK(norm(rep.entries[n].recovered - dom->node(n)) <= 1e-12);
    CHECK(rep.entries[n].inconsistency <= 1e-12);
    CHECK(rep.entries[n].norm == doctest::Approx(1.0).epsilon(1e-12));
  }

  std::vector<Candidate> cands;
  cands.push_back({"avg", average_functional({0.5, 0.2, 0}, {-0.4, -0.2, 0.1})});
  cands.push_back({"dirac", as_functional(DiracFunctional{{0.25, 0.25, 0.25}})});
  ScanReport crep = spectrum_scan_candidates(panel, cands, 1e-9);
  CHECK_FALSE(crep.entries[0].passed);  // rejected by multiplicativity
  CHECK(crep.entries[0].max_mult_residual > 1e-3);
  CHECK(crep.entries[1].passed);

  // degenerate: no candidates, empty report
  ScanReport empty = spectrum_scan_candidates(panel, {}, 1e-9);
  CHECK(empty.entries.empty());
  CHECK(empty.accepted.empty());
  CHECK(empty.all_nodes_passed);
}
