#include "qharm/ensembles.hpp"

#include <cmath>

#include <stdexcept>

namespace qharm {

Rational rand_rational(SplitMix64& rng, long max_num, long max_den) {
  return rational(rng.next_int(-max_num, max_num), rng.next_int(1, max_den));
}

Rational rand_rational_nonzero(SplitMix64& rng, long max_num, long max_den) {
  long n = 0;
  while (n == 0) n = rng.next_int(-max_num, max_num);
  return rational(n, rng.next_int(1, max_den));
}

Poly rand_poly(SplitMix64& rng, int deg, double density) {
  Poly p;
  for (int i = 0; i <= deg; ++i)
    for (int j = 0; i + j <= deg; ++j)
      for (int k = 0; i + j + k <= deg; ++k)
        if (rng.next_double() < density)
          p += Poly::monomial(rand_rational(rng), {i, j, k});
  if (p.is_zero()) p = Poly::constant(rand_rational_nonzero(rng));
  return p;
}

ScalarField rand_scalar_field(SplitMix64& rng, const DomainPtr& dom, int deg,
                              Backend backend) {
  ScalarField f = ScalarField::polynomial(rand_poly(rng, deg), dom);
  return backend == Backend::Polynomial ? f : sample(f, dom);
}

VectorField rand_vector_field(SplitMix64& rng, const DomainPtr& dom, int deg,
                              Backend backend) {
  ScalarField c1 = rand_scalar_field(rng, dom, deg, backend);
  ScalarField c2 = rand_scalar_field(rng, dom, deg, backend);
  ScalarField c3 = rand_scalar_field(rng, dom, deg, backend);
  return {std::move(c1), std::move(c2), std::move(c3)};
}

Poly rand_harmonic_poly(SplitMix64& rng) {
  auto mono = [](long c, int i, int j, int k) {
    return Poly::monomial(rational(c), {i, j, k});
  };
  // Degrees 0..3 of the solid harmonics with integer coefficients.
  static const auto basis = [&]() {
    std::vector<Poly> b;
    b.push_back(mono(1, 0, 0, 0));
    b.push_back(mono(1, 1, 0, 0));
    b.push_back(mono(1, 0, 1, 0));
    b.push_back(mono(1, 0, 0, 1));
    b.push_back(mono(1, 1, 1, 0));
    b.push_back(mono(1, 0, 1, 1));
    b.push_back(mono(1, 1, 0, 1));
    b.push_back(mono(1, 2, 0, 0) - mono(1, 0, 2, 0));
    b.push_back(mono(2, 0, 0, 2) - mono(1, 2, 0, 0) - mono(1, 0, 2, 0));
    b.push_back(mono(1, 3, 0, 0) - mono(3, 1, 2, 0));
    b.push_back(mono(1, 0, 3, 0) - mono(3, 2, 1, 0));
    b.push_back(mono(1, 2, 0, 1) - mono(1, 0, 2, 1));
    b.push_back(mono(1, 1, 1, 1));
    b.push_back(mono(4, 1, 0, 2) - mono(1, 3, 0, 0) - mono(1, 1, 2, 0));
    b.push_back(mono(4, 0, 1, 2) - mono(1, 0, 3, 0) - mono(1, 2, 1, 0));
    b.push_back(mono(2, 0, 0, 3) - mono(3, 2, 0, 1) - mono(3, 0, 2, 1));
    return b;
  }();
  Poly p;
  for (const Poly& e : basis)
    if (rng.next_double() < 0.4) p += rand_rational(rng, 3, 3) * e;
  if (p.is_zero()) p = rand_rational_nonzero(rng) * basis[rng.next_int(1, 3)];
  return p;
}

VectorField vector_potential(const VectorField& w) {
  if (w.backend() != Backend::Polynomial)
    throw std::invalid_argument("vector_potential: polynomial backend required");
  if (!div(w).poly().is_zero())
    throw std::invalid_argument("vector_potential: input must be divergence-free");
  // For homogeneous degree-d input, rot(w_d x x) = (d + 2) w_d.
  Poly a1, a2, a3;
  auto shift = [](const Poly::Exp& e, int axis) {
    Poly::Exp s = e;
    s[axis] += 1;
    return s;
  };
  const Poly* comp[3] = {&w.component(0).poly(), &w.component(1).poly(),
                         &w.component(2).poly()};
  for (int c = 0; c < 3; ++c)
    for (auto& [e, coef] : comp[c]->terms()) {
      int d = e[0] + e[1] + e[2];
      Rational s = coef / rational(d + 2);
      // (w x x)_1 = w2 x3 - w3 x2, (w x x)_2 = w3 x1 - w1 x3,
      // (w x x)_3 = w1 x2 - w2 x1, applied monomial-wise.
      switch (c) {
        case 0:
          a2 -= Poly::monomial(s, shift(e, 2));
          a3 += Poly::monomial(s, shift(e, 1));
          break;
        case 1:
          a1 += Poly::monomial(s, shift(e, 2));
          a3 -= Poly::monomial(s, shift(e, 0));
          break;
        case 2:
          a1 -= Poly::monomial(s, shift(e, 1));
          a2 += Poly::monomial(s, shift(e, 0));
          break;
      }
    }
  return VectorField::polynomial(std::move(a1), std::move(a2), std::move(a3),
                                 w.domain());
}

QuaternionField rand_harmonic_field(SplitMix64& rng, const DomainPtr& dom) {
  Poly alpha = rand_harmonic_poly(rng);
  ScalarField a = ScalarField::polynomial(alpha, dom);
  VectorField u = vector_potential(grad(a));
  // Any gradient keeps rot u = grad alpha; a non-harmonic potential makes
  // div u nonzero, so the field is harmonic without being pure.
  Poly gamma = rand_poly(rng, 3, 0.3);
  u = u + grad(ScalarField::polynomial(gamma, dom));
  return {std::move(a), std::move(u)};
}

PlanarFrame rand_rational_frame(SplitMix64& rng) {
  while (true) {
    QuaternionQ q{rational(rng.next_int(-5, 5)),
                  {rational(rng.next_int(-5, 5)), rational(rng.next_int(-5, 5)),
                   rational(rng.next_int(-5, 5))}};
    if (modulus_sq(q) == 0) continue;
    return frame_from_rotation(q);
  }
}

CPoly rand_generator(SplitMix64& rng, int max_degree, long max_num, long max_den) {
  int deg = (int)rng.next_int(1, max_degree);
  std::vector<std::pair<Rational, Rational>> c((std::size_t)deg + 1);
  for (auto& [re, im] : c) {
    re = rand_rational(rng, max_num, max_den);
    im = rand_rational(rng, max_num, max_den);
  }
  CPoly f(std::move(c));
  if (f.is_zero()) f = CPoly::z();
  return f;
}

AxialElement rand_planar_element(SplitMix64& rng, const DomainPtr& dom, int max_degree) {
  CPoly f = rand_generator(rng, max_degree);
  // Scale so sup |f| <= 2 on the disc covering the domain's planar shadow;
  // by the Bernstein inequality the in-plane gradient then stays O(deg),
  // keeping discrete boundary maxima representative.
  double rho = dom->shape() == Shape::Ball
                   ? norm(dom->center()) + dom->radius()
                   : std::max(norm(dom->lo()), norm(dom->hi()));
  double sup = 0.0;
  for (int k = 0; k < 64; ++k) {
    double t = 2 * 3.14159265358979323846 * k / 64;
    sup = std::max(sup, std::abs(f.eval({rho * std::cos(t), rho * std::sin(t)})));
  }
  if (sup > 2.0) f = Rational(2.0 / sup) * f;
  return build_planar(rand_rational_frame(rng), f, dom);
}

QuaternionField rand_pure_field(SplitMix64& rng, const DomainPtr& dom, int max_degree) {
  int parts = (int)rng.next_int(1, 3);
  QuaternionField sum = rand_rational_nonzero(rng) *
                        rand_planar_element(rng, dom, max_degree).field;
  for (int i = 1; i < parts; ++i)
    sum = sum + rand_rational_nonzero(rng) *
                    rand_planar_element(rng, dom, max_degree).field;
  return sum;
}

Quaternion rand_quaternion(SplitMix64& rng, double scale) {
  auto u = [&] { return scale * (2 * rng.next_double() - 1); };
  double re = u();
  double x = u(), y = u(), z = u();
  return {re, {x, y, z}};
}

}  // namespace qharm
