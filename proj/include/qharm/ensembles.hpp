#pragma once

#include <cstdint>

#include "qharm/hspectrum.hpp"

namespace qharm {

// SplitMix64: 64-bit state, output mixed by the Stafford 13/31 finalizer.
// Chosen for reproducibility: the sequence is fully pinned by the seed and
// trivial to reimplement anywhere.
struct SplitMix64 {
  uint64_t state;

  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0,1), 53 bits.
  double next_double() { return (double)(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [lo, hi].
  long next_int(long lo, long hi) {
    return lo + (long)(next() % (uint64_t)(hi - lo + 1));
  }
};

// Small exact rationals n/d, n in [-max_num, max_num], d in [1, max_den].
Rational rand_rational(SplitMix64& rng, long max_num = 4, long max_den = 4);
Rational rand_rational_nonzero(SplitMix64& rng, long max_num = 4, long max_den = 4);

// Sparse random polynomial of total degree <= deg with small rational
// coefficients; roughly `density` of the monomials present.
Poly rand_poly(SplitMix64& rng, int deg, double density = 0.5);

ScalarField rand_scalar_field(SplitMix64& rng, const DomainPtr& dom, int deg,
                              Backend backend = Backend::Polynomial);
VectorField rand_vector_field(SplitMix64& rng, const DomainPtr& dom, int deg,
                              Backend backend = Backend::Polynomial);

// Random harmonic polynomial of degree <= 3 (rational combination of a fixed
// 16-element harmonic basis).
Poly rand_harmonic_poly(SplitMix64& rng);

// Exact vector potential: rot(result) = w for a polynomial field with
// div w = 0, via the degree-wise homotopy A_d = (w_d x x) / (d + 2).
VectorField vector_potential(const VectorField& w);

// Random harmonic quaternion field {alpha, u}: alpha harmonic, rot u =
// grad alpha exactly; a gradient part makes div u nonzero generically.
QuaternionField rand_harmonic_field(SplitMix64& rng, const DomainPtr& dom);

// Exactly orthonormal rational frame from a random small integer quaternion.
PlanarFrame rand_rational_frame(SplitMix64& rng);

CPoly rand_generator(SplitMix64& rng, int max_degree, long max_num = 2, long max_den = 2);

// Planar axial element over a random exact frame: pure harmonic with
// exactly-zero residuals on the polynomial backend.
AxialElement rand_planar_element(SplitMix64& rng, const DomainPtr& dom, int max_degree);

// Random rational linear combination of planar elements over distinct exact
// frames: pure harmonic, generically not axial.
QuaternionField rand_pure_field(SplitMix64& rng, const DomainPtr& dom, int max_degree);

Quaternion rand_quaternion(SplitMix64& rng, double scale = 1.0);

}  // namespace qharm
