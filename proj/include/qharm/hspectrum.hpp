#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "qharm/axial.hpp"

namespace qharm {

// Evaluation functional theta_m : p -> p(m) at a point of the closed domain.
struct DiracFunctional {
  Vec3 m;
};

Quaternion apply(const DiracFunctional& theta, const QuaternionField& p);

// Generic H-functional, represented by what it does to fields. Dirac
// functionals and their convex combinations both fit.
using HFunctional = std::function<Quaternion(const QuaternionField&)>;

HFunctional as_functional(const DiracFunctional& theta);
HFunctional average_functional(const Vec3& m1, const Vec3& m2);

// Left multiplication by the constant field a; maps pure harmonic fields to
// pure harmonic fields.
QuaternionField h_action(const Quaternion& a, const QuaternionField& p);

// max over probes of |theta(p)| / sup|p|; equals 1 for Dirac functionals
// (upper bound by evaluation, attained on the constant probe {1,0}, which the
// probe set must contain).
double functional_norm(const HFunctional& theta, std::span<const QuaternionField> probes);
double functional_norm(const DiracFunctional& theta, std::span<const QuaternionField> probes);

struct MultiplicativityReport {
  std::vector<double> residuals;  // |theta(yz) - theta(y) theta(z)| per pair
  double max_residual;
  double tol;
  bool pass;
};

MultiplicativityReport multiplicativity_check(
    const HFunctional& theta,
    std::span<const std::pair<AxialElement, AxialElement>> pairs, double tol);
MultiplicativityReport multiplicativity_check(
    const DiracFunctional& theta,
    std::span<const std::pair<AxialElement, AxialElement>> pairs, double tol);

// Three planar elements with pairwise-orthogonal axes and generator z each:
// theta_m reads off {m.a_i, (m.b_i) omega_i}, overdetermining m.
struct GeneratorPanel {
  std::array<AxialElement, 3> elements;

  static GeneratorPanel standard(const DomainPtr& dom);
  static GeneratorPanel from_rotation(const QuaternionQ& q, const DomainPtr& dom);
};

struct RecoverResult {
  Vec3 point;
  double inconsistency;  // max disagreement across the redundant readings
};

// Least-squares reconciliation of the six scalar readings (three quaternion
// values) into one point. Inconsistency above tolerance signals values not
// generated by any single evaluation point.
RecoverResult recover_point(const std::array<Quaternion, 3>& values,
                            const GeneratorPanel& panel);
Vec3 recover_point_checked(const std::array<Quaternion, 3>& values,
                           const GeneratorPanel& panel, double tol);

std::array<Quaternion, 3> panel_readings(const GeneratorPanel& panel, const Vec3& m);
std::array<Quaternion, 3> panel_readings(const GeneratorPanel& panel,
                                         const HFunctional& theta);

struct ScanEntry {
  std::string label;  // node index or injected-candidate tag
  Vec3 node;          // evaluation point when applicable
  bool is_dirac;
  bool passed;
  double norm;
  double max_mult_residual;
  Vec3 recovered;
  double inconsistency;
};

struct ScanReport {
  std::vector<ScanEntry> entries;
  std::vector<Vec3> accepted;  // recovered points of passing Dirac candidates
  double tol;
  bool all_nodes_passed;
};

// Accepts a candidate functional as a spectrum point iff it has unit norm on
// the probe set (panel + constant) and is multiplicative on the panel
// algebras. Scanning all grid nodes reproduces the domain.
ScanReport spectrum_scan(const GeneratorPanel& panel, const DomainPtr& dom, double tol);

struct Candidate {
  std::string label;
  HFunctional functional;
};

ScanReport spectrum_scan_candidates(const GeneratorPanel& panel,
                                    std::span<const Candidate> candidates, double tol);

}  // namespace qharm
