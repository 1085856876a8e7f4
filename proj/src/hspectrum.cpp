#include "qharm/hspectrum.hpp"

#include <cmath>
#include <stdexcept>

#include "qharm/parallel.hpp"

namespace qharm {

Quaternion apply(const DiracFunctional& theta, const QuaternionField& p) {
  return evaluate(p, theta.m);
}

HFunctional as_functional(const DiracFunctional& theta) {
  Vec3 m = theta.m;
  return [m](const QuaternionField& p) { return evaluate(p, m); };
}

HFunctional average_functional(const Vec3& m1, const Vec3& m2) {
  return [m1, m2](const QuaternionField& p) {
    return 0.5 * (evaluate(p, m1) + evaluate(p, m2));
  };
}

QuaternionField h_action(const Quaternion& a, const QuaternionField& p) {
  QuaternionField tilde_a =
      QuaternionField::constant(to_exact(a), p.backend(), p.domain());
  return pointwise_product(tilde_a, p);
}

double functional_norm(const HFunctional& theta,
                       std::span<const QuaternionField> probes) {
  if (probes.empty()) throw std::invalid_argument("functional_norm: empty probe set");
  bool has_unit = false;
  for (const QuaternionField& p : probes)
    if (is_unit_field(p)) {
      has_unit = true;
      break;
    }
  if (!has_unit)
    throw std::invalid_argument("functional_norm: probe set must contain the unit field {1,0}");
  double best = 0.0;
  for (const QuaternionField& p : probes) {
    double sup = sup_norm(p);
    if (sup == 0.0) continue;
    best = std::max(best, modulus(theta(p)) / sup);
  }
  return best;
}

double functional_norm(const DiracFunctional& theta,
                       std::span<const QuaternionField> probes) {
  return functional_norm(as_functional(theta), probes);
}

MultiplicativityReport multiplicativity_check(
    const HFunctional& theta,
    std::span<const std::pair<AxialElement, AxialElement>> pairs, double tol) {
  MultiplicativityReport rep;
  rep.tol = tol;
  rep.max_residual = 0.0;
  for (const auto& [y, z] : pairs) {
    AxialElement yz = algebra_mul(y, z);  // throws on axis mismatch
    Quaternion lhs = theta(yz.field);
    Quaternion rhs = qmul(theta(y.field), theta(z.field));
    double r = modulus(lhs - rhs);
    rep.residuals.push_back(r);
    rep.max_residual = std::max(rep.max_residual, r);
  }
  rep.pass = rep.max_residual <= tol;
  return rep;
}

MultiplicativityReport multiplicativity_check(
    const DiracFunctional& theta,
    std::span<const std::pair<AxialElement, AxialElement>> pairs, double tol) {
  return multiplicativity_check(as_functional(theta), pairs, tol);
}

GeneratorPanel GeneratorPanel::standard(const DomainPtr& dom) {
  return {{build_planar(Vec3{1, 0, 0}, CPoly::z(), dom),
           build_planar(Vec3{0, 1, 0}, CPoly::z(), dom),
           build_planar(Vec3{0, 0, 1}, CPoly::z(), dom)}};
}

GeneratorPanel GeneratorPanel::from_rotation(const QuaternionQ& q, const DomainPtr& dom) {
  PlanarFrame f = frame_from_rotation(q);
  // Cyclic frames (a,b,w), (b,w,a), (w,a,b) keep right-handedness; the three
  // axes are the rotated basis vectors, pairwise orthogonal exactly.
  PlanarFrame f1{f.b, f.omega, f.a};
  PlanarFrame f2{f.omega, f.a, f.b};
  return {{build_planar(f1, CPoly::z(), dom), build_planar(f2, CPoly::z(), dom),
           build_planar(f, CPoly::z(), dom)}};
}

namespace {

void require_orthonormal_axes(const GeneratorPanel& panel) {
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      double d = dot(panel.elements[i].axis.omega(), panel.elements[j].axis.omega());
      if (std::abs(d) > 1e-12)
        throw std::invalid_argument("panel axes are not pairwise orthogonal");
    }
  for (int i = 0; i < 3; ++i) {
    if (panel.elements[i].axis.kind != AxisKind::Planar)
      throw std::invalid_argument("panel elements must be planar");
    if (!(panel.elements[i].generator == CPoly::z()))
      throw std::invalid_argument("panel generators must be f(z) = z");
  }
}

}  // namespace

std::array<Quaternion, 3> panel_readings(const GeneratorPanel& panel, const Vec3& m) {
  return {evaluate(panel.elements[0].field, m), evaluate(panel.elements[1].field, m),
          evaluate(panel.elements[2].field, m)};
}

std::array<Quaternion, 3> panel_readings(const GeneratorPanel& panel,
                                         const HFunctional& theta) {
  return {theta(panel.elements[0].field), theta(panel.elements[1].field),
          theta(panel.elements[2].field)};
}

RecoverResult recover_point(const std::array<Quaternion, 3>& values,
                            const GeneratorPanel& panel) {
  require_orthonormal_axes(panel);
  // Six scalar readings r_k = row_k . m with rows a_1,b_1,a_2,b_2,a_3,b_3.
  // With orthonormal panel axes sum rows row row^T = 2I, so the least-squares
  // point is m = (1/2) sum r_k row_k.
  Vec3 rows[6];
  double r[6];
  double off_axis = 0.0;
  for (int i = 0; i < 3; ++i) {
    const PlanarFrame& f = panel.elements[i].axis.frame;
    Vec3 omega = to_vec3(f.omega);
    rows[2 * i] = to_vec3(f.a);
    rows[2 * i + 1] = to_vec3(f.b);
    r[2 * i] = values[i].re;
    double t = dot(values[i].im, omega);
    r[2 * i + 1] = t;
    off_axis = std::max(off_axis, norm(values[i].im - t * omega));
  }
  Vec3 m{};
  for (int k = 0; k < 6; ++k) m = m + r[k] * rows[k];
  m = 0.5 * m;
  double inc = off_axis;
  for (int k = 0; k < 6; ++k) inc = std::max(inc, std::abs(dot(rows[k], m) - r[k]));
  return {m, inc};
}

Vec3 recover_point_checked(const std::array<Quaternion, 3>& values,
                           const GeneratorPanel& panel, double tol) {
  RecoverResult res = recover_point(values, panel);
  if (res.inconsistency > tol)
    throw std::invalid_argument(
        "recover_point: readings disagree by " + std::to_string(res.inconsistency) +
        " (> " + std::to_string(tol) + "); values were not generated by a single point");
  return res.point;
}

namespace {

struct ScanContext {
  const GeneratorPanel& panel;
  std::vector<QuaternionField> probes;
  std::vector<double> probe_sups;
  std::vector<std::array<QuaternionField, 3>> triples;  // {y, z, yz} per pair

  explicit ScanContext(const GeneratorPanel& p) : panel(p) {
    require_orthonormal_axes(p);
    const DomainPtr& dom = p.elements[0].field.domain();
    probes.push_back(QuaternionField::unit(p.elements[0].field.backend(), dom));
    for (const AxialElement& el : p.elements) probes.push_back(el.field);
    for (const AxialElement& el : p.elements)
      triples.push_back({el.field, el.field, algebra_mul(el, el).field});
    for (const QuaternionField& probe : probes) probe_sups.push_back(sup_norm(probe));
  }

  ScanEntry run(const std::string& label, const HFunctional& theta, bool is_dirac,
                const Vec3& node, double tol) const {
    ScanEntry e;
    e.label = label;
    e.node = node;
    e.is_dirac = is_dirac;
    double best = 0.0;
    for (std::size_t i = 0; i < probes.size(); ++i)
      if (probe_sups[i] > 0) best = std::max(best, modulus(theta(probes[i])) / probe_sups[i]);
    e.norm = best;
    double mmax = 0.0;
    for (const auto& [y, z, yz] : triples) {
      double r = modulus(theta(yz) - qmul(theta(y), theta(z)));
      mmax = std::max(mmax, r);
    }
    e.max_mult_residual = mmax;
    RecoverResult rec = recover_point(panel_readings(panel, theta), panel);
    e.recovered = rec.point;
    e.inconsistency = rec.inconsistency;
    e.passed = std::abs(e.norm - 1.0) <= tol && mmax <= tol;
    return e;
  }
};

}  // namespace

ScanReport spectrum_scan(const GeneratorPanel& panel, const DomainPtr& dom, double tol) {
  ScanContext ctx(panel);
  ScanReport rep;
  rep.tol = tol;
  rep.entries.resize(dom->node_count());
  parallel_for(dom->node_count(), [&](std::size_t n) {
    Vec3 m = dom->node(n);
    rep.entries[n] =
        ctx.run("node_" + std::to_string(n), as_functional(DiracFunctional{m}), true, m, tol);
  });
  rep.all_nodes_passed = true;
  for (const ScanEntry& e : rep.entries) {
    if (e.passed)
      rep.accepted.push_back(e.recovered);
    else
      rep.all_nodes_passed = false;
  }
  return rep;
}

ScanReport spectrum_scan_candidates(const GeneratorPanel& panel,
                                    std::span<const Candidate> candidates, double tol) {
  ScanContext ctx(panel);
  ScanReport rep;
  rep.tol = tol;
  rep.entries.resize(candidates.size());
  parallel_for(candidates.size(), [&](std::size_t i) {
    rep.entries[i] = ctx.run(candidates[i].label, candidates[i].functional, false, Vec3{}, tol);
  });
  rep.all_nodes_passed = true;
  for (const ScanEntry& e : rep.entries) {
    if (e.passed)
      rep.accepted.push_back(e.recovered);
    else
      rep.all_nodes_passed = false;
  }
  return rep;
}

}  // namespace qharm
