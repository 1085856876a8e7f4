#include "qharm/calculus.hpp"

#include <algorithm>
#include <cmath>

namespace qharm {

namespace {

// d/dx_axis of a grid scalar: centered where both neighbors exist, one-sided
// second-order otherwise, first-order as a last resort near clipped cells.
std::vector<double> grid_derivative(const Domain& d, const std::vector<double>& f,
                                    int axis) {
  double h = d.lattice_step()[axis];
  std::vector<double> out(f.size(), 0.0);
  for (std::size_t n = 0; n < d.node_count(); ++n) {
    const std::array<int, 3>& ijk = d.node_ijk(n);
    auto at = [&](int s) {
      int ii = ijk[0] + (axis == 0 ? s : 0);
      int jj = ijk[1] + (axis == 1 ? s : 0);
      int kk = ijk[2] + (axis == 2 ? s : 0);
      return d.node_at(ii, jj, kk);
    };
    int m1 = at(-1), p1 = at(+1);
    if (m1 >= 0 && p1 >= 0) {
      out[n] = (f[(std::size_t)p1] - f[(std::size_t)m1]) / (2 * h);
    } else if (p1 >= 0 && at(+2) >= 0) {
      out[n] = (-3 * f[n] + 4 * f[(std::size_t)p1] - f[(std::size_t)at(+2)]) / (2 * h);
    } else if (m1 >= 0 && at(-2) >= 0) {
      out[n] = (3 * f[n] - 4 * f[(std::size_t)m1] + f[(std::size_t)at(-2)]) / (2 * h);
    } else if (p1 >= 0) {
      out[n] = (f[(std::size_t)p1] - f[n]) / h;
    } else if (m1 >= 0) {
      out[n] = (f[n] - f[(std::size_t)m1]) / h;
    }
  }
  return out;
}

ScalarField partial(const ScalarField& f, int axis) {
  if (f.backend() == Backend::Polynomial)
    return ScalarField::polynomial(f.poly().derivative(axis), f.domain());
  return ScalarField::grid(f.domain(), grid_derivative(*f.domain(), f.values(), axis));
}

}  // namespace

VectorField grad(const ScalarField& f) {
  return {partial(f, 0), partial(f, 1), partial(f, 2)};
}

ScalarField div(const VectorField& u) {
  return partial(u.component(0), 0) + partial(u.component(1), 1) +
         partial(u.component(2), 2);
}

VectorField rot(const VectorField& u) {
  const ScalarField &u1 = u.component(0), &u2 = u.component(1), &u3 = u.component(2);
  return {partial(u3, 1) - partial(u2, 2), partial(u1, 2) - partial(u3, 0),
          partial(u2, 0) - partial(u1, 1)};
}

ScalarField laplacian(const ScalarField& f) { return div(grad(f)); }

VectorField dirderiv(const VectorField& v, const VectorField& u) {
  auto comp = [&](int i) {
    VectorField g = grad(u.component(i));
    return dot(v, g);
  };
  return {comp(0), comp(1), comp(2)};
}

ScalarField dot(const VectorField& u, const VectorField& v) {
  return u.component(0) * v.component(0) + u.component(1) * v.component(1) +
         u.component(2) * v.component(2);
}

VectorField wedge(const VectorField& u, const VectorField& v) {
  const ScalarField &u1 = u.component(0), &u2 = u.component(1), &u3 = u.component(2);
  const ScalarField &v1 = v.component(0), &v2 = v.component(1), &v3 = v.component(2);
  return {u2 * v3 - u3 * v2, u3 * v1 - u1 * v3, u1 * v2 - u2 * v1};
}

bool IdentityReport::all_pass() const {
  return std::all_of(identities.begin(), identities.end(),
                     [](const IdentityResult& r) { return r.pass; });
}

IdentityReport identity_battery_f1(const VectorField& u, const VectorField& v,
                                   const ScalarField& a, const ScalarField& b,
                                   double tol) {
  require_same_frame(a, b, "identity_battery_f1");
  require_same_frame(a, u.component(0), "identity_battery_f1");
  require_same_frame(a, v.component(0), "identity_battery_f1");

  ScalarField ab = a * b;
  ScalarField udotv = dot(u, v);
  VectorField av = a * v;
  VectorField uxv = wedge(u, v);
  ScalarField divu = div(u), divv = div(v);
  VectorField rotu = rot(u), rotv = rot(v);
  VectorField grada = grad(a), gradb = grad(b);

  IdentityReport rep;
  rep.backend = a.backend();
  rep.scale = 0.0;
  double tolerance = tol;
  if (tol < 0) {
    if (rep.backend == Backend::Polynomial) {
      tolerance = 0.0;
    } else {
      double s = std::max({second_difference_scale(a), second_difference_scale(b),
                           second_difference_scale(u), second_difference_scale(v),
                           second_difference_scale(ab), second_difference_scale(udotv),
                           second_difference_scale(av), second_difference_scale(uxv)});
      rep.scale = s;
      double h = a.domain()->spacing();
      tolerance = grid_tolerance_constant * h * h * s;
    }
  }

  auto push_vec = [&](const std::string& name, const VectorField& lhs,
                      const VectorField& rhs) {
    double r = max_abs_interior(lhs - rhs, interior_margin_h);
    rep.identities.push_back({name, r, tolerance, r <= tolerance});
  };
  auto push_sca = [&](const std::string& name, const ScalarField& lhs,
                      const ScalarField& rhs) {
    double r = max_abs_interior(lhs - rhs, interior_margin_h);
    rep.identities.push_back({name, r, tolerance, r <= tolerance});
  };

  push_vec("grad_ab", grad(ab), b * grada + a * gradb);
  push_vec("grad_u_dot_v", grad(udotv),
           dirderiv(v, u) + dirderiv(u, v) + wedge(v, rotu) + wedge(u, rotv));
  push_vec("rot_av", rot(av), wedge(grada, v) + a * rotv);
  push_vec("rot_u_wedge_v", rot(uxv),
           dirderiv(v, u) - dirderiv(u, v) - divu * v + divv * u);
  push_sca("div_u_wedge_v", div(uxv), dot(v, rotu) - dot(u, rotv));
  push_sca("div_av", div(av), dot(grada, v) + a * divv);

  return rep;
}

}  // namespace qharm
