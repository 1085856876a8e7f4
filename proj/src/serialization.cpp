#include "qharm/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace qharm {

double json_real(double x) {
  // Scrub signed zeros so reports are byte-stable across code paths.
  return x == 0.0 ? 0.0 : x;
}

Json to_json(const Quaternion& q) {
  return Json{{"re", json_real(q.re)},
              {"im", {json_real(q.im.x), json_real(q.im.y), json_real(q.im.z)}}};
}

Quaternion quaternion_from_json(const Json& j) {
  auto im = j.at("im");
  return {j.at("re").get<double>(),
          {im.at(0).get<double>(), im.at(1).get<double>(), im.at(2).get<double>()}};
}

Json to_json(const Vec3& v) {
  return Json::array({json_real(v.x), json_real(v.y), json_real(v.z)});
}

Vec3 vec3_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 3)
    throw std::invalid_argument("expected a 3-vector array");
  return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()};
}

namespace {
Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return rational(j.get<long>());
  if (j.is_number_float()) return Rational(j.get<double>());
  throw std::invalid_argument("expected a rational (string \"p/q\" or number)");
}
}  // namespace

Json to_json(const Poly& p) {
  Json out = Json::array();
  for (auto& [e, c] : p.terms())
    out.push_back(Json{{"coef", c.get_str()}, {"powers", {e[0], e[1], e[2]}}});
  return out;
}

Poly poly_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("polynomial spec must be an array");
  Poly p;
  for (const Json& t : j) {
    auto pw = t.at("powers");
    p += Poly::monomial(rational_from_json(t.at("coef")),
                        {pw.at(0).get<int>(), pw.at(1).get<int>(), pw.at(2).get<int>()});
  }
  return p;
}

Json domain_spec(const Domain& d) {
  Json j;
  if (d.shape() == Shape::Box) {
    j["shape"] = "box";
    j["min"] = to_json(d.lo());
    j["max"] = to_json(d.hi());
  } else {
    j["shape"] = "ball";
    j["center"] = to_json(d.center());
    j["radius"] = json_real(d.radius());
  }
  j["h"] = json_real(d.spacing());
  return j;
}

DomainPtr domain_from_json(const Json& j) {
  std::string shape = j.at("shape").get<std::string>();
  double h = j.at("h").get<double>();
  if (shape == "box")
    return Domain::box(vec3_from_json(j.at("min")), vec3_from_json(j.at("max")), h);
  if (shape == "ball")
    return Domain::ball(vec3_from_json(j.at("center")), j.at("radius").get<double>(), h);
  throw std::invalid_argument("domain shape must be \"box\" or \"ball\"");
}

CPoly cpoly_from_json(const Json& coeffs) {
  if (!coeffs.is_array()) throw std::invalid_argument("generator coeffs must be an array");
  std::vector<std::pair<Rational, Rational>> c;
  for (const Json& pair : coeffs) {
    if (!pair.is_array() || pair.size() != 2)
      throw std::invalid_argument("generator coefficient must be [re, im]");
    c.emplace_back(rational_from_json(pair.at(0)), rational_from_json(pair.at(1)));
  }
  return CPoly(std::move(c));
}

Json generator_spec(const AxialElement& el) {
  Json j;
  if (el.axis.kind == AxisKind::Planar) {
    j["kind"] = "planar";
    j["omega"] = to_json(el.axis.omega());
  } else {
    j["kind"] = "radial";
    j["pole"] = to_json(el.axis.chart.pole);
  }
  Json coeffs = Json::array();
  for (auto& [re, im] : el.generator.coeffs())
    coeffs.push_back(Json::array({re.get_str(), im.get_str()}));
  j["coeffs"] = coeffs;
  return j;
}

Json to_json(const IdentityReport& r) {
  Json ids = Json::array();
  for (const IdentityResult& id : r.identities)
    ids.push_back(Json{{"name", id.name},
                       {"max_residual", json_real(id.max_residual)},
                       {"tolerance", json_real(id.tolerance)},
                       {"pass", id.pass}});
  return Json{{"backend", backend_name(r.backend)},
              {"scale", json_real(r.scale)},
              {"identities", ids},
              {"pass", r.all_pass()}};
}

Json to_json(const ResidualReport& r) {
  Json j{{"epsilon_max", json_real(r.epsilon_max)},
         {"div_max", json_real(r.div_max)},
         {"class", harmonic_class_name(r.classification)},
         {"tol", json_real(r.tol)},
         {"scale", json_real(r.scale)},
         {"backend", backend_name(r.backend)}};
  if (r.domain) j["domain"] = domain_spec(*r.domain);
  return j;
}

Json to_json(const AxialValidation& v) {
  Json checks = Json::array();
  for (const AxialCheck& c : v.checks)
    checks.push_back(Json{{"name", c.name},
                          {"max_residual", json_real(c.max_residual)},
                          {"pass", c.pass}});
  return Json{{"checks", checks},
              {"tol", json_real(v.tol)},
              {"pass", v.pass},
              {"is_pure", v.is_pure},
              {"classify", to_json(v.report)}};
}

Json to_json(const MaxModulusReport& r) {
  return Json{{"interior_max", json_real(r.interior_max)},
              {"boundary_max", json_real(r.boundary_max)},
              {"tol", json_real(r.tol)},
              {"pass", r.pass}};
}

Json to_json(const RecoverResult& r) {
  return Json{{"point", to_json(r.point)},
              {"inconsistency", json_real(r.inconsistency)}};
}

Json to_json(const ScanReport& r) {
  Json entries = Json::array();
  for (const ScanEntry& e : r.entries) {
    Json je{{"label", e.label},
            {"passed", e.passed},
            {"norm", json_real(e.norm)},
            {"max_mult_residual", json_real(e.max_mult_residual)},
            {"recovered_point", to_json(e.recovered)},
            {"inconsistency", json_real(e.inconsistency)}};
    if (e.is_dirac) je["node"] = to_json(e.node);
    entries.push_back(je);
  }
  return Json{{"tol", json_real(r.tol)},
              {"all_passed", r.all_nodes_passed},
              {"accepted_count", r.accepted.size()},
              {"entries", entries}};
}

namespace {
void csv_number(std::ostream& os, double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  os << buf;
}
}  // namespace

void dump_csv(std::ostream& os, const ScalarField& f) {
  const Domain& d = *f.domain();
  os << "x1,x2,x3,value,boundary\n";
  for (std::size_t n = 0; n < d.node_count(); ++n) {
    const Vec3& x = d.node(n);
    double v = f.backend() == Backend::Grid ? f.values()[n] : f.poly().eval(x);
    csv_number(os, x.x);
    os << ',';
    csv_number(os, x.y);
    os << ',';
    csv_number(os, x.z);
    os << ',';
    csv_number(os, v);
    os << ',' << (d.is_boundary(n) ? 1 : 0) << '\n';
  }
}

void dump_csv(std::ostream& os, const VectorField& u) {
  const Domain& d = *u.domain();
  os << "x1,x2,x3,v1,v2,v3,boundary\n";
  for (std::size_t n = 0; n < d.node_count(); ++n) {
    const Vec3& x = d.node(n);
    csv_number(os, x.x);
    os << ',';
    csv_number(os, x.y);
    os << ',';
    csv_number(os, x.z);
    for (int c = 0; c < 3; ++c) {
      const ScalarField& comp = u.component(c);
      double v = comp.backend() == Backend::Grid ? comp.values()[n] : comp.poly().eval(x);
      os << ',';
      csv_number(os, v);
    }
    os << ',' << (d.is_boundary(n) ? 1 : 0) << '\n';
  }
}

}  // namespace qharm
