#include "qharm/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qharm/ensembles.hpp"
#include "qharm/parallel.hpp"

namespace qharm {

namespace {

double opt_double(const Json& cfg, const char* key, double fallback) {
  return cfg.contains(key) ? cfg.at(key).get<double>() : fallback;
}

long opt_long(const Json& cfg, const char* key, long fallback) {
  return cfg.contains(key) ? cfg.at(key).get<long>() : fallback;
}

bool opt_bool(const Json& cfg, const char* key, bool fallback) {
  return cfg.contains(key) ? cfg.at(key).get<bool>() : fallback;
}

Backend backend_from(const Json& cfg) {
  std::string b = cfg.contains("backend") ? cfg.at("backend").get<std::string>()
                                          : std::string("polynomial");
  if (b == "polynomial") return Backend::Polynomial;
  if (b == "grid") return Backend::Grid;
  throw std::invalid_argument("backend must be \"polynomial\" or \"grid\"");
}

// Worst residual per identity across an F1 + E1/E2 ensemble at one domain.
Json identity_sweep(const DomainPtr& dom, Backend backend, uint64_t seed, long count,
                    int degree, double tol) {
  SplitMix64 rng(seed);
  std::vector<std::string> names;
  std::vector<double> worst;
  std::vector<double> tols;
  auto record = [&](const std::string& name, double r, double t) {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) {
        worst[i] = std::max(worst[i], r);
        tols[i] = std::max(tols[i], t);
        return;
      }
    names.push_back(name);
    worst.push_back(r);
    tols.push_back(t);
  };

  for (long c = 0; c < count; ++c) {
    VectorField u = rand_vector_field(rng, dom, degree, backend);
    VectorField v = rand_vector_field(rng, dom, degree, backend);
    ScalarField a = rand_scalar_field(rng, dom, degree, backend);
    ScalarField b = rand_scalar_field(rng, dom, degree, backend);
    IdentityReport f1 = identity_battery_f1(u, v, a, b, tol);
    for (const IdentityResult& id : f1.identities)
      record(id.name, id.max_residual, id.tolerance);

    QuaternionField p{rand_scalar_field(rng, dom, degree, backend),
                      rand_vector_field(rng, dom, degree, backend)};
    QuaternionField q{rand_scalar_field(rng, dom, degree, backend),
                      rand_vector_field(rng, dom, degree, backend)};
    QuaternionField pq = pointwise_product(p, q);
    auto [e1, e2] = residual_product_general(p, q);
    VectorField eps_diff = residual(pq) - e1;
    ScalarField div_diff = div(pq.vector) - e2;
    double t = tol;
    if (t < 0) {
      if (backend == Backend::Polynomial) {
        t = 0.0;
      } else {
        double s = std::max({second_difference_scale(p), second_difference_scale(q),
                             second_difference_scale(pq)});
        double h = dom->spacing();
        t = grid_tolerance_constant * h * h * s;
      }
    }
    record("E1_product_residual", max_abs_interior(eps_diff, interior_margin_h), t);
    record("E2_product_divergence", max_abs_interior(div_diff, interior_margin_h), t);
  }

  Json ids = Json::array();
  bool pass = true;
  for (std::size_t i = 0; i < names.size(); ++i) {
    bool ok = worst[i] <= tols[i];
    pass = pass && ok;
    ids.push_back(Json{{"name", names[i]},
                       {"max_residual", json_real(worst[i])},
                       {"tolerance", json_real(tols[i])},
                       {"pass", ok}});
  }
  return Json{{"identities", ids}, {"pass", pass}};
}

Json cmd_verify_identities(const Json& cfg) {
  DomainPtr dom = domain_from_json(cfg.at("domain"));
  Backend backend = backend_from(cfg);
  uint64_t seed = (uint64_t)opt_long(cfg, "seed", 1);
  long count = opt_long(cfg, "count", 200);
  int degree = (int)opt_long(cfg, "degree", 3);
  double tol = opt_double(cfg, "tolerance", -1.0);

  Json sweep = identity_sweep(dom, backend, seed, count, degree, tol);
  Json rep{{"domain", domain_spec(*dom)},
           {"backend", backend_name(backend)},
           {"seed", seed},
           {"count", count},
           {"degree", degree},
           {"identities", sweep.at("identities")}};
  bool pass = sweep.at("pass").get<bool>();

  if (backend == Backend::Grid && opt_bool(cfg, "refine", false)) {
    DomainPtr fine;
    if (dom->shape() == Shape::Box)
      fine = Domain::box(dom->lo(), dom->hi(), dom->spacing() / 2);
    else
      fine = Domain::ball(dom->center(), dom->radius(), dom->spacing() / 2);
    Json fs = identity_sweep(fine, backend, seed, count, degree, tol);
    pass = pass && fs.at("pass").get<bool>();
    Json ratios = Json::array();
    const Json& coarse_ids = rep.at("identities");
    const Json& fine_ids = fs.at("identities");
    for (std::size_t i = 0; i < coarse_ids.size(); ++i) {
      double rc = coarse_ids[i].at("max_residual").get<double>();
      double rf = fine_ids[i].at("max_residual").get<double>();
      Json entry{{"name", coarse_ids[i].at("name")},
                 {"coarse", json_real(rc)},
                 {"fine", json_real(rf)}};
      if (rf > 1e-14) entry["ratio"] = json_real(rc / rf);
      ratios.push_back(entry);
    }
    rep["refinement"] = Json{{"h_fine", json_real(fine->spacing())}, {"ratios", ratios}};
  }

  rep["pass"] = pass;
  return rep;
}

std::vector<AxialElement> build_algebra_elements(const Json& spec, const DomainPtr& dom) {
  std::string kind = spec.at("kind").get<std::string>();
  std::vector<CPoly> gens;
  for (const Json& g : spec.at("generators")) gens.push_back(cpoly_from_json(g));
  std::vector<AxialElement> out;
  for (const CPoly& f : gens) {
    if (kind == "planar")
      out.push_back(build_planar(vec3_from_json(spec.at("omega")), f, dom));
    else if (kind == "radial")
      out.push_back(build_radial(vec3_from_json(spec.at("pole")), f, dom));
    else
      throw std::invalid_argument("algebra kind must be \"planar\" or \"radial\"");
  }
  return out;
}

Json cmd_build_algebra(const Json& cfg) {
  DomainPtr dom = domain_from_json(cfg.at("domain"));
  double tol = opt_double(cfg, "tolerance", -1.0);

  std::vector<std::vector<AxialElement>> algebras;
  for (const Json& spec : cfg.at("algebras"))
    algebras.push_back(build_algebra_elements(spec, dom));

  bool pass = true;
  Json ja = Json::array();
  for (std::size_t ai = 0; ai < algebras.size(); ++ai) {
    Json elems = Json::array();
    for (const AxialElement& el : algebras[ai]) {
      AxialValidation v = validate_axial(el, tol);
      pass = pass && v.pass;
      elems.push_back(Json{{"generator", generator_spec(el)}, {"validation", to_json(v)}});
    }
    // Closure under the internal product: products validate and match the
    // pointwise quaternion product.
    Json closure = Json::array();
    const auto& els = algebras[ai];
    for (std::size_t i = 0; i < els.size(); ++i)
      for (std::size_t j = i; j < els.size(); ++j) {
        AxialElement prod = algebra_mul(els[i], els[j]);
        AxialValidation v = validate_axial(prod, tol);
        QuaternionField diff = pointwise_product(els[i].field, els[j].field) - prod.field;
        double mismatch = std::max(max_abs_interior(diff.scalar, 0),
                                   max_abs_interior(diff.vector, 0));
        bool ok = v.pass && mismatch <= std::max(v.tol, 1e-12);
        pass = pass && ok;
        closure.push_back(Json{{"factors", {i, j}},
                               {"product_class",
                                harmonic_class_name(v.report.classification)},
                               {"pointwise_mismatch", json_real(mismatch)},
                               {"pass", ok}});
      }
    ja.push_back(Json{{"elements", elems}, {"closure", closure}});
  }

  Json rep{{"domain", domain_spec(*dom)}, {"algebras", ja}};

  if (opt_bool(cfg, "cross_products", false) && algebras.size() >= 2) {
    Json cross = Json::array();
    for (std::size_t a1 = 0; a1 < algebras.size(); ++a1)
      for (std::size_t a2 = a1 + 1; a2 < algebras.size(); ++a2)
        for (std::size_t i = 0; i < algebras[a1].size(); ++i)
          for (std::size_t j = 0; j < algebras[a2].size(); ++j) {
            QuaternionField pq =
                pointwise_product(algebras[a1][i].field, algebras[a2][j].field);
            ResidualReport rr = classify(pq);
            cross.push_back(Json{{"algebras", {a1, a2}},
                                 {"factors", {i, j}},
                                 {"classify", to_json(rr)},
                                 {"expected_nonharmonic", true}});
          }
    rep["cross_products"] = cross;
  }

  if (cfg.contains("dump_csv")) {
    std::string prefix = cfg.at("dump_csv").get<std::string>();
    int idx = 0;
    for (const auto& alg : algebras)
      for (const AxialElement& el : alg) {
        std::ofstream fs(prefix + "_el" + std::to_string(idx) + "_scalar.csv");
        dump_csv(fs, el.field.scalar);
        std::ofstream fv(prefix + "_el" + std::to_string(idx) + "_vector.csv");
        dump_csv(fv, el.field.vector);
        ++idx;
      }
  }

  rep["pass"] = pass;
  return rep;
}

Json cmd_max_principle(const Json& cfg) {
  DomainPtr dom = domain_from_json(cfg.at("domain"));
  uint64_t seed = (uint64_t)opt_long(cfg, "seed", 1);
  long count = opt_long(cfg, "count", 50);
  int degree = (int)opt_long(cfg, "generator_degree", 3);
  double tol = cfg.contains("tolerance")
                   ? cfg.at("tolerance").get<double>()
                   : opt_double(cfg, "tolerance_h_multiple", 10.0) * dom->spacing();

  SplitMix64 rng(seed);
  std::vector<AxialElement> elements;
  elements.reserve((std::size_t)count);
  for (long i = 0; i < count; ++i)
    elements.push_back(rand_planar_element(rng, dom, degree));

  std::vector<Json> rows((std::size_t)count);
  std::vector<uint8_t> ok((std::size_t)count, 0);
  parallel_for((std::size_t)count, [&](std::size_t i) {
    QuaternionField sampled = sample(elements[i].field, dom);
    MaxModulusReport r = max_modulus_check(sampled, tol);
    ok[i] = r.pass;
    rows[i] = Json{{"element", (long)i},
                   {"generator", generator_spec(elements[i])},
                   {"check", to_json(r)}};
  });
  bool pass = std::all_of(ok.begin(), ok.end(), [](uint8_t b) { return b != 0; });

  Json rep{{"domain", domain_spec(*dom)},
           {"seed", seed},
           {"count", count},
           {"tolerance", json_real(tol)},
           {"elements", rows}};

  if (opt_bool(cfg, "include_bump_fixture", true)) {
    // Non-harmonic field peaking at the domain center and vanishing at the
    // boundary: the discrete check must reject it.
    Vec3 c = dom->center();
    double scale2 = dom->shape() == Shape::Ball
                        ? dom->radius() * dom->radius()
                        : 0.25 * norm_sq(dom->hi() - dom->lo());
    Poly bump = Poly::constant(rational(1));
    for (int a = 0; a < 3; ++a) {
      Poly d = Poly::variable(a) - Poly::constant(Rational(c[a]));
      bump -= Rational(1.0 / scale2) * (d * d);
    }
    QuaternionField p{ScalarField::polynomial(bump, dom),
                      VectorField::zero(Backend::Polynomial, dom)};
    MaxModulusReport r = max_modulus_check(sample(p, dom), tol);
    bool as_expected = !r.pass;
    pass = pass && as_expected;
    rep["bump_fixture"] = Json{{"check", to_json(r)},
                               {"expected_fail", true},
                               {"as_expected", as_expected}};
  }

  rep["pass"] = pass;
  return rep;
}

Json cmd_recover(const Json& cfg) {
  DomainPtr dom = domain_from_json(cfg.at("domain"));
  uint64_t seed = (uint64_t)opt_long(cfg, "seed", 1);
  double tol = opt_double(cfg, "tolerance", 1e-9);

  GeneratorPanel panel =
      cfg.contains("panel") && cfg.at("panel").is_object() &&
              cfg.at("panel").contains("rotation")
          ? GeneratorPanel::from_rotation(
                {parse_rational(cfg.at("panel").at("rotation").at(0).get<std::string>()),
                 {parse_rational(cfg.at("panel").at("rotation").at(1).get<std::string>()),
                  parse_rational(cfg.at("panel").at("rotation").at(2).get<std::string>()),
                  parse_rational(cfg.at("panel").at("rotation").at(3).get<std::string>())}},
                dom)
          : GeneratorPanel::standard(dom);

  std::vector<Vec3> points;
  if (cfg.contains("points")) {
    for (const Json& p : cfg.at("points")) points.push_back(vec3_from_json(p));
  } else {
    long count = opt_long(cfg, "count", 100);
    SplitMix64 rng(seed);
    while ((long)points.size() < count) {
      Vec3 x{dom->lo().x + rng.next_double() * (dom->hi().x - dom->lo().x),
             dom->lo().y + rng.next_double() * (dom->hi().y - dom->lo().y),
             dom->lo().z + rng.next_double() * (dom->hi().z - dom->lo().z)};
      if (dom->boundary_distance(x) > 0.05 * dom->spacing()) points.push_back(x);
    }
  }

  std::vector<Json> rows(points.size());
  std::vector<uint8_t> ok(points.size(), 0);
  parallel_for(points.size(), [&](std::size_t i) {
    std::array<Quaternion, 3> readings = panel_readings(panel, points[i]);
    RecoverResult rec = recover_point(readings, panel);
    Vec3 err = rec.point - points[i];
    double e = std::max({std::abs(err.x), std::abs(err.y), std::abs(err.z)});
    ok[i] = e <= tol && rec.inconsistency <= tol;
    Json jr = Json::array();
    for (const Quaternion& q : readings) jr.push_back(to_json(q));
    rows[i] = Json{{"point", to_json(points[i])},
                   {"readings", jr},
                   {"recovered", to_json(rec.point)},
                   {"error", json_real(e)},
                   {"inconsistency", json_real(rec.inconsistency)},
                   {"pass", (bool)ok[i]}};
  });
  bool pass = std::all_of(ok.begin(), ok.end(), [](uint8_t b) { return b != 0; });

  Json rep{{"domain", domain_spec(*dom)},
           {"seed", seed},
           {"tolerance", json_real(tol)},
           {"points", rows}};

  if (opt_bool(cfg, "scan", false)) {
    // Full-grid spectrum scan: every node's Dirac functional must have unit
    // norm and be multiplicative on the panel algebras.
    ScanReport scan = spectrum_scan(panel, dom, opt_double(cfg, "scan_tolerance", 1e-9));
    pass = pass && scan.all_nodes_passed;
    rep["scan"] = to_json(scan);
  }

  if (opt_bool(cfg, "adversarial", false) && points.size() >= 2) {
    // Average of two Dirac functionals: linear readings stay consistent, but
    // multiplicativity on the quadratic products must reject it.
    Vec3 m1 = points[0], m2 = points[1];
    std::vector<std::pair<AxialElement, AxialElement>> pairs;
    for (const AxialElement& el : panel.elements) pairs.emplace_back(el, el);
    MultiplicativityReport mr =
        multiplicativity_check(average_functional(m1, m2), pairs, tol);
    bool rejected = !mr.pass;
    pass = pass && rejected;
    rep["adversarial"] = Json{{"type", "two_point_average"},
                              {"points", {to_json(m1), to_json(m2)}},
                              {"max_mult_residual", json_real(mr.max_residual)},
                              {"rejected", rejected},
                              {"warning", "functional is not a spectrum point"}};
  }

  rep["pass"] = pass;
  return rep;
}

}  // namespace

Json run_command(const Json& config) {
  std::string command = config.at("command").get<std::string>();
  Json report;
  if (command == "verify-identities")
    report = cmd_verify_identities(config);
  else if (command == "build-algebra")
    report = cmd_build_algebra(config);
  else if (command == "max-principle")
    report = cmd_max_principle(config);
  else if (command == "recover")
    report = cmd_recover(config);
  else
    throw std::invalid_argument("unknown command '" + command + "'");
  Json out{{"command", command}, {"report", report},
           {"pass", report.at("pass").get<bool>()}};
  return out;
}

std::string render_report(const Json& report) { return report.dump(2) + "\n"; }

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"quaternionic harmonic fields batch driver"};
  app.require_subcommand(1);
  std::string config_path, out_path;
  std::vector<CLI::App*> subs;
  for (const char* name :
       {"verify-identities", "build-algebra", "max-principle", "recover"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON config file")->required();
    sub->add_option("--out", out_path, "report output path (default stdout)");
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  Json config;
  try {
    std::ifstream in(config_path);
    if (!in) throw std::invalid_argument("cannot open config file '" + config_path + "'");
    config = Json::parse(in);
    std::string sub = app.get_subcommands().front()->get_name();
    if (config.contains("command")) {
      if (config.at("command").get<std::string>() != sub)
        throw std::invalid_argument("config command does not match subcommand '" + sub + "'");
    } else {
      config["command"] = sub;
    }
  } catch (const std::exception& e) {
    std::cerr << "qharm: config error: " << e.what() << "\n";
    return 2;
  }

  Json report;
  try {
    report = run_command(config);
  } catch (const std::exception& e) {
    std::cerr << "qharm: " << e.what() << "\n";
    return 2;
  }

  std::string text = render_report(report);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "qharm: cannot write report to '" << out_path << "'\n";
      return 2;
    }
    out << text;
  }
  return report.at("pass").get<bool>() ? 0 : 1;
}

}  // namespace qharm
