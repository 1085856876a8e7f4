#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "qharm/hspectrum.hpp"

namespace qharm {

using Json = nlohmann::ordered_json;

// Values
Json to_json(const Quaternion& q);          // {"re": n, "im": [n,n,n]}
Quaternion quaternion_from_json(const Json& j);

Json to_json(const Vec3& v);
Vec3 vec3_from_json(const Json& j);

// Polynomial spec: list of {"coef": "p/q", "powers": [i,j,k]}.
Json to_json(const Poly& p);
Poly poly_from_json(const Json& j);

// Domain spec: {"shape":"box","min":..,"max":..,"h":..} or
// {"shape":"ball","center":..,"radius":..,"h":..}.
Json domain_spec(const Domain& d);
DomainPtr domain_from_json(const Json& j);

// Generator spec: {"kind":"planar"|"radial", "omega"|[..] or "pole":[..],
// "coeffs":[[re,im],...]} with rational strings or numbers.
Json generator_spec(const AxialElement& el);
CPoly cpoly_from_json(const Json& coeffs);

// Reports
Json to_json(const IdentityReport& r);
Json to_json(const ResidualReport& r);
Json to_json(const AxialValidation& v);
Json to_json(const MaxModulusReport& r);
Json to_json(const ScanReport& r);
Json to_json(const RecoverResult& r);

// Grid dump: columns x1,x2,x3,value[,...],boundary; row-major over nodes.
void dump_csv(std::ostream& os, const ScalarField& f);
void dump_csv(std::ostream& os, const VectorField& u);

// Stable shortest-round-trip formatting used everywhere in reports.
double json_real(double x);

}  // namespace qharm
