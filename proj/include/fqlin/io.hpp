#pragma once

#include <map>
#include <string>
#include <string_view>

#include <json.hpp>

#include "fqlin/families.hpp"
#include "fqlin/linset.hpp"
#include "fqlin/projgeom.hpp"

namespace fqlin {

using json = nlohmann::ordered_json;
using Bindings = std::map<std::string, Elem>;

// Element expressions: integers, g (the generator), [c0,c1,...] coefficient
// arrays, bound names, + - * / and ^ with an integer exponent. Exponents are
// integer expressions in the symbols p, q, n.
Elem parse_elem(const Field& F, std::string_view text, const Bindings& b = {});
std::int64_t parse_int_expr(const Field& F, std::string_view text);

// "eta*X^q^1 + X^q^4 (s=1,n=6)". X^q^k is the monomial x^{q^k}; a bare X is x.
// The suffix is optional and defaults to s=1 and the field's n.
LinearizedPoly parse_poly(const Field& F, std::string_view text, const Bindings& b = {});

FieldPtr field_from_json(const json& j);
json field_to_json(const Field& F);
// File path or inline "p=3,e=1,n=6".
FieldPtr load_field(const std::string& spec);

json elem_to_json(const Field& F, Elem a);
Elem elem_from_json(const Field& F, const json& j, const Bindings& b = {});
json vec_to_json(const Field& F, const Vec& v);
Vec vec_from_json(const Field& F, const json& j, const Bindings& b = {});
json matrix_to_json(const Field& F, const Matrix& m);
Matrix matrix_from_json(const Field& F, const json& j, const Bindings& b = {});

json linset_report(const LinearSet& L);
json condition_report_to_json(const Field& F, const ConditionReport& r);

}  // namespace fqlin
