#include <gtest/gtest.h>

#include "fqlin/runner.hpp"
#include "support.hpp"

using namespace fqlin;
using namespace fqlin::testing;

namespace {

std::size_t parse_error_pos(const Field& F, const std::string& text) {
  try {
    parse_elem(F, text);
  } catch (const ParseError& e) {
    return e.position();
  }
  return std::string::npos;
}

json scene(const json& checks) {
  return json{{"name", "t"}, {"field", {{"p", 3}, {"e", 1}, {"n", 6}}}, {"checks", checks}};
}

}  // namespace

TEST(Parse, Elements) {
  auto F = Field::make(3, 1, 6);
  const Elem g = F->generator();
  EXPECT_EQ(parse_elem(*F, "g^5"), F->gen_pow(5));
  EXPECT_EQ(parse_elem(*F, "g^-1"), F->inv(g));
  EXPECT_EQ(parse_elem(*F, "1/g"), F->inv(g));
  EXPECT_EQ(parse_elem(*F, "2*g + 1"), F->add(F->mul(F->from_int(2), g), F->one()));
  EXPECT_EQ(parse_elem(*F, "-1"), F->neg(F->one()));
  EXPECT_EQ(parse_elem(*F, "4"), F->one());
  EXPECT_EQ(parse_elem(*F, "[1,2]"), F->from_coeffs({1, 2}));
  EXPECT_EQ(parse_elem(*F, "[]"), F->zero());
  EXPECT_EQ(parse_elem(*F, "g^(q^3+1)"), F->pow(g, 28));
  EXPECT_EQ(parse_elem(*F, "(g+1)^2"), F->mul(F->add(g, F->one()), F->add(g, F->one())));
  EXPECT_EQ(parse_elem(*F, "eta^2", {{"eta", g}}), F->mul(g, g));
  EXPECT_EQ(parse_elem(*F, "g", {{"g", F->one()}}), F->one());  // bindings shadow g
  EXPECT_EQ(parse_int_expr(*F, "q^3+1"), 28);
  EXPECT_EQ(parse_int_expr(*F, "p*n - (e + 1)"), 16);
  EXPECT_EQ(parse_int_expr(*F, "2^3^2"), 512);
}

TEST(Parse, ElementErrors) {
  auto F = Field::make(3, 1, 6);
  EXPECT_EQ(parse_error_pos(*F, "g +"), 3u);
  EXPECT_EQ(parse_error_pos(*F, "eta"), 0u);
  EXPECT_EQ(parse_error_pos(*F, "g ) "), 2u);
  EXPECT_EQ(parse_error_pos(*F, "[1,3]"), 3u);
  EXPECT_EQ(parse_error_pos(*F, "1/0"), 2u);
  EXPECT_EQ(parse_error_pos(*F, "(g"), 2u);
  EXPECT_EQ(parse_error_pos(*F, "g^(2^70)"), 7u);
  EXPECT_THROW(parse_int_expr(*F, "g"), ParseError);
}

TEST(Parse, Polynomials) {
  auto F = Field::make(3, 1, 6);
  const Elem eta = F->gen_pow(5);
  LinearizedPoly f = parse_poly(*F, "eta*X^q^1 + X^q^4 (s=1,n=6)", {{"eta", eta}});
  EXPECT_EQ(f.s(), 1u);
  EXPECT_EQ(f.support(), (std::vector<std::uint32_t>{1, 4}));
  EXPECT_EQ(f.coeff(1), eta);
  // X^q^k is x^{q^k}; with s = 5 it sits at index k * 5^{-1} mod 6
  LinearizedPoly h = parse_poly(*F, "X^q^5 (s=5,n=6)");
  EXPECT_EQ(h.support(), (std::vector<std::uint32_t>{1}));
  EXPECT_EQ(parse_poly(*F, "X").support(), (std::vector<std::uint32_t>{0}));
  EXPECT_EQ(parse_poly(*F, "X^q").support(), (std::vector<std::uint32_t>{1}));
  EXPECT_EQ(parse_poly(*F, "X^q^7").support(), (std::vector<std::uint32_t>{1}));
  LinearizedPoly d = parse_poly(*F, "(g+1)*X^q^2 - X^q^2 - 2*X^q^3");
  EXPECT_EQ(d.coeff(2), F->generator());
  EXPECT_EQ(d.coeff(3), F->one());
  for (int it = 0; it < 30; ++it) {
    LinearizedPoly r = rand_poly(*F, 1, true);
    ASSERT_EQ(parse_poly(*F, to_string(*F, r)), r);
  }
  EXPECT_THROW(parse_poly(*F, "X^q (s=1,n=4)"), ParameterViolation);
  EXPECT_THROW(parse_poly(*F, "X^q (s=2,n=6)"), ParameterViolation);
  EXPECT_THROW(parse_poly(*F, "X^q +"), ParseError);
  EXPECT_THROW(parse_poly(*F, "X^p"), ParseError);
  EXPECT_THROW(parse_poly(*F, "g X"), ParseError);
}

TEST(Json, FieldAndValuesRoundTrip) {
  auto F = Field::make(3, 2, 3);
  auto G = field_from_json(field_to_json(*F));
  EXPECT_EQ(G->modulus(), F->modulus());
  EXPECT_EQ(G->q(), 9u);
  auto H = load_field("p=5,n=3");
  EXPECT_EQ(H->order(), 125u);
  EXPECT_EQ(H->e(), 1u);
  EXPECT_THROW(load_field("/nonexistent/field.json"), SceneInvalid);
  for (int it = 0; it < 30; ++it) {
    Elem a = rand_elem(*F);
    ASSERT_EQ(elem_from_json(*F, elem_to_json(*F, a)), a);
    Vec v = rand_vec(*F, 4);
    ASSERT_EQ(vec_from_json(*F, vec_to_json(*F, v)), v);
    Matrix m = rand_matrix(*F, 2, 3);
    ASSERT_EQ(matrix_from_json(*F, matrix_to_json(*F, m)), m);
  }
  EXPECT_EQ(elem_from_json(*F, json("g^2")), F->gen_pow(2));
  EXPECT_EQ(elem_from_json(*F, json(-1)), F->neg(F->one()));
}

TEST(Json, LinsetReport) {
  auto F = Field::make(3, 1, 4);
  json r = linset_report(from_polynomial(F, LinearizedPoly::monomial(*F, 1, 1, F->one())));
  EXPECT_EQ(r["size"], 40);
  EXPECT_EQ(r["scattered"], true);
  EXPECT_EQ(r["maximum_scattered"], true);
}

TEST(Scene, ChecksPassAndFail) {
  json s = scene({
      {{"type", "roundtrip"}, {"poly", "eta*X^q^1 + X^q^4"}, {"bindings", {{"eta", "g^5"}}}},
      {{"type", "intn"}, {"poly", "X^q^1"}, {"expect", 1}},
      {{"type", "intn"}, {"gamma_equations", {{1, 0, 0, 0, 0, 0}, {0, 1, 0, 0, "g^5", 0}}}, {"expect", 3},
       {"expect_dims", {3, 1, -1}}, {"expect_disjoint", true}},
      {{"type", "scattered"}, {"poly", "X^q^1 + X^q^2 + X^q^3 + X^q^4 + X^q^5"}, {"expect", false}},
      {{"type", "cross_ratio"}, {"points", {{1, 0}, {0, 1}, {1, 1}, {1, 0}}}, {"expect", "inf"}},
      {{"type", "imaginary"}, {"point", {1, 0, 0, 0, 0, 0}}},
  });
  SceneResult r = run_scene(s, Exec::Serial);
  ASSERT_EQ(r.checks.size(), 6u);
  for (const auto& c : r.checks) EXPECT_TRUE(c.pass) << c.name << " " << c.message << " " << c.details.dump();
  EXPECT_EQ(r.exit_code(), 0);

  json bad = scene({{{"type", "intn"}, {"poly", "X^q^1"}, {"expect", 2}}});
  EXPECT_EQ(run_scene(bad).exit_code(), 1);
}

TEST(Scene, CorruptedVertexIsPrecondition) {
  // x_0 = x_1, x_2 = x_3 holds on the F_q-rational points of Sigma
  json s = scene({{{"type", "intn"},
                   {"gamma_equations", {{1, -1, 0, 0, 0, 0}, {0, 0, 1, -1, 0, 0}}},
                   {"lambda", {{1, 0, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0}}},
                   {"expect", 1}}});
  SceneResult r = run_scene(s);
  ASSERT_EQ(r.checks.size(), 1u);
  EXPECT_FALSE(r.checks[0].pass);
  EXPECT_EQ(r.checks[0].error_kind, "DegenerateVertex");
  EXPECT_EQ(r.exit_code(), 2);
}

TEST(Scene, InvalidInput) {
  EXPECT_THROW(run_scene(json{{"checks", json::array()}}), SceneInvalid);
  EXPECT_THROW(run_scene(scene({{{"type", "nope"}}})), SceneInvalid);
  EXPECT_THROW(run_scene(scene({{{"type", "scattered"}, {"poly", "X^q +"}}})), SceneInvalid);
}

TEST(Sweep, DeterministicAcrossExecutions) {
  json spec = {{"field", {{"p", 3}, {"e", 1}, {"n", 4}}},
               {"family", "LP"},
               {"validation", "relaxed"},
               {"params", {{"s", "all"}, {"eta", "all"}}},
               {"checks", {"scattered", "predicate", "agree", "roundtrip", "intn", "adjoint"}}};
  SweepResult a = run_sweep(spec, Exec::Serial), b = run_sweep(spec, Exec::Parallel);
  EXPECT_EQ(sweep_to_json(a).dump(), sweep_to_json(b).dump());
  EXPECT_EQ(sweep_to_csv(a), sweep_to_csv(b));
  EXPECT_EQ(a.rows.size(), 2u * 80u);
  for (const auto& row : a.rows) {
    EXPECT_EQ(row["agree"], true);
    EXPECT_EQ(row["roundtrip"], true);
    EXPECT_EQ(row["adjoint"], true);
    EXPECT_TRUE(row["anchors"].contains("scattered"));
    if (row["scattered"] == true) EXPECT_EQ(row["intn"], 2);
  }
}

TEST(Sweep, GuardsAndErrors) {
  json spec = {{"field", {{"p", 3}, {"e", 1}, {"n", 4}}}, {"family", "LP"}, {"params", {{"eta", "all"}}}};
  EXPECT_THROW(run_sweep(spec, Exec::Serial, 10), EnumerationTooLarge);
  json bad = spec;
  bad["checks"] = {"frobnicate"};
  EXPECT_THROW(run_sweep(bad), SceneInvalid);
  json fam = spec;
  fam["family"] = "XYZ";
  EXPECT_THROW(run_sweep(fam), ParameterViolation);
}

TEST(Analyze, PseudoregulusReport) {
  auto F = Field::make(3, 1, 6);
  json r = analyze(F, parse_poly(*F, "X^q^1"), Exec::Serial);
  EXPECT_EQ(r["linear_set"]["size"], 364);
  EXPECT_EQ(r["scattered"], true);
  EXPECT_EQ(r["intn"], 1);
  EXPECT_EQ(r["roundtrip"], true);
}
