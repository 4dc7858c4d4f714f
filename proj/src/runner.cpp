#include "fqlin/runner.hpp"

#include <algorithm>
#include <sstream>

namespace fqlin {

bool SceneResult::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

int SceneResult::exit_code() const {
  int code = 0;
  for (const auto& c : checks) {
    if (c.pass) continue;
    if (c.error_kind == "PreconditionViolated" || c.error_kind == "DegenerateVertex" ||
        c.error_kind == "EnumerationTooLarge")
      return 2;
    code = 1;
  }
  return code;
}

namespace {

std::string anchor_of(const std::string& id) {
  auto it = anchors().find(id);
  return it == anchors().end() ? id : it->second;
}

Bindings read_bindings(const Field& F, const json& j, Bindings b) {
  if (j.is_null()) return b;
  if (!j.is_object()) throw SceneInvalid("bindings must be an object");
  for (const auto& [name, v] : j.items()) {
    if (v.is_object() && v.contains("root_of")) {
      // Y^2 + bY + c
      const json& bc = v.at("root_of");
      if (!bc.is_array() || bc.size() != 2) throw SceneInvalid("root_of takes [b, c]");
      const Elem bb = elem_from_json(F, bc[0], b), cc = elem_from_json(F, bc[1], b);
      const auto roots = F.solve_monic_quadratic_in_subfield(bb, cc, F.n()).roots;
      const std::size_t idx = v.value("index", 0u);
      if (idx >= roots.size()) throw SceneInvalid("binding '" + name + "': no root with index " + std::to_string(idx));
      b[name] = roots[idx];
    } else {
      b[name] = elem_from_json(F, v, b);
    }
  }
  return b;
}

std::vector<std::uint32_t> read_uints(const json& j, const char* what) {
  if (!j.is_array()) throw SceneInvalid(std::string(what) + " must be an array of integers");
  std::vector<std::uint32_t> out;
  for (const auto& x : j) {
    if (!x.is_number_unsigned()) throw SceneInvalid(std::string(what) + " must be an array of integers");
    out.push_back(x.get<std::uint32_t>());
  }
  return out;
}

struct Geometry {
  ProjSubspace gamma;
  Matrix lambda;
  std::optional<LinearizedPoly> f;
};

// Gamma and Lambda from "poly" (the vertex construction) or from explicit
// "gamma"/"gamma_equations" and "lambda" rows.
Geometry read_geometry(const FieldPtr& Fp, const Subgeometry& S, const json& c, const Bindings& b) {
  const Field& F = *Fp;
  Geometry g;
  if (c.contains("poly")) g.f = parse_poly(F, c.at("poly").get<std::string>(), b);
  const bool explicit_gamma = c.contains("gamma") || c.contains("gamma_equations");
  std::optional<Vertex> V;
  if (g.f && (!explicit_gamma || !c.contains("lambda"))) V = build_vertex(S.with_s(g.f->s()), MultiPoly(*g.f));
  if (c.contains("gamma")) g.gamma = ProjSubspace(F, matrix_from_json(F, c.at("gamma"), b));
  else if (c.contains("gamma_equations"))
    g.gamma = ProjSubspace::from_equations(F, matrix_from_json(F, c.at("gamma_equations"), b));
  else if (V) g.gamma = V->gamma;
  else throw SceneInvalid("check needs poly, gamma or gamma_equations");
  if (c.contains("lambda")) g.lambda = matrix_from_json(F, c.at("lambda"), b);
  else if (V) g.lambda = V->lambda_frame;
  if (g.gamma.ambient() != S.u()) throw SceneInvalid("gamma has the wrong number of coordinates");
  if (explicit_gamma && g.lambda.rows() > 0) {
    const std::size_t want = S.u() - S.r();
    if (g.gamma.basis().rows() != want)
      throw DegenerateVertex("vertex has rank " + std::to_string(g.gamma.basis().rows()) + ", expected " +
                             std::to_string(want));
    if (rank(F, stack(g.gamma.basis(), g.lambda)) != S.u()) throw DegenerateVertex("vertex meets the line");
    if (count_sigma_points_in(S, g.gamma) != 0) throw DegenerateVertex("vertex meets the subgeometry");
  }
  return g;
}

bool same_weighted(const LinearSet& a, const LinearSet& b) { return a.points() == b.points(); }

void run_check(const FieldPtr& Fp, const json& c, const Bindings& scene_b, Exec exec, std::uint64_t guard,
               CheckResult& out) {
  const Field& F = *Fp;
  const Bindings b = read_bindings(F, c.value("bindings", json()), scene_b);
  const std::string type = out.type;
  const std::uint32_t s = c.value("s", 1u);
  const Subgeometry S1(Fp, 2, 1);
  if (type == "roundtrip") {
    out.anchor = anchor_of("roundtrip");
    const Geometry g = read_geometry(Fp, S1, c, b);
    if (!g.f) throw SceneInvalid("roundtrip needs poly");
    const LinearSet L1 = project(S1, g.gamma, g.lambda, exec).as_linear_set();
    const LinearSet L2 = from_polynomial(Fp, *g.f, exec);
    out.pass = same_weighted(L1, L2);
    out.details["size"] = L1.size();
    out.details["scattered"] = is_scattered(L1);
  } else if (type == "reconstruct") {
    out.anchor = anchor_of("reconstruct");
    const Geometry g = read_geometry(Fp, S1, c, b);
    const Subgeometry S(Fp, 2, s);
    Vec P(F.n(), F.zero());
    P[0] = F.one();
    if (c.contains("P")) P = vec_from_json(F, c.at("P"), b);
    std::vector<std::uint32_t> I;
    if (c.contains("I")) I = read_uints(c.at("I"), "I");
    else if (g.f) I = g.f->support();
    else throw SceneInvalid("reconstruct needs I or poly");
    ReconstructOptions opt;
    opt.check_evasive = c.value("check_evasive", true);
    opt.guard = guard;
    const Reconstruction rec = reconstruct_polynomial(S, g.gamma, {P}, {I}, opt);
    const auto sup = rec.F.part(0).support();
    out.details["polynomial"] = to_string(F, rec.F.part(0));
    out.details["support"] = sup;
    bool ok = true;
    if (c.contains("expect_support")) {
      auto want = read_uints(c.at("expect_support"), "expect_support");
      std::sort(want.begin(), want.end());
      ok = ok && sup == want;
    }
    // The recovered polynomial must describe the projection from its frame.
    const LinearSet Lp = project(S1, g.gamma, rec.lambda_frame, exec).as_linear_set();
    ok = ok && same_weighted(Lp, from_polynomial(Fp, rec.F, exec));
    out.pass = ok;
  } else if (type == "determinant") {
    out.anchor = anchor_of("orbit.det");
    const Subgeometry S(Fp, 2, s);
    const Vec A = vec_from_json(F, c.at("orbit_of"), b);
    if (A.size() != S.u()) throw SceneInvalid("orbit_of has the wrong length");
    const Elem d = determinant(F, sigma_orbit_matrix(S, A));
    const Elem want = elem_from_json(F, c.at("expect"), b);
    out.details["determinant"] = F.to_string(d);
    out.details["expected"] = F.to_string(want);
    out.pass = d == want && (!c.value("expect_nonzero", false) || !d.is_zero());
  } else if (type == "imaginary") {
    out.anchor = anchor_of("imaginary");
    const Subgeometry S(Fp, 2, s);
    const Vec A = vec_from_json(F, c.at("point"), b);
    if (A.size() != S.u()) throw SceneInvalid("point has the wrong length");
    const bool im = is_imaginary(S, A);
    out.details["moore_rank"] = moore_rank(S, A);
    out.pass = im == c.value("expect", true);
  } else if (type == "intn") {
    out.anchor = anchor_of("intn");
    const Geometry g = read_geometry(Fp, S1, c, b);
    const Subgeometry S(Fp, 2, c.contains("s") || !g.f ? s : g.f->s());
    const int k = intersection_number(S, g.gamma);
    out.details["intn"] = k;
    out.details["dims"] = intersection_dims(S, g.gamma, std::max(k, 1));
    bool ok = k == c.at("expect").get<int>();
    if (c.contains("expect_dims")) {
      const auto want = c.at("expect_dims").get<std::vector<int>>();
      const auto got = intersection_dims(S, g.gamma, static_cast<int>(want.size()) - 1);
      ok = ok && got == want;
    }
    if (c.value("expect_disjoint", false)) ok = ok && count_sigma_points_in(S, g.gamma, exec) == 0;
    out.pass = ok;
  } else if (type == "characterization") {
    const auto which = characterization_from_string(c.at("which").get<std::string>());
    out.anchor = to_string(which);
    const Geometry g = read_geometry(Fp, S1, c, b);
    CharacterizationInput in{g.gamma, g.lambda, std::nullopt, std::nullopt};
    if (c.contains("P")) in.P = vec_from_json(F, c.at("P"), b);
    if (c.contains("generator_s")) in.s = c.at("generator_s").get<std::uint32_t>();
    const ConditionReport r = check_characterization(which, Fp, in);
    out.details = condition_report_to_json(F, r);
    out.pass = std::string(to_string(r.overall)) == c.value("expect", std::string("true"));
  } else if (type == "scattered") {
    out.anchor = anchor_of("scattered");
    const LinearizedPoly f = parse_poly(F, c.at("poly").get<std::string>(), b);
    const LinearSet L = from_polynomial(Fp, f, exec);
    out.details = linset_report(L);
    out.pass = is_scattered(L) == c.value("expect", true);
  } else if (type == "cross_ratio") {
    out.anchor = "(A;B;C;D)";
    const json& pts = c.at("points");
    if (!pts.is_array() || pts.size() != 4) throw SceneInvalid("cross_ratio takes four points");
    const ExtendedScalar k = cross_ratio(F, vec_from_json(F, pts[0], b), vec_from_json(F, pts[1], b),
                                         vec_from_json(F, pts[2], b), vec_from_json(F, pts[3], b));
    out.details["value"] = to_string(F, k);
    const json& want = c.at("expect");
    if (want.is_string() && want.get<std::string>() == "inf") out.pass = k.infinite;
    else out.pass = !k.infinite && k.value == elem_from_json(F, want, b);
  } else {
    throw SceneInvalid("unknown check type '" + type + "'");
  }
}

}  // namespace

SceneResult run_scene(const json& scene, Exec exec, std::uint64_t guard) {
  if (!scene.is_object()) throw SceneInvalid("scene must be a JSON object");
  if (!scene.contains("field") || !scene.contains("checks") || !scene.at("checks").is_array())
    throw SceneInvalid("scene needs field and checks");
  const FieldPtr F = field_from_json(scene.at("field"));
  const Bindings b = read_bindings(*F, scene.value("bindings", json()), {});
  SceneResult res;
  res.name = scene.value("name", std::string("scene"));
  std::size_t k = 0;
  for (const json& c : scene.at("checks")) {
    if (!c.is_object() || !c.contains("type")) throw SceneInvalid("check " + std::to_string(k) + " has no type");
    CheckResult cr;
    cr.type = c.at("type").get<std::string>();
    cr.name = c.value("name", cr.type + "#" + std::to_string(k));
    try {
      run_check(F, c, b, exec, guard, cr);
    } catch (const SceneInvalid&) {
      throw;
    } catch (const ParseError& e) {
      throw SceneInvalid("check " + cr.name + ": parse error at " + std::to_string(e.position()) + ": " + e.what());
    } catch (const json::exception& e) {
      throw SceneInvalid("check " + cr.name + ": " + e.what());
    } catch (const Error& e) {
      cr.pass = false;
      cr.error_kind = e.kind();
      cr.message = e.what();
    }
    res.checks.push_back(std::move(cr));
    ++k;
  }
  return res;
}

json scene_result_to_json(const SceneResult& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    json j{{"name", c.name}, {"type", c.type}, {"anchor", c.anchor}, {"pass", c.pass}};
    if (!c.error_kind.empty()) j["error"] = json{{"kind", c.error_kind}, {"message", c.message}};
    j["details"] = c.details;
    checks.push_back(j);
  }
  return json{{"scene", r.name}, {"pass", r.pass()}, {"checks", checks}};
}

// ------------------------------------------------------------------ sweeps

namespace {

struct Instance {
  FamilyParams p;
  FamilyInstance inst;
};

std::vector<Elem> elem_range(const Field& F, const json& j, const Bindings& b, const std::string& what) {
  if (j.is_array()) {
    std::vector<Elem> v;
    for (const auto& x : j) v.push_back(elem_from_json(F, x, b));
    return v;
  }
  if (!j.is_string()) throw SceneInvalid(what + ": expected a list or a range keyword");
  const std::string k = j.get<std::string>();
  std::vector<Elem> v;
  if (k == "all") {
    for (std::uint64_t c = 1; c < F.order(); ++c) v.emplace_back(static_cast<std::uint32_t>(c));
  } else if (k == "all0") {
    for (std::uint64_t c = 0; c < F.order(); ++c) v.emplace_back(static_cast<std::uint32_t>(c));
  } else if (k.rfind("subfield:", 0) == 0) {
    const auto l = static_cast<std::uint32_t>(std::stoul(k.substr(9)));
    for (Elem x : F.subfield_elements(l))
      if (!x.is_zero()) v.push_back(x);
  } else if (k == "norm-1") {
    v = norm_minus_one(F);
  } else if (k == "roots") {
    v = cmz_deltas(F);
  } else {
    throw SceneInvalid(what + ": unknown range '" + k + "'");
  }
  return v;
}

std::vector<std::uint32_t> uint_range(const json& j, const std::vector<std::uint32_t>& all, const std::string& what) {
  if (j.is_null()) return {all.empty() ? 1u : all.front()};
  if (j.is_string() && j.get<std::string>() == "all") return all;
  if (j.is_number_unsigned()) return {j.get<std::uint32_t>()};
  if (j.is_array()) return read_uints(j, what.c_str());
  throw SceneInvalid(what + ": expected an integer, a list or \"all\"");
}

bool known_check(const std::string& c) {
  static const std::vector<std::string> k = {"scattered", "maximum_scattered", "predicate", "agree", "roundtrip",
                                             "intn", "characterization", "adjoint", "weights", "size"};
  if (std::find(k.begin(), k.end(), c) != k.end()) return true;
  return c.rfind("evasive:", 0) == 0;
}

std::string check_anchor(const std::string& c) {
  if (c == "roundtrip") return anchor_of("roundtrip");
  if (c == "intn") return anchor_of("intn");
  if (c == "adjoint") return anchor_of("adjoint");
  if (c.rfind("evasive:", 0) == 0) return anchor_of("evasive");
  if (c == "predicate" || c == "agree") return anchor_of("predicate");
  if (c == "characterization") return "characterization report";
  return anchor_of("scattered");
}

json evaluate_row(const FieldPtr& Fp, const Instance& I, const std::vector<std::string>& checks, std::uint64_t guard) {
  const Field& F = *Fp;
  const Exec ex = Exec::Serial;
  json row = json::object();
  row["poly"] = to_string(F, I.inst.f);
  std::optional<LinearSet> L;
  auto lin = [&]() -> const LinearSet& {
    if (!L) L.emplace(from_polynomial(Fp, I.inst.f, ex));
    return *L;
  };
  const Subgeometry S1(Fp, 2, I.inst.f.s());
  for (const auto& c : checks) {
    try {
      if (c == "scattered") row[c] = is_scattered(lin());
      else if (c == "maximum_scattered") row[c] = is_maximum_scattered(lin());
      else if (c == "size") row[c] = lin().size();
      else if (c == "weights") {
        std::ostringstream os;
        bool first = true;
        for (auto [w, n] : lin().weight_spectrum()) {
          os << (first ? "" : " ") << w << ":" << n;
          first = false;
        }
        row[c] = os.str();
      } else if (c == "predicate") row[c] = to_string(scattered_predicate(F, I.inst));
      else if (c == "agree") {
        const Tri t = scattered_predicate(F, I.inst);
        row[c] = t == Tri::Unknown ? json("n/a") : json((t == Tri::True) == is_scattered(lin()));
      } else if (c == "roundtrip" || c == "intn" || c == "characterization") {
        const Vertex V = build_vertex(S1, MultiPoly(I.inst.f));
        if (c == "roundtrip") row[c] = project(S1, V.gamma, V.lambda_frame, ex).as_linear_set().points() == lin().points();
        else if (c == "intn") row[c] = intersection_number(S1, V.gamma);
        else {
          const auto which = characterization_for(F, I.inst);
          const auto r = check_characterization(which, Fp, {V.gamma, V.lambda_frame, std::nullopt, std::nullopt});
          row[c] = to_string(r.overall);
        }
      } else if (c == "adjoint") {
        row[c] = same_point_set(lin(), from_polynomial(Fp, adjoint(F, I.inst.f), ex));
      } else {
        // evasive:h:k
        std::uint32_t h = 0, k = 0;
        if (std::sscanf(c.c_str(), "evasive:%u:%u", &h, &k) != 2) throw SceneInvalid("bad check '" + c + "'");
        row[c] = is_evasive(lin(), h, k, guard);
      }
    } catch (const EnumerationTooLarge&) {
      throw;
    } catch (const SceneInvalid&) {
      throw;
    } catch (const Error& e) {
      row[c] = std::string("error: ") + e.kind();
    }
  }
  return row;
}

}  // namespace

SweepResult run_sweep(const json& spec, Exec exec, std::uint64_t guard) {
  if (!spec.is_object() || !spec.contains("field") || !spec.contains("family"))
    throw SceneInvalid("sweep needs field and family");
  const FieldPtr Fp = field_from_json(spec.at("field"));
  const Field& F = *Fp;
  const Family fam = family_from_string(spec.at("family").get<std::string>());
  const Validation val = spec.value("validation", std::string("strict")) == "relaxed" ? Validation::Relaxed : Validation::Strict;
  const Bindings b = read_bindings(F, spec.value("bindings", json()), {});
  const json params = spec.value("params", json::object());
  std::vector<std::string> checks = {"scattered"};
  if (spec.contains("checks")) checks = spec.at("checks").get<std::vector<std::string>>();
  for (const auto& c : checks)
    if (!known_check(c)) throw SceneInvalid("unknown check '" + c + "'");

  const std::uint32_t n = F.n();
  std::vector<std::uint32_t> coprime;
  for (std::uint32_t s = 1; s < n; ++s)
    if (gcd_u(s, n) == 1) coprime.push_back(s);
  std::vector<std::uint32_t> ells;
  for (std::uint32_t l = 1; l < n; ++l)
    if (n % 2 == 0 && gcd_u(l, n / 2) == 1) ells.push_back(l);

  auto get = [&](const char* k) { return params.contains(k) ? params.at(k) : json(); };
  const auto S = uint_range(get("s"), coprime, "s");
  const auto L = fam == Family::CMPZ ? uint_range(get("ell"), ells, "ell") : std::vector<std::uint32_t>{1};
  const std::vector<std::uint32_t> T{fam == Family::PSI ? (get("t").is_null() ? n / 2 : get("t").get<std::uint32_t>()) : 0u};
  const std::vector<Elem> one{F.one()};
  const auto ETA = (fam == Family::LP || fam == Family::CMPZ) ? elem_range(F, get("eta").is_null() ? json("all") : get("eta"), b, "eta")
                                                               : std::vector<Elem>{F.zero()};
  const auto DEL = fam == Family::CMZ ? elem_range(F, get("delta").is_null() ? json("roots") : get("delta"), b, "delta")
                                      : std::vector<Elem>{F.zero()};
  const auto M = fam == Family::PSI ? elem_range(F, get("m").is_null() ? json::array({1}) : get("m"), b, "m") : one;
  const auto H = fam == Family::PSI ? elem_range(F, get("h").is_null() ? json("norm-1") : get("h"), b, "h") : one;

  const std::uint64_t total = std::uint64_t(S.size()) * L.size() * ETA.size() * DEL.size() * M.size() * H.size();
  if (total > guard) throw EnumerationTooLarge("sweep has " + std::to_string(total) + " candidate instances, guard is " + std::to_string(guard));

  std::vector<Instance> inst;
  for (auto s : S)
    for (auto l : L)
      for (auto eta : ETA)
        for (auto d : DEL)
          for (auto m : M)
            for (auto h : H) {
              FamilyParams p;
              p.s = s;
              p.ell = l;
              p.t = T[0];
              p.eta = eta;
              p.delta = d;
              p.m = m;
              p.h = h;
              try {
                inst.push_back({p, make_family(F, fam, p, val)});
              } catch (const ParameterViolation&) {
              } catch (const DomainError&) {
              }
            }

  SweepResult res;
  res.columns = {"index", "family"};
  switch (fam) {
    case Family::PR: res.columns.push_back("s"); break;
    case Family::LP: res.columns.insert(res.columns.end(), {"s", "eta"}); break;
    case Family::CMPZ: res.columns.insert(res.columns.end(), {"ell", "eta"}); break;
    case Family::CMZ: res.columns.push_back("delta"); break;
    case Family::PSI: res.columns.insert(res.columns.end(), {"t", "s", "m", "h"}); break;
  }
  res.columns.push_back("poly");
  for (const auto& c : checks) res.columns.push_back(c);
  res.columns.push_back("anchors");

  std::vector<json> rows(inst.size());
  std::vector<std::string> guard_err(inst.size());
  const std::int64_t N = static_cast<std::int64_t>(inst.size());
  auto one_row = [&](std::int64_t i) {
    try {
      rows[i] = evaluate_row(Fp, inst[i], checks, guard);
    } catch (const EnumerationTooLarge& e) {
      guard_err[i] = e.what();
    } catch (const SceneInvalid& e) {
      guard_err[i] = std::string("invalid: ") + e.what();
    }
  };
  if (exec == Exec::Serial) {
    for (std::int64_t i = 0; i < N; ++i) one_row(i);
  } else {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < N; ++i) one_row(i);
  }
  for (std::int64_t i = 0; i < N; ++i) {
    if (guard_err[i].rfind("invalid: ", 0) == 0) throw SceneInvalid(guard_err[i].substr(9));
    if (!guard_err[i].empty()) throw EnumerationTooLarge(guard_err[i]);
  }

  json anc = json::object();
  for (const auto& c : checks) anc[c] = check_anchor(c);
  for (std::int64_t i = 0; i < N; ++i) {
    const auto& p = inst[i].p;
    json row = json::object();
    row["index"] = i;
    row["family"] = to_string(fam);
    switch (fam) {
      case Family::PR: row["s"] = p.s; break;
      case Family::LP:
        row["s"] = p.s;
        row["eta"] = F.to_string(p.eta);
        break;
      case Family::CMPZ:
        row["ell"] = p.ell;
        row["eta"] = F.to_string(p.eta);
        break;
      case Family::CMZ: row["delta"] = F.to_string(inst[i].inst.params.delta); break;
      case Family::PSI:
        row["t"] = p.t;
        row["s"] = p.s;
        row["m"] = F.to_string(p.m);
        row["h"] = F.to_string(p.h);
        break;
    }
    for (auto& [k, v] : rows[i].items()) row[k] = v;
    row["anchors"] = anc;
    res.rows.push_back(std::move(row));
  }
  return res;
}

json sweep_to_json(const SweepResult& r) { return json{{"columns", r.columns}, {"rows", r.rows}}; }

std::string sweep_to_csv(const SweepResult& r) {
  auto cell = [](const json& v) {
    std::string s;
    if (v.is_string()) s = v.get<std::string>();
    else if (v.is_object()) {
      for (const auto& [k, a] : v.items()) s += (s.empty() ? "" : "; ") + k + "=" + a.get<std::string>();
    } else s = v.dump();
    if (s.find_first_of(",\"\n") != std::string::npos) {
      std::string q = "\"";
      for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
      return q + "\"";
    }
    return s;
  };
  std::ostringstream os;
  for (std::size_t i = 0; i < r.columns.size(); ++i) os << (i ? "," : "") << r.columns[i];
  os << "\n";
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < r.columns.size(); ++i) os << (i ? "," : "") << cell(row.value(r.columns[i], json()));
    os << "\n";
  }
  return os.str();
}

json analyze(const FieldPtr& Fp, const LinearizedPoly& f, Exec exec) {
  const Field& F = *Fp;
  json out;
  out["field"] = field_to_json(F);
  out["polynomial"] = to_string(F, f);
  out["s"] = f.s();
  out["n"] = f.n();
  out["support"] = f.support();
  out["qdegree"] = f.is_zero() ? json(nullptr) : json(f.qdegree());
  out["kernel_dim"] = kernel_dim(F, f);
  out["permutation"] = is_permutation(F, f);
  const LinearSet L = from_polynomial(Fp, f, exec);
  out["linear_set"] = linset_report(L);
  out["scattered"] = is_scattered(L);
  try {
    const Subgeometry S(Fp, 2, 1);
    const Vertex V = build_vertex(S, MultiPoly(f));
    const int k = intersection_number(S, V.gamma);
    out["intn"] = k;
    out["intn_dims"] = intersection_dims(S, V.gamma, std::max(k, 1));
    out["roundtrip"] = project(S, V.gamma, V.lambda_frame, exec).as_linear_set().points() == L.points();
  } catch (const Error& e) {
    out["intn"] = nullptr;
    out["vertex_error"] = std::string(e.kind()) + ": " + e.what();
  }
  return out;
}

}  // namespace fqlin
