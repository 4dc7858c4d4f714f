#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fqlin/linpoly.hpp"
#include "fqlin/projgeom.hpp"

namespace fqlin {

struct ExtendedScalar {
  bool infinite = false;
  Elem value;
  static ExtendedScalar inf() { return {true, Elem()}; }
  static ExtendedScalar of(Elem v) { return {false, v}; }
  friend bool operator==(const ExtendedScalar&, const ExtendedScalar&) = default;
};

std::string to_string(const Field& F, const ExtendedScalar& x);

// Points are vectors of any common length; they must span at most a line.
ExtendedScalar cross_ratio(const Field& F, const Vec& A, const Vec& B, const Vec& C, const Vec& D);
bool is_harmonic(const Field& F, const Vec& A, const Vec& B, const Vec& C, const Vec& D);
bool collinear(const Field& F, const std::vector<Vec>& pts);

enum class Tri { False, True, Unknown };
const char* to_string(Tri t);

enum class Family { PR, LP, CMPZ, CMZ, PSI };
const char* to_string(Family f);
Family family_from_string(const std::string& s);

struct FamilyParams {
  std::uint32_t s = 1;  // PR, LP, PSI
  std::uint32_t ell = 1;  // CMPZ
  std::uint32_t t = 0;  // PSI, n = 2t
  Elem eta, delta, h, m;
};

struct FamilyInstance {
  Family tag;
  FamilyParams params;
  LinearizedPoly f;
};

enum class Validation { Strict, Relaxed };

// Relaxed keeps the structural conditions (gcds, n, delta^2+delta=1) and
// skips the norm conditions, so sweeps can include degenerate members.
FamilyInstance make_family(const Field& F, Family tag, const FamilyParams& p,
                           Validation v = Validation::Strict);

FamilyInstance make_pr(const Field& F, std::uint32_t s);
FamilyInstance make_lp(const Field& F, std::uint32_t s, Elem eta, Validation v = Validation::Strict);
FamilyInstance make_cmpz(const Field& F, std::uint32_t ell, Elem eta, Validation v = Validation::Strict);
FamilyInstance make_cmz(const Field& F, Elem delta, Validation v = Validation::Strict);
FamilyInstance make_psi(const Field& F, std::uint32_t t, std::uint32_t s, Elem m, Elem h,
                        Validation v = Validation::Strict);

// Roots of delta^2 + delta - 1 in F_{q^n}.
std::vector<Elem> cmz_deltas(const Field& F);
// {h : N_{q^n/q^{n/2}}(h) = -1}
std::vector<Elem> norm_minus_one(const Field& F);
// Membership in {z in F_{q^t} : z is no (q-1)-th or (q+1)-th power of an element of ker Tr_{q^{2t}/q^t}}.
bool in_W(const Field& F, Elem z);

// Number of roots of Y^2 - (Tr(g) - 1) Y + N(g) in F_q, g in F_{q^3} (n = 6).
// distinct=false counts a double root twice.
int cmpz6_root_count(const Field& F, Elem gamma, bool distinct);
// gamma attached to L^{3,6}_{ell,eta} after reducing to ell = 2.
Elem cmpz6_gamma(const Field& F, std::uint32_t ell, Elem eta);

Tri scattered_predicate(const Field& F, const FamilyInstance& inst);

enum class Characterization { L36, L38, L46, L46Even, PSI1, PSI1Harmonic, PSIm };
const char* to_string(Characterization c);
Characterization characterization_from_string(const std::string& s);
Characterization characterization_for(const Field& F, const FamilyInstance& inst);

struct ConditionItem {
  std::string id;
  std::string anchor;
  Tri verdict = Tri::False;
  std::map<std::string, std::string> values;
};

struct ConditionReport {
  Characterization which;
  std::optional<std::uint32_t> s;  // generator exponent where item 1 holds
  Elem v_scale{1};                 // v = v_scale * P, searched when items use v
  std::vector<ConditionItem> items;
  Tri overall = Tri::False;
};

struct CharacterizationInput {
  ProjSubspace gamma;
  Matrix lambda_frame;
  std::optional<Vec> P;              // default e_0
  std::optional<std::uint32_t> s;    // default: search gcd(s, n) = 1 ascending
};

ConditionReport check_characterization(Characterization which, const FieldPtr& F,
                                       const CharacterizationInput& in);

// Anchor strings cited by reports.
const std::map<std::string, std::string>& anchors();

}  // namespace fqlin
