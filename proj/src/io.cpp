#include "fqlin/io.hpp"

#include <cctype>
#include <fstream>
#include <limits>
#include <regex>

namespace fqlin {

namespace {

class Parser {
 public:
  Parser(const Field& F, std::string_view s, const Bindings* b, std::size_t base = 0)
      : F_(F), s_(s), b_(b), base_(base) {}

  Elem expr() {
    Elem v = term();
    for (;;) {
      skip();
      if (eat('+')) v = F_.add(v, term());
      else if (eat('-')) v = F_.sub(v, term());
      else return v;
    }
  }

  // Products and quotients; stops before "*X" when parsing a coefficient.
  Elem term(bool stop_at_X = false) {
    Elem v = unary();
    for (;;) {
      skip();
      if (peek() == '*') {
        if (stop_at_X && monomial_follows(pos_ + 1)) return v;
        ++pos_;
        v = F_.mul(v, unary());
      } else if (peek() == '/') {
        ++pos_;
        const std::size_t at = pos_;
        Elem d = unary();
        if (d.is_zero()) fail("division by zero", at);
        v = F_.div(v, d);
      } else {
        return v;
      }
    }
  }

  std::int64_t iexpr() {
    std::int64_t v = iterm();
    for (;;) {
      skip();
      if (eat('+')) v = checked(static_cast<__int128>(v) + iterm());
      else if (eat('-')) v = checked(static_cast<__int128>(v) - iterm());
      else return v;
    }
  }

  // Polynomial body: terms [coef*]X[^q[^k]] joined by + and -.
  Vec poly(std::uint32_t n, std::uint32_t s) {
    Vec a(n, F_.zero());
    const std::uint32_t sinv = inv_mod_u(s % n, n);
    bool first = true;
    for (;;) {
      skip();
      bool neg = false;
      if (!first) {
        if (eat('+')) neg = false;
        else if (eat('-')) neg = true;
        else if (done()) break;
        else fail("expected + or -", pos_);
      } else if (eat('-')) {
        neg = true;
      }
      first = false;
      skip();
      Elem c = F_.one();
      if (!monomial_follows(pos_)) {
        c = term(true);
        skip();
        if (!eat('*')) fail("expected *X after coefficient", pos_);
      }
      const std::uint32_t k = monomial(n);
      if (neg) c = F_.neg(c);
      const std::uint32_t i = static_cast<std::uint32_t>(std::uint64_t(k) * sinv % n);
      a[i] = F_.add(a[i], c);
    }
    return a;
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool done() {
    skip();
    return pos_ >= s_.size();
  }
  void expect_end() {
    if (!done()) fail("unexpected '" + std::string(1, s_[pos_]) + "'", pos_);
  }
  [[noreturn]] void fail(const std::string& msg, std::size_t at) const { throw ParseError(msg, base_ + at); }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  bool eat(char c) {
    skip();
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool ident_char(std::size_t i) const {
    return i < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i])) || s_[i] == '_');
  }
  bool monomial_follows(std::size_t i) const {
    while (i < s_.size() && std::isspace(static_cast<unsigned char>(s_[i]))) ++i;
    return i < s_.size() && s_[i] == 'X' && !ident_char(i + 1);
  }

  std::uint32_t monomial(std::uint32_t n) {
    skip();
    if (!monomial_follows(pos_)) fail("expected X", pos_);
    ++pos_;
    skip();
    if (peek() != '^') return 0;
    ++pos_;
    skip();
    if (peek() != 'q' || ident_char(pos_ + 1)) fail("expected q after X^", pos_);
    ++pos_;
    skip();
    if (peek() != '^') return 1 % n;
    ++pos_;
    const std::size_t at = pos_;
    const std::int64_t k = iprimary();
    if (k < 0) fail("negative Frobenius exponent", at);
    return static_cast<std::uint32_t>(k % n);
  }

  Elem unary() {
    skip();
    if (eat('-')) return F_.neg(unary());
    Elem v = atom();
    skip();
    if (peek() == '^') {
      ++pos_;
      v = F_.pow(v, ipow_factor());
    }
    return v;
  }

  Elem atom() {
    skip();
    const std::size_t at = pos_;
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Elem v = expr();
      if (!eat(')')) fail("expected )", pos_);
      return v;
    }
    if (c == '[') {
      ++pos_;
      std::vector<std::uint32_t> co;
      skip();
      if (!eat(']')) {
        for (;;) {
          skip();
          const std::size_t a2 = pos_;
          const std::int64_t d = number();
          if (d < 0 || d >= static_cast<std::int64_t>(F_.p())) fail("coefficient outside 0..p-1", a2);
          co.push_back(static_cast<std::uint32_t>(d));
          if (eat(']')) break;
          if (!eat(',')) fail("expected , or ]", pos_);
        }
      }
      if (co.size() > F_.degree()) fail("too many coefficients", at);
      return F_.from_coeffs(co);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return F_.from_int(number());
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::string id = ident();
      if (b_) {
        auto it = b_->find(id);
        if (it != b_->end()) return it->second;
      }
      if (id == "g") return F_.generator();
      fail("unknown name '" + id + "'", at);
    }
    if (c == '\0') fail("unexpected end of input", at);
    fail("unexpected '" + std::string(1, c) + "'", at);
  }

  std::string ident() {
    const std::size_t a = pos_;
    while (ident_char(pos_)) ++pos_;
    return std::string(s_.substr(a, pos_ - a));
  }

  std::int64_t number() {
    skip();
    const std::size_t a = pos_;
    __int128 v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_] - '0');
      if (v > std::numeric_limits<std::int64_t>::max()) fail("number too large", a);
      ++pos_;
    }
    if (a == pos_) fail("expected a number", a);
    return static_cast<std::int64_t>(v);
  }

  std::int64_t checked(__int128 v) const {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
      fail("integer overflow", pos_);
    return static_cast<std::int64_t>(v);
  }

  std::int64_t iterm() {
    std::int64_t v = ipow_factor();
    for (;;) {
      skip();
      if (eat('*')) v = checked(static_cast<__int128>(v) * ipow_factor());
      else return v;
    }
  }

  std::int64_t ipow_factor() {
    skip();
    if (eat('-')) return -ipow_factor();
    const std::int64_t b = iprimary();
    skip();
    if (peek() == '^') {
      ++pos_;
      const std::size_t at = pos_;
      const std::int64_t e = ipow_factor();
      if (e < 0) fail("negative integer exponent", at);
      __int128 r = 1;
      for (std::int64_t i = 0; i < e; ++i) r = checked(r * b);
      return static_cast<std::int64_t>(r);
    }
    return b;
  }

  std::int64_t iprimary() {
    skip();
    const std::size_t at = pos_;
    if (eat('(')) {
      const std::int64_t v = iexpr();
      if (!eat(')')) fail("expected )", pos_);
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(peek()))) return number();
    if (std::isalpha(static_cast<unsigned char>(peek()))) {
      const std::string id = ident();
      if (id == "p") return F_.p();
      if (id == "q") return static_cast<std::int64_t>(F_.q());
      if (id == "n") return F_.n();
      if (id == "e") return F_.e();
      fail("unknown integer symbol '" + id + "'", at);
    }
    fail("expected an integer", at);
  }

  const Field& F_;
  std::string_view s_;
  const Bindings* b_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

}  // namespace

Elem parse_elem(const Field& F, std::string_view text, const Bindings& b) {
  Parser P(F, text, &b);
  if (P.done()) P.fail("empty expression", 0);
  Elem v = P.expr();
  P.expect_end();
  return v;
}

std::int64_t parse_int_expr(const Field& F, std::string_view text) {
  Parser P(F, text, nullptr);
  const std::int64_t v = P.iexpr();
  P.expect_end();
  return v;
}

LinearizedPoly parse_poly(const Field& F, std::string_view text, const Bindings& b) {
  static const std::regex suffix(R"(\(\s*s\s*=\s*(\d+)\s*,\s*n\s*=\s*(\d+)\s*\)\s*$)");
  std::string str(text);
  std::uint32_t s = 1, n = F.n();
  std::smatch m;
  std::size_t body_len = str.size();
  if (std::regex_search(str, m, suffix)) {
    s = static_cast<std::uint32_t>(std::stoul(m[1].str()));
    n = static_cast<std::uint32_t>(std::stoul(m[2].str()));
    body_len = static_cast<std::size_t>(m.position(0));
  }
  if (n != F.n()) throw ParameterViolation("literal has n=" + std::to_string(n) + " but the field has n=" + std::to_string(F.n()));
  if (s == 0 || gcd_u(s, n) != 1) throw ParameterViolation("gcd(s, n) = 1 fails for s=" + std::to_string(s));
  Parser P(F, std::string_view(str).substr(0, body_len), &b);
  if (P.done()) P.fail("empty polynomial", 0);
  Vec a = P.poly(n, s);
  return LinearizedPoly(n, s, a);
}

FieldPtr field_from_json(const json& j) {
  try {
    const auto p = j.at("p").get<std::uint32_t>();
    const auto e = j.value("e", 1u);
    const auto n = j.at("n").get<std::uint32_t>();
    std::vector<std::uint32_t> mod;
    if (j.contains("modulus")) mod = j.at("modulus").get<std::vector<std::uint32_t>>();
    return Field::make(p, e, n, mod);
  } catch (const json::exception& ex) {
    throw SceneInvalid(std::string("bad field spec: ") + ex.what());
  } catch (const DomainError& ex) {
    throw SceneInvalid(std::string("bad field spec: ") + ex.what());
  }
}

json field_to_json(const Field& F) {
  return json{{"p", F.p()}, {"e", F.e()}, {"n", F.n()}, {"modulus", F.modulus()}};
}

FieldPtr load_field(const std::string& spec) {
  static const std::regex inl(R"(^\s*p\s*=\s*(\d+)\s*,\s*(?:e\s*=\s*(\d+)\s*,\s*)?n\s*=\s*(\d+)\s*$)");
  std::smatch m;
  if (std::regex_match(spec, m, inl)) {
    const auto p = static_cast<std::uint32_t>(std::stoul(m[1].str()));
    const auto e = m[2].matched ? static_cast<std::uint32_t>(std::stoul(m[2].str())) : 1u;
    const auto n = static_cast<std::uint32_t>(std::stoul(m[3].str()));
    try {
      return Field::make(p, e, n);
    } catch (const DomainError& ex) {
      throw SceneInvalid("bad field spec '" + spec + "': " + ex.what());
    }
  }
  std::ifstream in(spec);
  if (!in) throw SceneInvalid("cannot open field spec '" + spec + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& ex) {
    throw SceneInvalid("field spec '" + spec + "': " + ex.what());
  }
  return field_from_json(j);
}

json elem_to_json(const Field& F, Elem a) { return F.coeffs(a); }

Elem elem_from_json(const Field& F, const json& j, const Bindings& b) {
  if (j.is_string()) return parse_elem(F, j.get<std::string>(), b);
  if (j.is_number_integer()) return F.from_int(j.get<std::int64_t>());
  if (j.is_array()) {
    std::vector<std::uint32_t> c;
    for (const auto& x : j) {
      if (!x.is_number_unsigned() || x.get<std::uint64_t>() >= F.p()) throw SceneInvalid("bad coefficient in element array");
      c.push_back(x.get<std::uint32_t>());
    }
    if (c.size() > F.degree()) throw SceneInvalid("element array too long");
    return F.from_coeffs(c);
  }
  throw SceneInvalid("element must be a string, integer or coefficient array");
}

json vec_to_json(const Field& F, const Vec& v) {
  json a = json::array();
  for (Elem x : v) a.push_back(elem_to_json(F, x));
  return a;
}

Vec vec_from_json(const Field& F, const json& j, const Bindings& b) {
  if (!j.is_array()) throw SceneInvalid("vector must be an array");
  Vec v;
  for (const auto& x : j) v.push_back(elem_from_json(F, x, b));
  return v;
}

json matrix_to_json(const Field& F, const Matrix& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(vec_to_json(F, m.row(i)));
  return a;
}

Matrix matrix_from_json(const Field& F, const json& j, const Bindings& b) {
  if (!j.is_array() || j.empty()) throw SceneInvalid("matrix must be a nonempty array of rows");
  std::vector<Vec> rows;
  for (const auto& r : j) rows.push_back(vec_from_json(F, r, b));
  for (const auto& r : rows)
    if (r.size() != rows.front().size()) throw SceneInvalid("ragged matrix");
  return Matrix::from_rows(rows, rows.front().size());
}

json linset_report(const LinearSet& L) {
  json spec = json::object();
  for (auto [w, c] : L.weight_spectrum()) spec[std::to_string(w)] = c;
  return json{{"r", L.r()},
              {"rank", L.rank()},
              {"size", L.size()},
              {"max_weight", L.max_weight()},
              {"weight_spectrum", spec},
              {"scattered", is_scattered(L)},
              {"maximum_scattered", is_maximum_scattered(L)}};
}

json condition_report_to_json(const Field& F, const ConditionReport& r) {
  json items = json::array();
  for (const auto& it : r.items) {
    json vals = json::object();
    for (const auto& [k, v] : it.values) vals[k] = v;
    items.push_back(json{{"id", it.id}, {"anchor", it.anchor}, {"verdict", to_string(it.verdict)}, {"values", vals}});
  }
  json out{{"characterization", to_string(r.which)}};
  out["s"] = r.s ? json(*r.s) : json(nullptr);
  out["v_scale"] = F.to_string(r.v_scale);
  out["overall"] = to_string(r.overall);
  out["items"] = items;
  return out;
}

}  // namespace fqlin
