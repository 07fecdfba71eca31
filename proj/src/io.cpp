#include "mvsp/io.hpp"

#include <cctype>

namespace mvsp {

namespace {

class Cursor {
 public:
  Cursor(const std::string& s, const char* what) : s_(s), what_(what) {}

  void skip_ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool done() {
    skip_ws();
    return i_ >= s_.size();
  }
  char peek() {
    skip_ws();
    return i_ < s_.size() ? s_[i_] : '\0';
  }
  bool eat(char c) {
    if (peek() != c) return false;
    ++i_;
    return true;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  std::uint64_t number() {
    skip_ws();
    const std::size_t start = i_;
    unsigned __int128 v = 0;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      v = v * 10 + static_cast<unsigned>(s_[i_] - '0');
      if (v >= Poly::kMaxExponent) fail("number too large");
      ++i_;
    }
    if (i_ == start) fail("expected a number");
    return static_cast<std::uint64_t>(v);
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError(std::string(what_) + ": " + msg + " at position " + std::to_string(i_) + " in \"" + s_ + "\"");
  }

 private:
  const std::string& s_;
  const char* what_;
  std::size_t i_ = 0;
};

Elem digits_elem(const Field& F, const std::vector<std::uint64_t>& d, const Cursor& cur) {
  if (d.size() > F.degree()) cur.fail("more digits than the field degree");
  std::vector<std::uint64_t> full(F.degree(), 0);
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] >= F.p()) cur.fail("digit not below p");
    full[i] = d[i];
  }
  return F.from_digits(full);
}

std::vector<std::uint64_t> digit_list(Cursor& cur, char close) {
  std::vector<std::uint64_t> d{cur.number()};
  while (cur.eat(',')) d.push_back(cur.number());
  if (close) cur.expect(close);
  return d;
}

// factor := integer | g[^e] | y[^e] | (digits) | [digits]
Elem factor(const Field& F, Cursor& cur) {
  const char c = cur.peek();
  if (c == '(' || c == '[') {
    cur.eat(c);
    return digits_elem(F, digit_list(cur, c == '(' ? ')' : ']'), cur);
  }
  if (c == 'g' || c == 'y') {
    cur.eat(c);
    const std::uint64_t e = cur.eat('^') ? cur.number() : 1;
    return F.pow(F.gen(), e);
  }
  const std::uint64_t v = cur.number();
  if (v >= F.p()) cur.fail("integer coefficient not below p");
  return Elem{v};
}

// sum of [sign] factor* [var[^e]] terms
std::vector<Poly::Term> parse_terms(const Field& F, const std::string& text, char var, const char* what) {
  Cursor cur(text, what);
  std::vector<Poly::Term> out;
  bool first = true;
  while (!cur.done()) {
    bool negative = false;
    if (cur.eat('-')) negative = true;
    else if (!cur.eat('+') && !first) cur.fail("expected '+' or '-'");
    first = false;
    Elem c = F.one();
    bool any = false;
    while (cur.peek() != var && cur.peek() != '\0' && cur.peek() != '+' && cur.peek() != '-') {
      c = F.mul(c, factor(F, cur));
      any = true;
      if (!cur.eat('*')) break;
    }
    std::uint64_t e = 0;
    if (cur.eat(var)) e = cur.eat('^') ? cur.number() : 1;
    else if (!any) cur.fail("empty term");
    out.emplace_back(e, negative ? F.neg(c) : c);
  }
  if (first) cur.fail("empty input");
  return out;
}

std::string coeff_text(const Field& F, Elem c) {
  if (F.in_prime_field(c)) return std::to_string(c.v);
  return "(" + format_elem(F, c) + ")";
}

std::string format_terms(const Field& F, const std::vector<Poly::Term>& terms, const std::string& var) {
  if (terms.empty()) return "0";
  std::string out;
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    const auto [e, c] = *it;
    if (!out.empty()) out += " + ";
    if (e == 0) {
      out += coeff_text(F, c);
      continue;
    }
    if (c != F.one()) out += coeff_text(F, c) + "*";
    out += var;
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

std::string kind_name(FormKind k) {
  switch (k) {
    case FormKind::kAdditivePower: return "additive_power";
    case FormKind::kSqrtPlusOne: return "sqrt_plus_one";
    default: return "none";
  }
}

Json elems_json(const Field& F, const std::vector<Elem>& xs) {
  Json a = Json::array();
  for (Elem x : xs) a.push_back(elem_json(F, x));
  return a;
}

Json polys_json(const Field& F, const std::vector<Poly>& fs) {
  Json a = Json::array();
  for (const auto& f : fs) a.push_back(poly_json(F, f));
  return a;
}

std::string mask_bits(std::uint64_t mask, unsigned n) {
  std::string bits;
  for (unsigned i = 0; i < n; ++i) bits += (mask >> i & 1) ? '1' : '0';
  return bits;
}

}  // namespace

Elem parse_elem(const Field& F, const std::string& text) {
  Cursor cur(text, "element");
  Elem a;
  if (text.find(',') != std::string::npos && cur.peek() != '(' && cur.peek() != '[') {
    a = digits_elem(F, digit_list(cur, '\0'), cur);
  } else {
    const bool negative = cur.eat('-');
    a = factor(F, cur);
    while (cur.eat('*')) a = F.mul(a, factor(F, cur));
    if (negative) a = F.neg(a);
  }
  if (!cur.done()) cur.fail("trailing input");
  return a;
}

std::string format_elem(const Field& F, Elem a) {
  std::string out;
  for (auto d : F.digits(a)) {
    if (!out.empty()) out += ',';
    out += std::to_string(d);
  }
  return out;
}

Poly parse_poly(const Field& F, const std::string& text) { return Poly(F, parse_terms(F, text, 'x', "polynomial")); }

std::string format_poly(const Field& F, const Poly& f) { return format_terms(F, f.terms(), "x"); }

AdditivePoly parse_tau(const Field& F, const std::string& text, unsigned level) {
  std::vector<Elem> c;
  for (const auto& [e, v] : parse_terms(F, text, 'T', "tau polynomial")) {
    if (e > 64) throw InputError("tau polynomial: tau degree above 64");
    if (c.size() <= e) c.resize(e + 1, Elem{0});
    c[e] = F.add(c[e], v);
  }
  return AdditivePoly(level, std::move(c));
}

std::string format_tau(const Field& F, const AdditivePoly& A) {
  std::vector<Poly::Term> terms;
  for (std::size_t i = 0; i < A.coeffs().size(); ++i)
    if (!A.coeffs()[i].is_zero()) terms.emplace_back(i, A.coeffs()[i]);
  return format_terms(F, terms, "T");
}

Json elem_json(const Field& F, Elem a) { return F.digits(a); }

Elem elem_from_json(const Field& F, const Json& j) {
  if (!j.is_array()) throw InputError("element JSON must be a digit array");
  std::vector<std::uint64_t> d;
  for (const auto& x : j) {
    if (!x.is_number_unsigned()) throw InputError("element JSON digits must be non-negative integers");
    d.push_back(x.get<std::uint64_t>());
  }
  std::string dummy;
  Cursor cur(dummy, "element JSON");
  return digits_elem(F, d, cur);
}

Json poly_json(const Field& F, const Poly& f) {
  Json terms = Json::array();
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it)
    terms.push_back(Json{{"e", it->first}, {"c", elem_json(F, it->second)}});
  return Json{{"terms", terms}};
}

Poly poly_from_json(const Field& F, const Json& j) {
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
    throw InputError("polynomial JSON must be {\"terms\": [...]}");
  std::vector<Poly::Term> terms;
  for (const auto& t : j["terms"]) {
    if (!t.is_object() || !t.contains("e") || !t["e"].is_number_unsigned() || !t.contains("c"))
      throw InputError("polynomial JSON term must be {\"e\": int, \"c\": [digits]}");
    const auto e = t["e"].get<std::uint64_t>();
    if (e >= Poly::kMaxExponent) throw InputError("polynomial JSON exponent too large");
    terms.emplace_back(e, elem_from_json(F, t["c"]));
  }
  return Poly(F, std::move(terms));
}

Json additive_json(const Field& F, const AdditivePoly& A) {
  return Json{{"level", A.level()}, {"tau", elems_json(F, A.coeffs())}, {"text", format_tau(F, A)},
              {"poly", poly_json(F, to_poly(F, A))}};
}

Json report_json(const Field& F, const MvspReport& r) {
  Json j;
  j["is_mvsp"] = r.is_mvsp;
  j["member"] = r.member;
  j["deg"] = r.deg;
  j["bound"] = r.bound;
  j["values"] = r.value_set.size();
  j["value_set"] = elems_json(F, r.value_set);
  j["theta"] = r.theta ? elem_json(F, *r.theta) : Json(nullptr);
  j["theta_candidates"] = elems_json(F, r.theta_candidates);
  j["reason"] = r.reason;
  return j;
}

Json witness_json(const Field& F, const ReductionWitness& w) {
  return Json{{"v", w.v}, {"level", w.level}, {"gamma", elem_json(F, w.gamma)}, {"A", additive_json(F, w.A)}};
}

Json classification_json(const Field& F, const Classification& c) {
  Json j{{"kind", kind_name(c.kind)}};
  if (c.kind == FormKind::kNone) return j;
  j["alpha"] = elem_json(F, c.alpha);
  j["beta"] = elem_json(F, c.beta);
  j["gamma"] = elem_json(F, c.gamma);
  j["v"] = c.v;
  j["level"] = c.level;
  j["L"] = poly_json(F, c.L);
  return j;
}

Json profile_json(const Field& F, const MillsProfile& m) {
  Json values = Json::array();
  for (const auto& v : m.values) {
    Json mult = Json::array();
    for (const auto& [root, k] : v.multiplicities) mult.push_back(Json{{"root", elem_json(F, root)}, {"m", k}});
    values.push_back(Json{{"gamma", elem_json(F, v.gamma)},
                          {"distinct_roots", v.distinct_roots},
                          {"simple_roots", v.simple_roots},
                          {"field_mults_prime_to_p", v.field_mults_prime_to_p},
                          {"rest_is_pth_power", v.rest_is_pth_power},
                          {"multiplicities", mult}});
  }
  return Json{{"part_i", m.part_i}, {"part_ii", m.part_ii}, {"with_simple_root", m.with_simple_root},
              {"values", values}};
}

Json orbit_table_json(const OrbitTable& t) {
  Json orbits = Json::array();
  for (const auto& o : t.orbits)
    orbits.push_back(Json{{"bits", mask_bits(o.mask, t.n)}, {"exponent", o.exponent}, {"size", o.size}});
  Json counts = Json::array();
  for (auto [d, c] : t.counts) counts.push_back(Json{{"d", d}, {"count", c}});
  return Json{{"q", t.q}, {"n", t.n}, {"orbits", orbits}, {"counts", counts}};
}

Json basis_json(const Field& F, const WBasis& B) {
  Json elems = Json::array();
  for (std::size_t i = 0; i < B.dim; ++i) {
    const auto& o = B.table.orbits[B.orbit_of[i]];
    elems.push_back(Json{{"orbit", mask_bits(o.mask, B.table.n)},
                         {"orbit_size", o.size},
                         {"coeff", elem_json(F, B.coeff_of[i])},
                         {"poly", poly_json(F, B.elems[i])}});
  }
  return Json{{"d", B.d},     {"alpha", elem_json(F, B.alpha)}, {"beta", elem_json(F, B.beta)},
              {"dim", B.dim}, {"elements", elems}};
}

Json lift_json(const Field& F, const LiftResult& r) {
  return Json{{"d", r.witness.d},
              {"t", r.witness.t},
              {"alpha", elem_json(F, r.witness.alpha)},
              {"gamma", elem_json(F, r.witness.gamma)},
              {"M", additive_json(F, r.witness.M)},
              {"dim_w_binomial", r.basis.dim},
              {"dim_lower", r.dim_lower},
              {"bound", r.bound},
              {"generators", polys_json(F, r.generators)}};
}

Json power_image_json(const PowerImageReport& r) {
  return Json{{"scanned", r.scanned},
              {"distinct", r.distinct},
              {"verified", r.verified},
              {"exhaustive", r.exhaustive},
              {"bound", r.bound}};
}

Json census_json(const Field& F, const CensusReport& r) {
  Json hist = Json::array();
  for (auto [d, c] : r.degree_histogram) hist.push_back(Json{{"deg", d}, {"count", c}});
  Json agreement = Json::object();
  for (const auto& [k, c] : r.agreement) agreement[k] = c;
  return Json{{"field", r.field},
              {"mode", r.mode},
              {"value_set", elems_json(F, r.value_set)},
              {"total", r.total},
              {"members", r.members},
              {"count", r.count},
              {"verified", r.verified},
              {"degree_histogram", hist},
              {"agreement", agreement},
              {"discrepancies", r.discrepancies},
              {"witnesses", polys_json(F, r.witnesses)},
              {"witnesses_truncated", r.witnesses_truncated},
              {"reason", r.reason}};
}

Json linear_dim_json(const Field& F, const LinearDim& d) {
  return Json{{"dim", d.dim}, {"D", d.D}, {"columns", d.columns}, {"rank", d.rank}, {"theta", elem_json(F, d.theta)}};
}

Json form_check_json(const Field& F, const FormCheckReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back(Json{{"degree", row.degree},
                        {"normalized", row.normalized},
                        {"scanned", row.scanned},
                        {"mvsp", row.mvsp},
                        {"of_form", row.of_form},
                        {"discrepancies", row.discrepancies}});
  return Json{{"field", r.field}, {"ok", r.ok()}, {"rows", rows}, {"discrepancies", polys_json(F, r.discrepancies)}};
}

}  // namespace mvsp
