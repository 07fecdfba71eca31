#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "mvsp/io.hpp"

namespace {

using namespace mvsp;

enum Exit : int { kTrue = 0, kFalse = 1, kInput = 2, kGuard = 3, kInternal = 4 };

struct Common {
  std::string field;
  std::string format = "json";
  unsigned jobs = 1;
  std::uint64_t guard = std::uint64_t{1} << 20;

  OracleOptions oracle() const {
    OracleOptions o;
    o.guard = guard;
    o.jobs = jobs;
    return o;
  }
};

void add_common(CLI::App* sub, Common& c, bool needs_field) {
  auto* f = sub->add_option("--field", c.field, "Field spec p^N:k, e.g. 2^6:1");
  if (needs_field) f->required();
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "text", "csv"}));
  sub->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::Range(1u, 256u));
  sub->add_option("--guard-max", c.guard, "Largest exhaustive scan (at most 2^24)")
      ->check(CLI::Range(std::uint64_t{1}, kOracleHardGuard));
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Text grammar, a JSON object, or @file holding either.
Poly read_poly(const Field& F, const std::string& arg) {
  std::string s = arg.size() > 1 && arg[0] == '@' ? slurp(arg.substr(1)) : arg;
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && s[first] == '{') {
    Json j;
    try {
      j = Json::parse(s);
    } catch (const Json::parse_error& e) {
      throw InputError(std::string("malformed polynomial JSON: ") + e.what());
    }
    return poly_from_json(F, j);
  }
  return parse_poly(F, s);
}

AdditivePoly read_additive(const Field& F, const std::string& arg) {
  const Poly A = read_poly(F, arg);
  auto add = detect_additive(F, A);
  if (!add) throw InputError("polynomial is not additive");
  return at_base(F, *add);
}

bool is_poly_json(const Json& j) { return j.is_object() && j.size() == 1 && j.contains("terms"); }

bool is_digit_array(const Field* F, const Json& j) {
  if (!F || !j.is_array() || j.size() != F->degree()) return false;
  for (const auto& x : j)
    if (!x.is_number_unsigned()) return false;
  return true;
}

void render_text(std::ostream& os, const Field* F, const std::string& path, const Json& j) {
  if (F && is_poly_json(j)) {
    os << path << ": " << format_poly(*F, poly_from_json(*F, j)) << "\n";
  } else if (is_digit_array(F, j)) {
    os << path << ": " << format_elem(*F, elem_from_json(*F, j)) << "\n";
  } else if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      render_text(os, F, path.empty() ? it.key() : path + "." + it.key(), it.value());
  } else if (j.is_array()) {
    if (j.empty()) os << path << ": []\n";
    for (std::size_t i = 0; i < j.size(); ++i) render_text(os, F, path + "[" + std::to_string(i) + "]", j[i]);
  } else if (j.is_string()) {
    os << path << ": " << j.get<std::string>() << "\n";
  } else {
    os << path << ": " << j.dump() << "\n";
  }
}

void emit(const Common& c, const Field* F, const Json& j) {
  if (c.format == "csv") throw InputError("csv output is only available for orbits, enumerate and oracle census");
  if (c.format == "text") render_text(std::cout, F, "", j);
  else std::cout << j.dump(2) << "\n";
}

void emit_polys_csv(const Field& F, const std::vector<Poly>& fs) {
  std::cout << "deg,poly\n";
  for (const auto& f : fs) std::cout << (f.is_zero() ? 0 : f.degree()) << ",\"" << format_poly(F, f) << "\"\n";
}

std::pair<std::uint64_t, unsigned> prime_power(std::uint64_t q) {
  if (q < 2) throw InputError("q must be a prime power");
  const auto pf = prime_factors(q);
  if (pf.size() != 1) throw InputError("q must be a prime power");
  unsigned k = 0;
  for (std::uint64_t r = q; r > 1; r /= pf[0]) ++k;
  return {pf[0], k};
}

FieldPtr field_over(std::uint64_t q, unsigned n) {
  auto [p, k] = prime_power(q);
  return Field::make(p, k, n);
}

using Action = std::function<int()>;

struct Cli {
  CLI::App app{"Minimal value set polynomials over finite fields", "mvsp"};
  Action action;

  template <class Opts>
  std::shared_ptr<Opts> verb(CLI::App* parent, const std::string& name, const std::string& help, bool needs_field,
                             std::function<int(Opts&)> run, std::function<void(CLI::App*, Opts&)> extra) {
    auto o = std::make_shared<Opts>();
    auto* sub = parent->add_subcommand(name, help);
    add_common(sub, o->common, needs_field);
    extra(sub, *o);
    sub->callback([this, o, run] { action = [o, run] { return run(*o); }; });
    return o;
  }
};

struct VerifyOpts {
  Common common;
  std::string F, T;
};
int run_verify(VerifyOpts& o) {
  auto F = Field::parse(o.common.field);
  const Poly f = read_poly(*F, o.F);
  Json j;
  bool ok;
  if (o.T.empty()) {
    const auto r = is_minimal(*F, f);
    j = report_json(*F, r);
    ok = r.is_mvsp;
  } else {
    const auto r = mills_check(*F, f, read_poly(*F, o.T));
    j = report_json(*F, r);
    ok = r.member;
  }
  emit(o.common, F.get(), j);
  return ok ? kTrue : kFalse;
}

struct ClassifyOpts {
  Common common;
  std::string F;
  bool any_degree = false;
};
int run_classify(ClassifyOpts& o) {
  auto F = Field::parse(o.common.field);
  const Poly f = read_poly(*F, o.F);
  const auto c = o.any_degree ? extract_normal_form(*F, f) : classify_low_degree(*F, f);
  Json j{{"classification", classification_json(*F, c)}, {"is_mvsp", is_minimal(*F, f).is_mvsp}};
  emit(o.common, F.get(), j);
  return c.kind != FormKind::kNone ? kTrue : kFalse;
}

struct ReduceOpts {
  Common common;
  std::string T;
};
int run_reduce(ReduceOpts& o) {
  auto F = Field::parse(o.common.field);
  const auto ws = find_additive_reduction(*F, read_poly(*F, o.T));
  Json arr = Json::array();
  for (const auto& w : ws) arr.push_back(witness_json(*F, w));
  emit(o.common, F.get(), Json{{"witnesses", arr}});
  return ws.empty() ? kFalse : kTrue;
}

struct ProfileOpts {
  Common common;
  std::string F, T;
};
int run_profile(ProfileOpts& o) {
  auto F = Field::parse(o.common.field);
  const auto m = mills_profile(*F, read_poly(*F, o.F), read_poly(*F, o.T));
  emit(o.common, F.get(), profile_json(*F, m));
  return m.part_i && m.part_ii ? kTrue : kFalse;
}

struct BinomialOpts {
  Common common;
  std::string binomial;
  unsigned d = 1;
  std::string alpha = "1";
  std::uint64_t limit = 0;

  // "--binomial d=3,alpha=1" overrides --d / --alpha; alpha takes the rest, so its digits may hold commas.
  std::pair<unsigned, Elem> resolve(const Field& F) const {
    unsigned dd = d;
    std::string a = alpha;
    if (!binomial.empty()) {
      std::string head = binomial;
      const auto at = binomial.find("alpha=");
      if (at != std::string::npos) {
        a = binomial.substr(at + 6);
        head = binomial.substr(0, at);
      }
      while (!head.empty() && (head.back() == ',' || head.back() == ';')) head.pop_back();
      if (!head.empty()) {
        if (head.rfind("d=", 0) != 0) throw InputError("--binomial expects d=<int>,alpha=<elem>");
        try {
          std::size_t used = 0;
          dd = static_cast<unsigned>(std::stoul(head.substr(2), &used));
          if (used != head.size() - 2) throw InputError("");
        } catch (const std::exception&) {
          throw InputError("--binomial: d must be an integer");
        }
      }
    }
    if (dd == 0) throw InputError("d must be positive");
    return {dd, parse_elem(F, a)};
  }
};
int run_basis(BinomialOpts& o) {
  auto F = Field::parse(o.common.field);
  auto [d, alpha] = o.resolve(*F);
  emit(o.common, F.get(), basis_json(*F, build_basis(*F, d, alpha)));
  return kTrue;
}
int run_enumerate(BinomialOpts& o) {
  auto F = Field::parse(o.common.field);
  auto [d, alpha] = o.resolve(*F);
  const auto W = enumerate_w(*F, build_basis(*F, d, alpha), o.limit ? std::min(o.limit, o.common.guard) : o.common.guard);
  if (o.common.format == "csv") {
    emit_polys_csv(*F, W);
    return kTrue;
  }
  Json arr = Json::array();
  for (const auto& f : W) arr.push_back(poly_json(*F, f));
  emit(o.common, F.get(), Json{{"count", W.size()}, {"members", arr}});
  return kTrue;
}

struct OrbitOpts {
  Common common;
  std::uint64_t q = 2;
  unsigned n = 3;
};
int run_orbits(OrbitOpts& o) {
  const auto t = orbit_table(o.q, o.n);
  if (o.common.format == "csv") std::cout << orbit_table_csv(t);
  else emit(o.common, nullptr, orbit_table_json(t));
  return kTrue;
}

struct LiftOpts {
  Common common;
  std::string A;
  bool oracle = false;
};
int run_lift(LiftOpts& o) {
  auto F = Field::parse(o.common.field);
  const auto A = read_additive(*F, o.A);
  const auto r = lift_pipeline(*F, A);
  Json j = lift_json(*F, r);
  if (o.oracle) {
    const auto lin = linear_dim_w(*F, A);
    j["oracle_dim"] = lin.dim;
    j["attained"] = lin.dim == r.dim_lower;
  }
  emit(o.common, F.get(), j);
  return kTrue;
}

struct PowerOpts {
  Common common;
  std::string T;
  std::uint64_t v = 1;
  std::uint64_t samples = 0;
  std::uint64_t seed = 1;
};
int run_power(PowerOpts& o) {
  auto F = Field::parse(o.common.field);
  const Poly T = read_poly(*F, o.T);
  if (o.v == 0) throw InputError("--v must be positive");
  // A = T(x^v) / x^(v-1)
  std::vector<Poly::Term> terms;
  for (const auto& [e, c] : T.terms()) {
    if (e == 0) throw InputError("T(0) must be 0 for a power lift");
    terms.emplace_back(e * o.v - (o.v - 1), c);
  }
  auto A = detect_additive(*F, Poly(*F, terms));
  if (!A) throw InputError("T(x^v)/x^(v-1) is not additive");
  const auto lift = lift_pipeline(*F, at_base(*F, *A));
  const auto r = power_image_count(*F, T, o.v, lift.generators, o.common.guard, o.samples, o.seed);
  Json j{{"v", o.v}, {"A", additive_json(*F, at_base(*F, *A))}, {"dim_lower", lift.dim_lower}};
  j["image"] = power_image_json(r);
  emit(o.common, F.get(), j);
  return r.verified == r.distinct ? kTrue : kFalse;
}

struct CensusOpts {
  Common common;
  std::string S, T;
  int max_deg = -1;
};
int run_census(CensusOpts& o) {
  auto F = Field::parse(o.common.field);
  CensusReport r;
  if (!o.S.empty() && !o.T.empty()) throw InputError("give at most one of --S and --T");
  if (!o.T.empty()) {
    const Poly T = read_poly(*F, o.T);
    r = census_target(*F, T, o.max_deg < 0 ? static_cast<int>(T.degree()) : o.max_deg, o.common.oracle());
  } else if (!o.S.empty()) {
    std::vector<Elem> S;
    std::stringstream ss(o.S);
    std::string part;
    while (std::getline(ss, part, ';')) S.push_back(parse_elem(*F, part));
    r = census_fixed_valueset(*F, S, o.max_deg < 0 ? 0 : o.max_deg, o.common.oracle());
  } else {
    r = census_subfield_valued(*F, o.common.oracle());
  }
  if (o.common.format == "csv") emit_polys_csv(*F, r.witnesses);
  else emit(o.common, F.get(), census_json(*F, r));
  return r.reason.empty() && r.discrepancies == 0 ? kTrue : kFalse;
}

struct DimOpts {
  Common common;
  std::string A;
};
int run_dim(DimOpts& o) {
  auto F = Field::parse(o.common.field);
  emit(o.common, F.get(), linear_dim_json(*F, linear_dim_w(*F, read_additive(*F, o.A))));
  return kTrue;
}

struct TheoremOpts {
  Common common;
};
int run_theorems(TheoremOpts& o) {
  auto F = Field::parse(o.common.field);
  const auto r = verify_low_degree_forms(*F, o.common.oracle());
  emit(o.common, F.get(), form_check_json(*F, r));
  return r.ok() ? kTrue : kFalse;
}

struct ExampleOpts {
  Common common;
  int section = 0;
  std::uint64_t q = 0;
  std::uint64_t samples = 1000;
};

Json example_1(std::uint64_t q) {
  const auto t = orbit_table(q, 3);
  auto F = field_over(q, 3);
  const Json table = orbit_table_json(t);
  Json orbits = Json::array();
  for (const auto& o : table["orbits"]) {
    Json row = o;
    row["component_dim"] = o["size"];
    orbits.push_back(row);
  }
  return Json{{"section", 1}, {"q", q}, {"n", 3}, {"orbits", orbits},
              {"dim", build_basis(*F, 1, F->one()).dim}};
}

Json example_2(std::uint64_t q) {
  auto F = field_over(q, 6);
  const AdditivePoly A(F->k(), {F->one(), F->one(), F->one()});
  const auto lift = lift_pipeline(*F, A);
  Json j{{"section", 2},
         {"q", q},
         {"dim_w_binomial", build_basis(*F, 3, F->one()).dim},
         {"dim_lower", lift.dim_lower},
         {"bound", lift.bound}};
  try {
    const auto lin = linear_dim_w(*F, A);
    j["oracle_dim"] = lin.dim;
    j["attained"] = lin.dim == lift.dim_lower;
  } catch (const GuardError&) {
    j["oracle_dim"] = nullptr;
    j["attained"] = nullptr;
  }
  return j;
}

Json example_3(std::uint64_t q) {
  auto F = field_over(q, 6);
  const std::uint64_t q3 = q * q * q;
  const Poly G(*F, {{q3 * q + q, F->one()}, {q3 + 1, F->neg(F->one())}});
  const Poly T(*F, {{q * q, F->one()}, {q, F->one()}, {1, F->one()}});
  const auto m = is_minimal(*F, G);
  const auto r = mills_check(*F, G, T);
  bool in_sub = true;
  for (Elem v : m.value_set) in_sub = in_sub && F->in_subfield(v, 3);
  const std::uint64_t bound = (q3 * q3 - 1) / (q3 - 1);
  return Json{{"section", 3},
              {"q", q},
              {"G", poly_json(*F, G)},
              {"is_mvsp", m.is_mvsp},
              {"deg", m.deg},
              {"values", m.value_set.size()},
              {"member", r.member},
              {"theta", r.theta ? elem_json(*F, *r.theta) : Json(nullptr)},
              {"values_in_subfield", in_sub},
              {"normal_form", classification_json(*F, extract_normal_form(*F, G))["kind"]},
              {"deg_bound", bound},
              {"deg_exceeds_bound", static_cast<std::uint64_t>(m.deg) > bound}};
}

Json example_4(std::uint64_t q, std::uint64_t samples, const Common& c) {
  if (q % 2 == 0) throw InputError("section 4 needs odd q");
  auto F = field_over(q, 6);
  const Poly T(*F, {{(q * q + 1) / 2, F->one()}, {(q + 1) / 2, F->one()}, {1, F->one()}});
  std::optional<ReductionWitness> w;
  for (const auto& x : find_additive_reduction(*F, T))
    if (x.v == 2 && x.gamma.is_zero() && !w) w = x;
  if (!w) throw InvariantError("section 4: no (v, gamma) = (2, 0) reduction");
  const auto A = at_base(*F, w->A);
  const auto lift = lift_pipeline(*F, A);
  const auto r = power_image_count(*F, T, 2, lift.generators, c.guard, samples, 1);
  return Json{{"section", 4},
              {"q", q},
              {"T", poly_json(*F, T)},
              {"reduction", witness_json(*F, *w)},
              {"dim_lower", lift.dim_lower},
              {"image", power_image_json(r)}};
}

int run_examples(ExampleOpts& o) {
  const std::uint64_t q = o.q ? o.q : (o.section == 4 ? 3 : 2);
  Json j;
  switch (o.section) {
    case 1: j = example_1(q); break;
    case 2: j = example_2(q); break;
    case 3: j = example_3(q); break;
    default: j = example_4(q, o.samples, o.common); break;
  }
  auto F = field_over(q, o.section == 1 ? 3 : 6);
  emit(o.common, F.get(), j);
  if (o.section == 3) return j["is_mvsp"].get<bool>() && j["member"].get<bool>() ? kTrue : kFalse;
  if (o.section == 4) return j["image"]["verified"] == j["image"]["distinct"] ? kTrue : kFalse;
  return kTrue;
}

struct ConvertOpts {
  Common common;
  std::string F;
  std::string to = "json";
};
int run_convert(ConvertOpts& o) {
  auto F = Field::parse(o.common.field);
  const Poly f = read_poly(*F, o.F);
  if (o.to == "text") {
    std::cout << format_poly(*F, f) << "\n";
  } else if (o.to == "tau") {
    auto A = detect_additive(*F, f);
    if (!A) throw InputError("polynomial is not additive");
    std::cout << format_tau(*F, at_base(*F, *A)) << "\n";
  } else {
    std::cout << poly_json(*F, f).dump() << "\n";
  }
  return kTrue;
}

template <class O>
void opt_poly(CLI::App* s, O& o, std::string O::*member, const char* flag, const char* help, bool required) {
  auto* opt = s->add_option(flag, o.*member, help);
  if (required) opt->required();
}

void register_wspace(Cli& cli, CLI::App* parent) {
  cli.verb<BinomialOpts>(parent, "basis", "Basis of W(x^(q^d) - alpha x)", true, run_basis, [](CLI::App* s, auto& o) {
    s->add_option("--binomial", o.binomial, "d=<int>,alpha=<elem>");
    s->add_option("--d", o.d, "Binomial degree exponent");
    s->add_option("--alpha", o.alpha, "Binomial coefficient");
  });
  cli.verb<OrbitOpts>(parent, "orbits", "Necklace orbit table", false, run_orbits, [](CLI::App* s, auto& o) {
    s->add_option("--q", o.q, "Base size");
    s->add_option("--n", o.n, "Length")->check(CLI::Range(1u, 24u));
  });
  cli.verb<LiftOpts>(parent, "lift", "Lift the binomial basis into W(A)", true, run_lift, [](CLI::App* s, auto& o) {
    opt_poly(s, o, &LiftOpts::A, "--A,--T", "Additive polynomial A", true);
    s->add_flag("--oracle", o.oracle, "Also compute the exact dimension");
  });
  cli.verb<BinomialOpts>(parent, "enumerate", "All members of W(x^(q^d) - alpha x)", true, run_enumerate,
                         [](CLI::App* s, auto& o) {
                           s->add_option("--binomial", o.binomial, "d=<int>,alpha=<elem>");
                           s->add_option("--d", o.d, "Binomial degree exponent");
                           s->add_option("--alpha", o.alpha, "Binomial coefficient");
                           s->add_option("--limit", o.limit, "Largest enumeration");
                         });
}

}  // namespace

int main(int argc, char** argv) {
  Cli cli;
  auto& app = cli.app;
  app.require_subcommand(1);

  cli.verb<VerifyOpts>(&app, "verify", "Minimality, or the Mills identity against T", true, run_verify,
                       [](CLI::App* s, auto& o) {
                         opt_poly(s, o, &VerifyOpts::F, "--F", "Polynomial F", true);
                         opt_poly(s, o, &VerifyOpts::T, "--T", "Value polynomial T", false);
                       });
  cli.verb<ClassifyOpts>(&app, "classify", "Low-degree normal form", true, run_classify, [](CLI::App* s, auto& o) {
    opt_poly(s, o, &ClassifyOpts::F, "--F", "Polynomial F", true);
    s->add_flag("--any-degree", o.any_degree, "Search the normal forms at any degree");
  });
  cli.verb<ReduceOpts>(&app, "reduce", "Additive reductions T(x^v + gamma) = x^(v-1) A", true, run_reduce,
                       [](CLI::App* s, auto& o) { opt_poly(s, o, &ReduceOpts::T, "--T", "Value polynomial T", true); });
  cli.verb<ProfileOpts>(&app, "profile", "Root structure of F - gamma", true, run_profile, [](CLI::App* s, auto& o) {
    opt_poly(s, o, &ProfileOpts::F, "--F", "Polynomial F", true);
    opt_poly(s, o, &ProfileOpts::T, "--T", "Value polynomial T", true);
  });
  register_wspace(cli, &app);
  register_wspace(cli, app.add_subcommand("wspace", "W-space commands")->require_subcommand(1));
  cli.verb<PowerOpts>(&app, "power", "Count F^v over W(T(x^v)/x^(v-1))", true, run_power, [](CLI::App* s, auto& o) {
    opt_poly(s, o, &PowerOpts::T, "--T", "Value polynomial T", true);
    s->add_option("--v", o.v, "Exponent v")->required();
    s->add_option("--samples", o.samples, "Random members instead of all");
    s->add_option("--seed", o.seed, "Sampling seed");
  });

  auto* oracle = app.add_subcommand("oracle", "Brute-force oracles")->require_subcommand(1);
  cli.verb<CensusOpts>(oracle, "census", "Census of W by function or polynomial scan", true, run_census,
                       [](CLI::App* s, auto& o) {
                         s->add_option("--S", o.S, "Value set, elements separated by ';'");
                         opt_poly(s, o, &CensusOpts::T, "--T", "Value polynomial T", false);
                         s->add_option("--max-deg", o.max_deg, "Polynomial scan degree");
                       });
  cli.verb<DimOpts>(oracle, "dim", "Exact dimension of W(A)", true, run_dim,
                    [](CLI::App* s, auto& o) { opt_poly(s, o, &DimOpts::A, "--A,--T", "Additive polynomial A", true); });
  cli.verb<TheoremOpts>(oracle, "theorems", "Low-degree characterizations against a scan", true, run_theorems,
                        [](CLI::App*, auto&) {});

  cli.verb<ExampleOpts>(&app, "examples", "Reproduce the worked examples", false, run_examples,
                        [](CLI::App* s, auto& o) {
                          s->add_option("--section", o.section, "1-4")->required()->check(CLI::Range(1, 4));
                          s->add_option("--q", o.q, "Base field size");
                          s->add_option("--samples", o.samples, "Members sampled in section 4");
                        });
  cli.verb<ConvertOpts>(&app, "convert", "Convert a polynomial between forms", true, run_convert,
                        [](CLI::App* s, auto& o) {
                          opt_poly(s, o, &ConvertOpts::F, "--F", "Polynomial F", true);
                          s->add_option("--to", o.to, "Target form")->check(CLI::IsMember({"json", "text", "tau"}));
                        });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kTrue : kInput;
  }
  try {
    return cli.action();
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const GuardError& e) {
    std::cerr << "guard: " << e.what() << "\n";
    return kGuard;
  } catch (const InvariantError& e) {
    std::cerr << "invariant violated: " << e.what() << "\n";
    return kInternal;
  }
}
