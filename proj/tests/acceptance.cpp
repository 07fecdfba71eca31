// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "mvsp/criteria.hpp"
#include "mvsp/oracle.hpp"

namespace mvsp {
namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

class Check {
 public:
  void expect(bool cond, const std::string& what) {
    if (!cond && out_.ok) out_.detail = what;
    out_.ok = out_.ok && cond;
  }
  void note(const std::string& s) {
    if (out_.ok) out_.detail = s;
  }
  Outcome result() const { return out_; }

 private:
  Outcome out_;
};

std::string str(std::uint64_t v) { return std::to_string(v); }

std::vector<Elem> graph(const Field& F, const Poly& f) {
  std::vector<Elem> g;
  for (std::uint64_t v = 0; v < F.order(); ++v) g.push_back(eval(F, f, Elem{v}));
  return g;
}

// dim W(x^Q - x) = 2^n by the basis, by F_q-rank, by the linear oracle, and every element is a member.
Outcome binomial_dimension() {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  struct Case {
    std::uint64_t p;
    unsigned k, n;
  };
  for (auto [p, k, n] : {Case{2, 1, 2}, Case{2, 1, 3}, Case{2, 1, 4}, Case{3, 1, 2}, Case{3, 1, 3}, Case{2, 2, 2},
                         Case{5, 1, 2}}) {
    auto F = Field::make(p, k, n);
    const std::string tag = F->spec();
    const auto B = build_basis(*F, 1, F->one());
    const std::size_t want = std::size_t{1} << n;
    c.expect(B.dim == want, tag + ": basis dimension " + str(B.dim));
    c.expect(fq_rank(*F, B.elems) == want, tag + ": F_q-rank of the basis");
    const Poly T = binomial_poly(*F, 1, F->one());
    for (const auto& f : B.elems) c.expect(mills_check(*F, f, T).member, tag + ": basis element fails mills_check");
    const auto L = linear_dim_w(*F, AdditivePoly::binomial(*F, F->k(), 1, F->one()));
    c.expect(L.dim == want, tag + ": linear oracle dimension " + str(L.dim));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.expect(secs < 60, "took longer than 60 s");
  c.note("7 fields, dimensions 2^n by three methods");
  return c.result();
}

// Exhaustive census of subfield-valued functions equals the enumerated span.
Outcome census_equals_enumeration() {
  Check c;
  struct Case {
    const char* spec;
    std::uint64_t members;
  };
  for (auto [spec, members] : {Case{"2^2:1", 16}, Case{"2^3:1", 256}, Case{"3^2:1", 81}}) {
    auto F = Field::parse(spec);
    const auto r = census_subfield_valued(*F);
    c.expect(r.members == members, std::string(spec) + ": census members " + str(r.members));
    c.expect(r.verified == r.members, std::string(spec) + ": census members not re-verified");
    std::set<std::vector<Elem>> a, b;
    for (const auto& f : r.witnesses) a.insert(graph(*F, f));
    for (const auto& f : enumerate_w(*F, build_basis(*F, 1, F->one()))) b.insert(graph(*F, f));
    c.expect(a == b, std::string(spec) + ": census and enumeration differ as functions");
  }
  c.note("16, 256 and 81 members, identical function sets");
  return c.result();
}

// F_64: dim W(x^8 - x) = 12, and lifting x^4 + x^2 + x yields an 11-dimensional subspace of members.
Outcome sixty_four_lift() {
  Check c;
  auto F = Field::make(2, 1, 6);
  c.expect(build_basis(*F, 3, F->one()).dim == 12, "dim W(x^8 - x) != 12");
  const AdditivePoly A(1, {F->one(), F->one(), F->one()});
  const auto r = lift_pipeline(*F, A);
  c.expect(r.dim_lower == 11, "lift rank " + str(r.dim_lower));
  const Poly T = to_poly(*F, A);
  const auto& G = r.generators;
  std::uint64_t passed = 0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << G.size()); ++mask) {
    Poly f;
    for (std::size_t i = 0; i < G.size(); ++i)
      if (mask >> i & 1) f = add(*F, f, G[i]);
    if (mills_check(*F, f, T).member) ++passed;
  }
  c.expect(passed == 2047, "members passing mills_check: " + str(passed));
  const auto L = linear_dim_w(*F, A);
  c.expect(L.dim == 11, "linear oracle dimension " + str(L.dim));
  c.note("rank 11, 2047/2047 members verified, linear dimension 11");
  return c.result();
}

// G = x^18 + x^9 over F_64 is minimal with four values in F_8 and has no low-degree normal form.
Outcome example_g() {
  Check c;
  auto F = Field::make(2, 1, 6);
  const Poly G(*F, {{18, F->one()}, {9, F->one()}});
  const auto r = is_minimal(*F, G);
  c.expect(r.is_mvsp, "not minimal: " + r.reason);
  Poly T(*F, {{0, F->one()}});
  for (Elem y : r.value_set) T = mul(*F, T, Poly(*F, {{1, F->one()}, {0, F->neg(y)}}));
  const auto m = mills_check(*F, G, T);
  c.expect(m.is_mvsp && m.theta && *m.theta == F->one(), "theta != 1 against prod (x - v)");
  c.expect(r.value_set.size() == 4 && r.value_set.size() == 63 / 18 + 1, "|V| = " + str(r.value_set.size()));
  for (Elem y : r.value_set) c.expect(F->in_subfield(y, 3), "value outside F_8");
  c.expect(extract_normal_form(*F, G).kind == FormKind::kNone, "unexpected normal form");
  c.note("is_mvsp, theta = 1, |V| = 4 inside F_8, normal form none");
  return c.result();
}

// q = 3: x^5 + x^2 + x reduces to A = x^9 + x^3 + x with v = 2, and squares of W(A) are members.
Outcome power_lift_three() {
  Check c;
  auto F = Field::make(3, 1, 6);
  const Poly T(*F, {{5, F->one()}, {2, F->one()}, {1, F->one()}});
  const Poly want(*F, {{9, F->one()}, {3, F->one()}, {1, F->one()}});
  const ReductionWitness* hit = nullptr;
  const auto ws = find_additive_reduction(*F, T);
  for (const auto& w : ws)
    if (w.v == 2 && w.gamma.is_zero() && to_poly(*F, w.A) == want) hit = &w;
  c.expect(hit != nullptr, "no reduction (v = 2, gamma = 0, A = x^9 + x^3 + x)");
  if (!hit) return c.result();
  const auto lift = lift_pipeline(*F, hit->A);
  const auto rep = power_image_count(*F, T, 2, lift.generators, 0, 1000, 7);
  c.expect(rep.verified == rep.distinct, "verified " + str(rep.verified) + " of " + str(rep.distinct));
  c.expect(rep.distinct >= 100, "distinct " + str(rep.distinct));
  c.note(str(rep.distinct) + " distinct squares from " + str(rep.scanned) + " samples, all verified");
  return c.result();
}

// F_9, degree 4: the minimal polynomials are exactly alpha (x + beta)^4 + gamma.
Outcome nine_degree_four() {
  Check c;
  auto F = Field::make(3, 1, 2);
  const auto r = verify_low_degree_forms(*F);
  const FormCheckRow* row = nullptr;
  for (const auto& x : r.rows)
    if (x.degree == 4) row = &x;
  c.expect(row != nullptr, "no degree-4 row");
  if (!row) return c.result();
  c.expect(row->scanned == 52488, "scanned " + str(row->scanned));
  c.expect(row->mvsp == 648 && row->of_form == 648, "mvsp " + str(row->mvsp) + ", of form " + str(row->of_form));
  c.expect(row->discrepancies == 0, "discrepancies " + str(row->discrepancies));
  c.expect(r.ok(), "other rows disagree");
  c.note("52488 scanned, 648 minimal = 648 of the form, no discrepancies");
  return c.result();
}

// The four interpolation conditions agree with membership on every function.
Outcome interpolation_conditions() {
  Check c;
  for (auto spec : {"2^2:1", "2^3:1", "3^2:1"}) {
    const auto r = census_subfield_valued(*Field::parse(spec));
    c.expect(r.discrepancies == 0, std::string(spec) + ": " + str(r.discrepancies) + " discrepancies");
  }
  c.note("0 discrepancies over F_4, F_8, F_9");
  return c.result();
}

Elem random_elem(const Field& F, std::mt19937_64& rng) { return Elem{rng() % F.order()}; }

AdditivePoly random_additive(const Field& F, std::mt19937_64& rng, int deg) {
  std::vector<Elem> c;
  for (int i = 0; i <= deg; ++i) c.push_back(random_elem(F, rng));
  if (c.back().is_zero()) c.back() = F.one();
  return AdditivePoly(F.k(), std::move(c));
}

// Every F_q-subspace of F, as the sorted list of its elements.
std::vector<std::vector<Elem>> all_subspaces(const Field& F) {
  std::set<std::vector<Elem>> seen{{F.zero()}};
  std::vector<std::vector<Elem>> frontier{{F.zero()}}, out{{F.zero()}};
  const auto fq = F.subfield_elements(1);
  while (!frontier.empty()) {
    std::vector<std::vector<Elem>> next;
    for (const auto& V : frontier) {
      const std::set<Elem> in(V.begin(), V.end());
      for (std::uint64_t v = 1; v < F.order(); ++v) {
        if (in.count(Elem{v})) continue;
        std::set<Elem> W;
        for (Elem a : V)
          for (Elem c : fq) W.insert(F.add(a, F.mul(c, Elem{v})));
        std::vector<Elem> w(W.begin(), W.end());
        if (seen.insert(w).second) {
          next.push_back(w);
          out.push_back(w);
        }
      }
    }
    frontier = std::move(next);
  }
  return out;
}

std::vector<Elem> random_subspace_basis(const Field& F, unsigned t, std::mt19937_64& rng) {
  std::vector<Elem> pool;
  for (unsigned i = 0; i < 4 * F.n() + 8; ++i) pool.push_back(random_elem(F, rng));
  auto basis = F.fq_independent_subset(pool, t);
  return basis.size() == t ? basis : std::vector<Elem>{};
}

struct SweepStats {
  std::uint64_t subspaces = 0, oracle = 0, oracle_skipped = 0;
};

void lift_and_compare(Check& c, const Field& F, const AdditivePoly& A, unsigned t, SweepStats& st) {
  if (!satisfies_star(F, A)) return;
  ++st.subspaces;
  const auto r = lift_pipeline(F, A);
  c.expect(r.dim_lower == r.bound, F.spec() + ": lift rank " + str(r.dim_lower) + " != bound " + str(r.bound));
  if (2 * t < F.n()) return;
  try {
    const auto L = linear_dim_w(F, A);
    ++st.oracle;
    c.expect(L.dim == r.dim_lower, F.spec() + ": linear dimension " + str(L.dim) + " != " + str(r.dim_lower));
  } catch (const GuardError&) {
    ++st.oracle_skipped;
  }
}

Outcome property_suites() {
  Check c;
  std::mt19937_64 rng(20240611);

  // Ore left division recovers the right factor exactly.
  std::uint64_t divisions = 0;
  struct Case {
    std::uint64_t p;
    unsigned k, n;
  };
  const std::vector<Case> div_fields{{2, 1, 4}, {2, 2, 3}, {3, 1, 4}, {3, 2, 2}, {5, 1, 3}, {7, 1, 2}, {2, 1, 10}};
  for (auto [p, k, n] : div_fields) {
    auto F = Field::make(p, k, n);
    for (int i = 0; i < 100; ++i) {
      const auto A = random_additive(*F, rng, 1 + static_cast<int>(rng() % 3));
      const auto M = random_additive(*F, rng, static_cast<int>(rng() % 4));
      const auto [Q, R] = tau_left_divide(*F, tau_compose(*F, A, M), A);
      c.expect(R.is_zero() && Q == M, F->spec() + ": left division did not recover the factor");
      ++divisions;
    }
  }

  // Orbit counts: sum over d of d o(d) is 2^n.
  for (unsigned n = 1; n <= 20; ++n) {
    std::uint64_t s = 0;
    for (auto [d, o] : orbit_table(2, n).counts) s += d * o;
    c.expect(s == std::uint64_t{1} << n, "orbit counts for n = " + str(n));
  }

  // Subspace polynomial and kernel are inverse, and the lift reaches its bound.
  SweepStats st;
  std::uint64_t fields = 0;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13}) {
    for (unsigned k = 1; ipow(p, k) <= 64; ++k) {
      const std::uint64_t q = ipow(p, k);
      for (unsigned n = 2; ipow(q, n) <= 4096; ++n) {
        auto F = Field::make(p, k, n);
        ++fields;
        auto round_trip = [&](const std::vector<Elem>& basis) {
          const auto A = subspace_poly(*F, basis);
          const auto K = kernel(*F, A);
          const unsigned t = static_cast<unsigned>(basis.size());
          c.expect(K.t == t, F->spec() + ": kernel dimension " + str(K.t) + " != " + str(t));
          for (Elem b : basis) c.expect(eval(*F, A, b).is_zero(), F->spec() + ": basis element not a root");
          c.expect(F->fq_rank(K.basis) == t, F->spec() + ": kernel basis rank");
          lift_and_compare(c, *F, A, t, st);
        };
        if (F->order() <= 81) {
          for (const auto& V : all_subspaces(*F)) round_trip(F->fq_independent_subset(V));
        } else {
          for (unsigned t = 1; t < n; ++t)
            for (int i = 0; i < 2; ++i) {
              const auto basis = random_subspace_basis(*F, t, rng);
              if (!basis.empty()) round_trip(basis);
            }
        }
      }
    }
  }
  c.note(str(divisions) + " divisions; orbit sums n <= 20; " + str(st.subspaces) + " subspaces over " + str(fields) +
         " fields at the bound; " + str(st.oracle) + " linear comparisons, " + str(st.oracle_skipped) + " guarded");
  return c.result();
}

}  // namespace
}  // namespace mvsp

int main() {
  using namespace mvsp;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"binomial basis dimension", binomial_dimension},
      {"census equals enumeration", census_equals_enumeration},
      {"F_64 lift of x^4+x^2+x", sixty_four_lift},
      {"G = x^18+x^9 over F_64", example_g},
      {"q = 3 power lift", power_lift_three},
      {"F_9 degree-4 characterization", nine_degree_four},
      {"interpolation conditions", interpolation_conditions},
      {"property suites", property_suites},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s [%zu] %s: %s (%.2fs)\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.ok) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
