#include "mvsp/criteria.hpp"

#include <gtest/gtest.h>

#include <map>
#include <set>

#include "test_util.hpp"

namespace mvsp {
namespace {

using testing::random_elem;
using testing::random_poly;

Poly xpow(std::uint64_t e) { return Poly::monomial(Elem{1}, e); }
Poly P(const Field& F, std::vector<Poly::Term> t) { return Poly(F, std::move(t)); }
Poly c(Elem a) { return Poly::constant(a); }

// T = prod (x - s).
Poly product_poly(const Field& F, const std::vector<Elem>& S) {
  Poly T = c(F.one());
  for (Elem s : S) T = mul(F, T, sub(F, Poly::x(), c(s)));
  return T;
}

// Every polynomial of degree <= d, as coefficient index 0..Q^(d+1)-1.
Poly poly_from_index(const Field& F, std::uint64_t idx, unsigned d) {
  std::vector<Elem> co;
  for (unsigned i = 0; i <= d; ++i) {
    co.push_back(Elem{idx % F.order()});
    idx /= F.order();
  }
  return from_dense(co);
}

// Independent value count by direct evaluation into a set.
std::set<Elem> values_oracle(const Field& F, const Poly& f) {
  std::set<Elem> s;
  for (std::uint64_t v = 0; v < F.order(); ++v) {
    Elem acc = F.zero();
    for (auto [e, co] : f.terms()) acc = F.add(acc, F.mul(co, F.pow(Elem{v}, e)));
    s.insert(acc);
  }
  return s;
}

TEST(IsMinimal, Examples) {
  auto F64 = Field::make(2, 1, 6);
  auto r = is_minimal(*F64, Poly::x());
  EXPECT_TRUE(r.is_mvsp);
  EXPECT_EQ(r.bound, 64u);

  r = is_minimal(*F64, add(*F64, xpow(18), xpow(9)));
  EXPECT_TRUE(r.is_mvsp);
  EXPECT_EQ(r.value_set.size(), 4u);
  EXPECT_EQ(r.bound, 4u);

  auto F8 = Field::make(2, 1, 3);
  r = is_minimal(*F8, add(*F8, xpow(2), Poly::x()));
  EXPECT_TRUE(r.is_mvsp);
  EXPECT_EQ(r.value_set.size(), 4u);
  EXPECT_EQ(r.bound, 4u);

  EXPECT_THROW(is_minimal(*F8, c(F8->one())), InputError);
}

TEST(MillsCheck, Examples) {
  auto F = Field::make(2, 1, 6);
  const Poly T8 = add(*F, xpow(8), Poly::x());
  auto r = mills_check(*F, xpow(9), T8);
  EXPECT_TRUE(r.member);
  EXPECT_TRUE(r.is_mvsp);
  ASSERT_TRUE(r.theta);
  EXPECT_EQ(*r.theta, F->one());

  const Poly A = P(*F, {{4, F->one()}, {2, F->one()}, {1, F->one()}});
  r = mills_check(*F, add(*F, xpow(18), xpow(9)), A);
  EXPECT_TRUE(r.member);
  ASSERT_TRUE(r.theta);
  EXPECT_EQ(*r.theta, F->one());
  EXPECT_EQ(r.theta_candidates, std::vector<Elem>{F->one()});
  for (Elem v : r.value_set) EXPECT_TRUE(F->in_subfield(v, 3));

  r = mills_check(*F, xpow(2), A);
  EXPECT_FALSE(r.member);
  EXPECT_EQ(r.reason, "value set mismatch");

  // Constants: members exactly when they are roots.
  const auto roots = split_roots(*F, A);
  EXPECT_EQ(roots.size(), 4u);
  for (std::uint64_t v = 0; v < F->order(); ++v)
    EXPECT_EQ(mills_check(*F, c(Elem{v}), A).member, std::binary_search(roots.begin(), roots.end(), Elem{v}));

  // Targets outside (*).
  // x^3 + 1 splits over F_4 inside F_64; x^3 + x has a double root.
  EXPECT_TRUE(satisfies_star(*F, add(*F, xpow(3), c(F->one()))));
  EXPECT_THROW(mills_check(*F, Poly::x(), add(*F, xpow(3), Poly::x())), InputError);
  EXPECT_THROW(mills_check(*F, Poly::x(), P(*F, {{4, F->one()}, {2, F->one()}})), InputError);
  auto F4 = Field::make(2, 1, 2);
  EXPECT_TRUE(mills_check(*F4, P(*F4, {{2, F4->gen()}, {1, F4->mul(F4->gen(), F4->gen())}}),
                          add(*F4, xpow(2), Poly::x()))
                  .member);
}

// Membership equals minimality with the right value set.
TEST(MillsCheck, EquivalenceWithMinimality) {
  for (auto spec : {"2^3:1", "3^2:1", "2^4:1"}) {
    auto F = Field::parse(spec);
    // Targets: products over shifted F_p-subspaces of size > 2.
    std::vector<std::pair<Poly, std::vector<Elem>>> targets;
    std::mt19937_64 rng(3);
    for (unsigned dim = 1; dim <= F->degree(); ++dim) {
      for (int rep = 0; rep < 4; ++rep) {
        std::vector<Elem> pool;
        for (int i = 0; i < 12; ++i) pool.push_back(random_elem(*F, rng, true));
        auto basis = F->fq_independent_subset(pool, dim);
        std::set<Elem> span{F->zero()};
        for (Elem b : basis) {
          std::set<Elem> next;
          for (Elem x : span)
            for (std::uint64_t a = 0; a < F->p(); ++a) next.insert(F->add(x, F->scale_int(b, a)));
          span = next;
        }
        if (span.size() <= 2) continue;
        const Elem shift = random_elem(*F, rng);
        std::vector<Elem> S;
        for (Elem s : span) S.push_back(F->add(s, shift));
        std::sort(S.begin(), S.end());
        targets.emplace_back(product_poly(*F, S), S);
      }
    }
    ASSERT_FALSE(targets.empty());
    const unsigned d = F->order() <= 9 ? 3 : 2;
    const std::uint64_t count = ipow(F->order(), d + 1);
    int members = 0;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      const Poly f = poly_from_index(*F, idx, d);
      if (f.is_constant()) continue;
      const auto vals = values_oracle(*F, f);
      const bool minimal = vals.size() == (F->order() - 1) / f.degree() + 1;
      for (const auto& [T, S] : targets) {
        const bool expected = minimal && std::vector<Elem>(vals.begin(), vals.end()) == S;
        const bool got = mills_check(*F, f, T).member;
        EXPECT_EQ(got, expected) << spec << " idx " << idx;
        members += got;
      }
    }
    EXPECT_GT(members, 0) << spec;
  }
}

TEST(AdditiveReduction, Examples) {
  auto F = Field::make(2, 1, 4);
  const Poly T = add(*F, xpow(2), Poly::x());
  auto ws = find_additive_reduction(*F, add(*F, xpow(4), Poly::x()));
  bool found = false;
  for (const auto& w : ws)
    if (w.v == 1 && w.gamma.is_zero() && to_poly(*F, w.A) == add(*F, xpow(4), Poly::x())) found = true;
  EXPECT_TRUE(found);
  (void)T;

  auto F3 = Field::make(3, 1, 6);
  const Poly T3 = P(*F3, {{5, F3->one()}, {2, F3->one()}, {1, F3->one()}});
  ws = find_additive_reduction(*F3, T3);
  found = false;
  for (const auto& w : ws) {
    EXPECT_EQ((ipow(3, w.level) - 1) % w.v, 0u);
    if (w.v == 2 && w.gamma.is_zero() && w.level == 1)
      found = found || to_poly(*F3, w.A) == P(*F3, {{9, F3->one()}, {3, F3->one()}, {1, F3->one()}});
  }
  EXPECT_TRUE(found);
}

// Sets with no additive reduction have no nonconstant members.
TEST(AdditiveReduction, EmptyMeansTrivial) {
  for (auto spec : {"2^3:1", "3^2:1"}) {
    auto F = Field::parse(spec);
    std::mt19937_64 rng(17);
    int tested = 0;
    for (int trial = 0; trial < 40 && tested < 5; ++trial) {
      std::set<Elem> S;
      while (S.size() < 4) S.insert(random_elem(*F, rng));
      const Poly T = product_poly(*F, {S.begin(), S.end()});
      if (!find_additive_reduction(*F, T).empty()) continue;
      ++tested;
      // Members have degree <= (Q-1)/(|S|-1).
      const unsigned d = static_cast<unsigned>((F->order() - 1) / 3);
      for (std::uint64_t idx = 0; idx < ipow(F->order(), d + 1); ++idx) {
        const Poly f = poly_from_index(*F, idx, d);
        if (f.is_constant()) continue;
        EXPECT_FALSE(mills_check(*F, f, T).member) << spec;
      }
    }
    EXPECT_GT(tested, 0) << spec;
  }
}

TEST(PowerLift, Examples) {
  auto F = Field::make(3, 1, 6);
  const Poly T = P(*F, {{5, F->one()}, {2, F->one()}, {1, F->one()}});
  const Poly A = P(*F, {{9, F->one()}, {3, F->one()}, {1, F->one()}});
  // x^(q^4+q) - x^(q^3+1) = M(x^(1+q^3)) with M = x^q - x.
  const Poly G = sub(*F, xpow(84), xpow(28));
  ASSERT_TRUE(mills_check(*F, G, A).member);
  const Poly G2 = power_lift(*F, G, 2, T);
  EXPECT_EQ(G2, pow(*F, G, 2));
  EXPECT_TRUE(mills_check(*F, G2, T).member);

  for (Elem r : split_roots(*F, A)) {
    const Poly img = power_lift(*F, c(r), 2, T);
    EXPECT_TRUE(eval(*F, T, img.coeff(0)).is_zero());
  }

  // v = 1 is the identity.
  EXPECT_EQ(power_lift(*F, G, 1, A), G);

  EXPECT_THROW(power_lift(*F, xpow(2), 2, T), InputError);
  EXPECT_THROW(power_lift(*F, G, 2, add(*F, T, c(F->one()))), InputError);
}

TEST(Classify, Examples) {
  auto F9 = Field::make(3, 1, 2);
  auto cl = classify_low_degree(*F9, xpow(4));
  EXPECT_EQ(cl.kind, FormKind::kSqrtPlusOne);
  EXPECT_EQ(cl.alpha, F9->one());
  EXPECT_EQ(cl.beta, F9->zero());
  EXPECT_EQ(cl.gamma, F9->zero());

  cl = classify_low_degree(*F9, add(*F9, xpow(4), Poly::x()));
  EXPECT_EQ(cl.kind, FormKind::kNone);
  EXPECT_FALSE(is_minimal(*F9, add(*F9, xpow(4), Poly::x())).is_mvsp);
  EXPECT_THROW(classify_low_degree(*F9, xpow(5)), InputError);

  auto F64 = Field::make(2, 1, 6);
  const Poly L = add(*F64, xpow(2), Poly::x());
  const Poly bad = add(*F64, pow(*F64, L, 3), c(F64->one()));
  EXPECT_EQ(classify_low_degree(*F64, bad).kind, FormKind::kNone);
  const auto rep = is_minimal(*F64, bad);
  EXPECT_FALSE(rep.is_mvsp);
  EXPECT_EQ(rep.value_set.size(), 22u);

  const Elem a = F64->gen(), g = F64->from_int(1);
  const Poly good = add(*F64, scale(*F64, pow(*F64, add(*F64, Poly::x(), c(F64->one())), 3), a), c(g));
  cl = classify_low_degree(*F64, good);
  ASSERT_EQ(cl.kind, FormKind::kAdditivePower);
  EXPECT_EQ(cl.v, 3u);
  EXPECT_EQ(add(*F64, scale(*F64, pow(*F64, cl.L, cl.v), cl.alpha), c(cl.gamma)), good);
  EXPECT_TRUE(is_minimal(*F64, good).is_mvsp);
}

TEST(NormalForm, AboveSqrtQ) {
  auto F = Field::make(2, 1, 6);
  // (x^4 + x)^3 + 1 has degree 12 > 8, beyond classify_low_degree.
  const Poly L = P(*F, {{4, F->one()}, {1, F->one()}});
  const Poly f = add(*F, pow(*F, L, 3), Poly::constant(F->one()));
  EXPECT_THROW(classify_low_degree(*F, f), InputError);
  const auto c = extract_normal_form(*F, f);
  EXPECT_EQ(c.kind, FormKind::kAdditivePower);
  EXPECT_EQ(c.v, 3u);
  EXPECT_EQ(c.L, L);
  EXPECT_TRUE(is_minimal(*F, f).is_mvsp);
  // G = x^18 + x^9 is minimal but has neither form.
  const Poly G = P(*F, {{18, F->one()}, {9, F->one()}});
  EXPECT_TRUE(is_minimal(*F, G).is_mvsp);
  EXPECT_EQ(extract_normal_form(*F, G).kind, FormKind::kNone);
}

TEST(Classify, RoundTripRandomForms) {
  auto F = Field::make(2, 1, 6);
  std::mt19937_64 rng(23);
  for (int i = 0; i < 60; ++i) {
    const unsigned choice = rng() % 3;
    AdditivePoly Lpart;
    std::uint64_t v = 1;
    if (choice == 0) {
      std::vector<Elem> pool{random_elem(*F, rng, true), random_elem(*F, rng, true), random_elem(*F, rng, true)};
      Lpart = subspace_poly(*F, F->fq_independent_subset(pool, 1 + rng() % 3));
    } else {
      Lpart = AdditivePoly::identity(1);
      v = choice == 1 ? 3 : 7;
    }
    const Poly L = add(*F, scale(*F, to_poly(*F, Lpart), random_elem(*F, rng, true)), c(random_elem(*F, rng)));
    const Poly f = add(*F, scale(*F, pow(*F, L, v), random_elem(*F, rng, true)), c(random_elem(*F, rng)));
    const auto cl = classify_low_degree(*F, f);
    ASSERT_EQ(cl.kind, FormKind::kAdditivePower);
    EXPECT_EQ(add(*F, scale(*F, pow(*F, cl.L, cl.v), cl.alpha), c(cl.gamma)), f);
    EXPECT_TRUE(is_minimal(*F, f).is_mvsp);
  }
}

TEST(Affine, Examples) {
  auto F = Field::make(3, 1, 2);
  const Poly f = add(*F, xpow(4), P(*F, {{2, F->gen()}}));
  EXPECT_EQ(affine_equivalent(*F, f, f), (std::pair{F->one(), F->zero()}));
  const Elem beta = F->from_int(2);
  const Poly g = compose(*F, xpow(4), add(*F, Poly::x(), c(beta)));
  EXPECT_EQ(affine_equivalent(*F, xpow(4), g), (std::pair{F->one(), beta}));
  EXPECT_FALSE(affine_equivalent(*F, xpow(4), xpow(3)));
  EXPECT_FALSE(affine_equivalent(*F, xpow(4), add(*F, xpow(4), Poly::x())));
}

// Minimal polynomials of degree <= 3 over F_9 sharing a value set are affine images.
TEST(Affine, SameValueSetsAreEquivalent) {
  auto F = Field::make(3, 1, 2);
  for (unsigned d : {2u, 3u}) {
    std::map<std::vector<Elem>, std::vector<Poly>> groups;
    for (std::uint64_t idx = 0; idx < ipow(9, d + 1); ++idx) {
      const Poly f = poly_from_index(*F, idx, d);
      if (f.degree() != static_cast<std::int64_t>(d)) continue;
      const auto vals = values_oracle(*F, f);
      if (vals.size() <= 2 || vals.size() != 8 / d + 1) continue;
      groups[{vals.begin(), vals.end()}].push_back(f);
    }
    ASSERT_FALSE(groups.empty());
    for (const auto& [vals, members] : groups)
      for (const auto& g : members) EXPECT_TRUE(affine_equivalent(*F, members.front(), g)) << d;
  }
}

// Past sqrt(Q) this fails: (x^4) and (x^4 + 1) both have value set F_3 but F(ax+b) keeps F's
// fourfold value.
TEST(Affine, FailsAboveSqrtQ) {
  auto F = Field::make(3, 1, 2);
  const Poly f = xpow(4), g = add(*F, xpow(4), c(F->one()));
  EXPECT_EQ(values_oracle(*F, f), values_oracle(*F, g));
  EXPECT_FALSE(affine_equivalent(*F, f, g));
}

TEST(Profile, Examples) {
  auto F = Field::make(2, 1, 6);
  const auto prof = mills_profile(*F, xpow(9), add(*F, xpow(8), Poly::x()));
  EXPECT_EQ(prof.values.size(), 8u);
  EXPECT_TRUE(prof.part_i);
  EXPECT_TRUE(prof.part_ii);
  std::uint64_t total = 0;
  for (const auto& vp : prof.values) {
    for (auto [r, m] : vp.multiplicities) total += m;
    if (!vp.gamma.is_zero()) {
      EXPECT_EQ(vp.distinct_roots, 9u);
      EXPECT_EQ(vp.simple_roots, 9u);
    } else {
      EXPECT_EQ(vp.distinct_roots, 1u);
      EXPECT_EQ(vp.simple_roots, 0u);
    }
  }
  EXPECT_EQ(total, 7 * 9 + 9u);

  auto F16 = Field::make(2, 2, 2);
  const Poly tr = add(*F16, xpow(4), Poly::x());
  const auto p2 = mills_profile(*F16, tr, add(*F16, xpow(4), Poly::x()));
  for (const auto& vp : p2.values) {
    EXPECT_EQ(vp.distinct_roots, 4u);
    EXPECT_EQ(vp.simple_roots, 4u);
  }
  EXPECT_THROW(mills_profile(*F, xpow(3), P(*F, {{4, F->one()}, {2, F->one()}, {1, F->one()}})), InputError);
}

TEST(Profile, HoldsForMembers) {
  auto F = Field::make(3, 1, 2);
  const Poly T = add(*F, xpow(3), neg(*F, Poly::x()));
  int n = 0;
  for (std::uint64_t idx = 0; idx < ipow(9, 5); ++idx) {
    const Poly f = poly_from_index(*F, idx, 4);
    if (f.is_constant() || !mills_check(*F, f, T).member) continue;
    const auto prof = mills_profile(*F, f, T);
    EXPECT_TRUE(prof.part_i);
    EXPECT_TRUE(prof.part_ii);
    ++n;
  }
  EXPECT_EQ(n, 81 - 3);
}

}  // namespace
}  // namespace mvsp
