#include "mvsp/field.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <set>

namespace mvsp {
namespace {

// Independent check for degree-2 monic polynomials: irreducible iff no root in F_p.
bool quadratic_irreducible(std::uint64_t p, std::uint64_t c0, std::uint64_t c1) {
  for (std::uint64_t x = 0; x < p; ++x)
    if ((x * x + c1 * x + c0) % p == 0) return false;
  return true;
}

TEST(MakeField, F4Modulus) {
  auto F = Field::make(2, 1, 2);
  EXPECT_EQ(F->modulus(), (std::vector<std::uint64_t>{1, 1, 1}));
  EXPECT_EQ(F->order(), 4u);
}

TEST(MakeField, F9ModulusIsLexLeastIrreducible) {
  // c_0 compared first, then c_1.
  std::vector<std::uint64_t> expected;
  for (std::uint64_t c0 = 0; c0 < 3 && expected.empty(); ++c0)
    for (std::uint64_t c1 = 0; c1 < 3; ++c1)
      if (quadratic_irreducible(3, c0, c1)) {
        expected = {c0, c1, 1};
        break;
      }
  auto F = Field::make(3, 1, 2);
  EXPECT_EQ(F->modulus(), expected);
  EXPECT_EQ(F->modulus(), (std::vector<std::uint64_t>{1, 0, 1}));
}

TEST(MakeField, F64Parameters) {
  auto F = Field::make(2, 1, 6);
  EXPECT_EQ(F->q(), 2u);
  EXPECT_EQ(F->n(), 6u);
  EXPECT_EQ(F->order() - 1, 63u);
  EXPECT_EQ(Field::parse("2^6:1")->modulus(), F->modulus());
  EXPECT_EQ(Field::parse("2^6:2")->q(), 4u);
}

TEST(MakeField, Deterministic) {
  for (auto [p, k, n] : {std::tuple{2u, 1u, 8u}, {3u, 2u, 3u}, {5u, 1u, 4u}, {7u, 1u, 3u}})
    EXPECT_EQ(Field::make(p, k, n)->modulus(), Field::make(p, k, n)->modulus());
}

TEST(MakeField, Errors) {
  EXPECT_THROW(Field::make(4, 1, 2), InputError);
  EXPECT_THROW(Field::make(2, 1, 70), InputError);
  EXPECT_THROW(Field::parse("2^6:4"), InputError);
  EXPECT_THROW(Field::parse("two^6"), InputError);
}

class FieldAxioms : public ::testing::TestWithParam<std::tuple<unsigned, unsigned, unsigned>> {};

TEST_P(FieldAxioms, RandomTriples) {
  auto [p, k, n] = GetParam();
  auto F = Field::make(p, k, n);
  std::mt19937_64 rng(p * 1000 + k * 10 + n);
  std::uniform_int_distribution<std::uint64_t> pick(0, F->order() - 1);
  for (int i = 0; i < 1000; ++i) {
    Elem a{pick(rng)}, b{pick(rng)}, c{pick(rng)};
    EXPECT_EQ(F->mul(F->mul(a, b), c), F->mul(a, F->mul(b, c)));
    EXPECT_EQ(F->add(F->add(a, b), c), F->add(a, F->add(b, c)));
    EXPECT_EQ(F->mul(a, F->add(b, c)), F->add(F->mul(a, b), F->mul(a, c)));
    EXPECT_EQ(F->add(a, F->neg(a)), F->zero());
    EXPECT_EQ(F->mul(a, b), F->mul_schoolbook(a, b));
    if (!a.is_zero()) EXPECT_EQ(F->mul(a, F->inv(a)), F->one());
  }
}

INSTANTIATE_TEST_SUITE_P(Fields, FieldAxioms,
                         ::testing::Values(std::tuple{2u, 1u, 6u}, std::tuple{3u, 1u, 6u}, std::tuple{2u, 2u, 4u},
                                           std::tuple{5u, 1u, 3u}, std::tuple{7u, 2u, 2u}, std::tuple{2u, 1u, 21u}));

TEST(Frobenius, Examples) {
  auto F = Field::make(2, 1, 2);
  EXPECT_EQ(F->frobenius(F->one(), 1), F->one());
  const Elem g = F->gen();
  EXPECT_EQ(F->frobenius(g, 1), F->add(g, F->one()));
  auto G = Field::make(3, 1, 6);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    Elem a{rng() % G->order()};
    for (int j = -7; j <= 7; ++j) EXPECT_EQ(G->frobenius(G->frobenius(a, j), 6 - j), a);
    EXPECT_EQ(G->frobenius(a, 6), a);
    EXPECT_EQ(G->frobenius(a, -1), G->frobenius(a, 5));
  }
}

TEST(Frobenius, FixedSetSizes) {
  for (auto [p, k, n] : {std::tuple{2u, 1u, 6u}, {3u, 1u, 4u}, {2u, 2u, 4u}, {2u, 1u, 12u}}) {
    auto F = Field::make(p, k, n);
    for (unsigned j = 0; j < n; ++j) {
      std::uint64_t fixed = 0;
      for (std::uint64_t v = 0; v < F->order(); ++v) fixed += F->frobenius(Elem{v}, j) == Elem{v};
      EXPECT_EQ(fixed, ipow(F->q(), std::gcd(j, n))) << F->spec() << " j=" << j;
    }
  }
}

TEST(Subfield, Membership) {
  auto F = Field::make(2, 1, 6);
  for (unsigned d : {1u, 2u, 3u, 6u}) {
    EXPECT_TRUE(F->in_subfield(F->zero(), d));
    EXPECT_TRUE(F->in_subfield(F->one(), d));
    std::uint64_t count = 0;
    for (std::uint64_t v = 0; v < 64; ++v) count += F->in_subfield(Elem{v}, d);
    EXPECT_EQ(count, ipow(2, d));
    EXPECT_EQ(F->subfield_elements(d).size(), ipow(2, d));
  }
  for (Elem a : F->subfield_elements(3)) EXPECT_EQ(F->pow(a, 8), a);
  EXPECT_THROW(F->in_subfield(F->one(), 4), InputError);
}

TEST(Subfield, Basis) {
  auto F4 = Field::make(2, 1, 2);
  EXPECT_EQ(F4->subfield_basis(1), (std::vector<Elem>{F4->one()}));
  EXPECT_EQ(F4->subfield_basis(2), (std::vector<Elem>{F4->one(), F4->gen()}));
  for (auto [p, k, n] : {std::tuple{2u, 1u, 6u}, {3u, 2u, 2u}, {2u, 2u, 3u}}) {
    auto F = Field::make(p, k, n);
    for (auto d : divisors(n)) {
      auto basis = F->subfield_basis(static_cast<unsigned>(d));
      ASSERT_EQ(basis.size(), d);
      EXPECT_EQ(F->fq_rank(basis), d);
      for (Elem b : basis) EXPECT_TRUE(F->in_subfield(b, static_cast<unsigned>(d)));
      // The F_q-span has q^d elements: enumerate it.
      const auto fq = F->subfield_elements(1);
      std::set<Elem> span{F->zero()};
      for (Elem b : basis) {
        std::set<Elem> next;
        for (Elem s : span)
          for (Elem c : fq) next.insert(F->add(s, F->mul(c, b)));
        span = std::move(next);
      }
      EXPECT_EQ(span.size(), ipow(F->q(), static_cast<unsigned>(d)));
    }
  }
}

TEST(Subfield, Coordinates) {
  auto F = Field::make(2, 2, 3);
  auto basis = F->subfield_basis(3);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    Elem t{rng() % F->order()};
    auto c = F->fq_coordinates(basis, t);
    ASSERT_TRUE(c);
    Elem acc = F->zero();
    for (std::size_t j = 0; j < basis.size(); ++j) {
      EXPECT_TRUE(F->in_subfield((*c)[j], 1));
      acc = F->add(acc, F->mul((*c)[j], basis[j]));
    }
    EXPECT_EQ(acc, t);
  }
}

TEST(SolvePower, Examples) {
  auto F4 = Field::make(2, 1, 2);
  EXPECT_EQ(F4->solve_power(F4->one(), 5), F4->one());
  EXPECT_FALSE(F4->solve_power(F4->gen(), 3));
  auto F9 = Field::make(3, 1, 2);
  const Elem minus_one = F9->neg(F9->one());
  bool brute = false;
  for (std::uint64_t v = 1; v < 9; ++v) brute |= F9->mul(Elem{v}, Elem{v}) == minus_one;
  ASSERT_TRUE(brute);
  auto b = F9->solve_power(minus_one, 2);
  ASSERT_TRUE(b);
  EXPECT_EQ(F9->mul(*b, *b), minus_one);
  EXPECT_THROW(F9->solve_power(F9->zero(), 2), InputError);
}

TEST(Digits, RoundTrip) {
  auto F = Field::make(3, 1, 4);
  for (std::uint64_t v = 0; v < F->order(); ++v) {
    const auto d = F->digits(Elem{v});
    EXPECT_EQ(F->from_digits(d), Elem{v});
  }
  const std::vector<std::uint64_t> bad{3};
  EXPECT_THROW(F->from_digits(bad), InputError);
}

}  // namespace
}  // namespace mvsp
