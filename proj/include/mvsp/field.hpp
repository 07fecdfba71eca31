#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mvsp/error.hpp"

namespace mvsp {

/// Element of F_{p^N}. The value packs the F_p coordinate vector in base p,
/// low degree first: v = sum coeffs[i] * p^i. Comparing values gives the
/// canonical element order used everywhere a scan order matters.
struct Elem {
  std::uint64_t v = 0;

  constexpr Elem() = default;
  constexpr explicit Elem(std::uint64_t value) : v(value) {}

  constexpr bool is_zero() const { return v == 0; }
  friend constexpr auto operator<=>(const Elem&, const Elem&) = default;
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// The ambient field F_{q^n} = F_{p^N} with distinguished base subfield F_q,
/// q = p^k, N = k*n. Immutable after construction.
class Field {
 public:
  /// Builds F_{p^(k n)} over the lexicographically least monic irreducible
  /// modulus (coefficients compared c_0 first).
  static FieldPtr make(std::uint64_t p, unsigned k, unsigned n);
  /// Parses "p^N:k", e.g. "2^6:1".
  static FieldPtr parse(const std::string& spec);

  std::uint64_t p() const { return p_; }
  unsigned k() const { return k_; }
  unsigned n() const { return n_; }
  unsigned degree() const { return N_; }
  std::uint64_t q() const { return q_; }
  /// |F| = q^n.
  std::uint64_t order() const { return order_; }
  const std::vector<std::uint64_t>& modulus() const { return modulus_; }
  bool has_tables() const { return !exp_.empty(); }
  std::string spec() const;

  Elem zero() const { return Elem{0}; }
  Elem one() const { return Elem{1}; }
  /// The class of y in F_p[y]/(modulus).
  Elem gen() const;
  /// A multiplicative generator (least in canonical order).
  Elem primitive() const { return primitive_; }
  Elem from_int(std::int64_t c) const;
  Elem from_digits(std::span<const std::uint64_t> digits) const;
  std::vector<std::uint64_t> digits(Elem a) const;
  bool is_valid(Elem a) const { return a.v < order_; }
  /// True iff a lies in the prime field.
  bool in_prime_field(Elem a) const { return a.v < p_; }

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;
  /// Multiplication by the integer c (reduced mod p).
  Elem scale_int(Elem a, std::uint64_t c) const;

  /// a^(q^j); j is reduced mod n and may be negative.
  Elem frobenius(Elem a, std::int64_t j) const;
  /// a^(p^i); i is reduced mod N and may be negative.
  Elem frobenius_p(Elem a, std::int64_t i) const;

  /// True iff a is fixed by the d-th power of the q-Frobenius.
  bool in_subfield(Elem a, unsigned d) const;
  /// d elements of F_{q^d}, independent over F_q, taken greedily in canonical order.
  std::vector<Elem> subfield_basis(unsigned d) const;
  /// All elements of F_{q^d} in canonical order.
  std::vector<Elem> subfield_elements(unsigned d) const;
  /// Some b with b^e = alpha, or nullopt. alpha must be nonzero.
  std::optional<Elem> solve_power(Elem alpha, std::uint64_t e) const;

  /// F_p-rank of the F_q-span of the given elements, divided by k: the
  /// dimension of their F_q-span.
  unsigned fq_rank(std::span<const Elem> elems) const;
  /// Greedy F_q-independent subset, in input order, stopping after `limit` picks.
  std::vector<Elem> fq_independent_subset(std::span<const Elem> elems, std::size_t limit = SIZE_MAX) const;
  /// Coordinates c_j in F_q with sum c_j * basis[j] == target, if any.
  std::optional<std::vector<Elem>> fq_coordinates(std::span<const Elem> basis, Elem target) const;

  /// F_p-basis of F_q (k elements).
  const std::vector<Elem>& fq_prime_basis() const { return fq_basis_; }

  /// Schoolbook product, independent of the log tables.
  Elem mul_schoolbook(Elem a, Elem b) const;

 private:
  Field(std::uint64_t p, unsigned k, unsigned n);
  void build_tables();

  std::uint64_t p_;
  unsigned k_, n_, N_;
  std::uint64_t q_, order_;
  std::vector<std::uint64_t> modulus_;  // N+1 coefficients, monic
  std::vector<std::uint64_t> ppow_;     // p^i for i <= N
  Elem primitive_;
  std::vector<std::uint32_t> exp_;      // exp_[i] = primitive^i, i < order-1
  std::vector<std::uint32_t> log_;      // log_[v] for v != 0
  std::vector<Elem> fq_basis_;          // F_p-basis of F_q
};

std::vector<std::uint64_t> divisors(std::uint64_t m);
std::vector<std::uint64_t> prime_factors(std::uint64_t m);
bool is_prime(std::uint64_t m);
std::uint64_t ipow(std::uint64_t base, unsigned e);

}  // namespace mvsp

template <>
struct std::hash<mvsp::Elem> {
  std::size_t operator()(const mvsp::Elem& e) const noexcept { return std::hash<std::uint64_t>{}(e.v); }
};
