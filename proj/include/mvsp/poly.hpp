#pragma once

#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "mvsp/field.hpp"

namespace mvsp {

/// Sparse univariate polynomial over the ambient field. Terms are kept sorted
/// by increasing exponent with no zero coefficients.
class Poly {
 public:
  using Term = std::pair<std::uint64_t, Elem>;
  /// Degree of the zero polynomial.
  static constexpr std::int64_t kDegZero = std::numeric_limits<std::int64_t>::min();
  /// Exponents at or above this bound are rejected.
  static constexpr std::uint64_t kMaxExponent = std::uint64_t{1} << 62;

  Poly() = default;
  /// Takes unsorted terms; zero coefficients are dropped, duplicate exponents summed.
  Poly(const Field& F, std::vector<Term> terms);

  static Poly constant(Elem c);
  static Poly monomial(Elem c, std::uint64_t e);
  static Poly x() { return monomial(Elem{1}, 1); }

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0); }
  std::int64_t degree() const { return terms_.empty() ? kDegZero : static_cast<std::int64_t>(terms_.back().first); }
  Elem leading() const { return terms_.empty() ? Elem{0} : terms_.back().second; }
  Elem coeff(std::uint64_t e) const;

  friend bool operator==(const Poly&, const Poly&) = default;

 private:
  struct Sorted {};
  Poly(Sorted, std::vector<Term> terms) : terms_(std::move(terms)) {}
  friend Poly from_sorted_terms(std::vector<Term> terms);

  std::vector<Term> terms_;
};

/// Wraps terms already sorted by strictly increasing exponent with nonzero coefficients.
Poly from_sorted_terms(std::vector<Poly::Term> terms);
Poly from_dense(const std::vector<Elem>& coeffs);
std::vector<Elem> to_dense(const Poly& f);

Poly add(const Field& F, const Poly& f, const Poly& g);
Poly sub(const Field& F, const Poly& f, const Poly& g);
Poly neg(const Field& F, const Poly& f);
Poly scale(const Field& F, const Poly& f, Elem c);
Poly mul(const Field& F, const Poly& f, const Poly& g);
Poly pow(const Field& F, const Poly& f, std::uint64_t e);
/// f^(p^i): coefficients raised to p^i, exponents multiplied by p^i.
Poly frobenius_map(const Field& F, const Poly& f, unsigned i);
/// f(g(x)).
Poly compose(const Field& F, const Poly& f, const Poly& g);
Poly derivative(const Field& F, const Poly& f);
Poly monic(const Field& F, const Poly& f);

/// Canonical representative mod x^Q - x: exponent e >= 1 maps to ((e-1) mod (Q-1)) + 1.
Poly reduce_mod_field(const Field& F, const Poly& f, std::uint64_t Q);
inline Poly reduce_mod_field(const Field& F, const Poly& f) { return reduce_mod_field(F, f, F.order()); }

/// Quotient and remainder for b != 0.
std::pair<Poly, Poly> divmod(const Field& F, const Poly& a, const Poly& b);
Poly rem(const Field& F, const Poly& a, const Poly& b);
/// Monic gcd; gcd(0, 0) is rejected.
Poly gcd(const Field& F, const Poly& f, const Poly& g);
/// x^Q - x for the ambient field.
Poly field_poly(const Field& F);
/// deg gcd(f, x^Q - x): the number of distinct roots of f in the field.
std::uint64_t distinct_root_count(const Field& F, const Poly& f);

Elem eval(const Field& F, const Poly& f, Elem a);
/// The value set, sorted in canonical element order.
std::vector<Elem> value_set(const Field& F, const Poly& f);
/// Roots in the ambient field by exhaustive evaluation, sorted.
std::vector<Elem> roots_by_scan(const Field& F, const Poly& f);
/// Unique polynomial of degree < points.size() through the points.
Poly interpolate(const Field& F, const std::vector<std::pair<Elem, Elem>>& points);

}  // namespace mvsp
