#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mvsp/linearized.hpp"

namespace mvsp {

struct MvspReport {
  bool is_mvsp = false;
  /// For mills_check: F lies in W(T), i.e. the identity holds for some theta
  /// (or F is a constant root of T).
  bool member = false;
  std::vector<Elem> value_set;  // sorted; empty when not computed
  std::int64_t deg = 0;
  std::uint64_t bound = 0;      // floor((Q-1)/deg F) + 1
  std::optional<Elem> theta;
  std::vector<Elem> theta_candidates;
  std::string reason;           // empty on success
};

struct ReductionWitness {
  std::uint64_t v = 0;
  unsigned level = 0;           // k' with A p^k'-additive
  Elem gamma;
  AdditivePoly A;
};

/// Separable, monic, degree > 2, split over the ambient field.
bool satisfies_star(const Field& F, const Poly& T);
/// Whether T is acceptable as a Mills target: (*), or x^2 - a x (a != 0) in characteristic 2.
bool is_mills_target(const Field& F, const Poly& T);

/// Value set of F against the bound floor((Q-1)/deg F) + 1.
MvspReport is_minimal(const Field& F, const Poly& f);
/// Tests T(F) = theta (x^Q - x) F' over theta in {-T'(g) : T(g) = 0}.
MvspReport mills_check(const Field& F, const Poly& f, const Poly& T);
/// Exact test of the identity for one theta.
bool mills_identity(const Field& F, const Poly& f, const Poly& T, Elem theta);

/// Every (v, k', gamma, A) with T(x^v + gamma) = x^(v-1) A(x), A p^k'-additive and v | p^k' - 1.
std::vector<ReductionWitness> find_additive_reduction(const Field& F, const Poly& T);

/// F^v for F in W(A), A = T(x^v)/x^(v-1). The result is checked against T with
/// theta = -A'/v.
Poly power_lift(const Field& F, const Poly& f, std::uint64_t v, const Poly& T);

enum class FormKind { kNone, kAdditivePower, kSqrtPlusOne };

/// F = alpha L^v + gamma with L additive plus a constant (kAdditivePower), or
/// F = alpha (x + beta)^(sqrt(Q)+1) + gamma (kSqrtPlusOne).
struct Classification {
  FormKind kind = FormKind::kNone;
  Elem alpha, beta, gamma;
  std::uint64_t v = 0;
  unsigned level = 0;
  Poly L;
};

/// Requires 0 < deg F <= sqrt(Q) + 1 (the +1 only when Q is a square).
Classification classify_low_degree(const Field& F, const Poly& f);
/// The same two normal forms searched at any degree; kNone when neither fits.
Classification extract_normal_form(const Field& F, const Poly& f);

/// First (a, b), a != 0, in canonical scan order with G(x) = F(a x + b).
std::optional<std::pair<Elem, Elem>> affine_equivalent(const Field& F, const Poly& f, const Poly& g);

struct ValueProfile {
  Elem gamma;
  std::uint64_t distinct_roots = 0;    // l_gamma: distinct roots of F - gamma in the field
  std::uint64_t simple_roots = 0;      // roots in the field with multiplicity 1
  std::vector<std::pair<Elem, std::uint64_t>> multiplicities;  // field roots
  bool field_mults_prime_to_p = true;
  bool rest_is_pth_power = true;       // cofactor outside the field roots has zero derivative
};

struct MillsProfile {
  std::vector<ValueProfile> values;
  std::size_t with_simple_root = 0;
  bool part_i = true;   // field roots have multiplicity prime to p, others divisible by p
  bool part_ii = true;  // at least r = |roots T| - 1 values have a simple root
};

/// Root structure of F - gamma per root gamma of T; F must be a nonconstant member of W(T).
MillsProfile mills_profile(const Field& F, const Poly& f, const Poly& T);

/// Roots of a split T; by additive kernel when T is additive, else by scan.
std::vector<Elem> split_roots(const Field& F, const Poly& T);
/// floor((Q-1)/deg) + 1.
std::uint64_t value_bound(const Field& F, std::int64_t deg);

}  // namespace mvsp
