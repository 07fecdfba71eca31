#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "mvsp/criteria.hpp"

namespace mvsp {

struct Orbit {
  std::uint64_t mask = 0;      // bit i is the digit a_i of the representative
  std::uint64_t exponent = 0;  // sum a_i q^i
  unsigned size = 0;
};

/// Necklaces of length n over {0,1} under rotation, i.e. Galois orbits of the
/// exponents sum a_i q^i with a_i in {0,1}. Representatives have the least exponent.
struct OrbitTable {
  std::uint64_t q = 0;
  unsigned n = 0;
  std::vector<Orbit> orbits;               // sorted by representative exponent
  std::map<unsigned, std::uint64_t> counts;  // o(d) per divisor d of n
};

/// Guarded at n <= 24; exponents are computed when q^n < 2^62 (else left 0).
OrbitTable orbit_table(std::uint64_t q, unsigned n);
/// "n,bits,exponent,size" lines; bits are a_0 ... a_{n-1}.
std::string orbit_table_csv(const OrbitTable& t);
/// Least rotation of an n-bit mask, and the shift s with rot^s(least) == mask.
std::pair<std::uint64_t, unsigned> least_rotation(std::uint64_t mask, unsigned n);

/// Basis over F_q of W(x^(q^d) - alpha x) in the ambient field.
struct WBasis {
  unsigned d = 0;
  Elem alpha;
  Elem beta;                    // beta^(q^d - 1) = alpha; the basis is beta * W(x^(q^d) - x)
  std::uint64_t Qd = 0;         // q^d
  unsigned n_rel = 0;           // n / d
  OrbitTable table;             // orbits over Q' = q^d
  std::vector<Poly> elems;
  std::vector<std::size_t> orbit_of;  // index into table.orbits
  std::vector<Elem> coeff_of;         // the F_q-basis element of F_(q^(d d_i)) used
  std::size_t dim = 0;
};

Poly binomial_poly(const Field& F, unsigned d, Elem alpha);
WBasis build_basis(const Field& F, unsigned d, Elem alpha);
/// F_q-coordinates of f with respect to the basis, or nullopt if f is not in W.
std::optional<std::vector<Elem>> membership_coordinates(const Field& F, const Poly& f, const WBasis& B);
/// sum c_i basis[i].
Poly combine(const Field& F, const std::vector<Poly>& basis, const std::vector<Elem>& coords);

/// Calls fn on every F_q-combination of the generators (coordinate 0 varies fastest,
/// coefficients in canonical order). Refuses when q^dim > limit or limit > 2^24.
void for_each_combination(const Field& F, const std::vector<Poly>& gens, std::uint64_t limit,
                          const std::function<void(const Poly&)>& fn);
std::vector<Poly> enumerate_w(const Field& F, const WBasis& B, std::uint64_t limit = std::uint64_t{1} << 24);

/// F_q-rank of a list of polynomials (as coefficient vectors).
std::size_t fq_rank(const Field& F, const std::vector<Poly>& polys);
/// Greedy F_q-independent sublist, in input order.
std::vector<Poly> fq_independent(const Field& F, const std::vector<Poly>& polys);

struct LiftResult {
  LiftWitness witness;
  WBasis basis;
  std::vector<Poly> generators;  // independent images M(F) of the basis
  std::size_t dim_lower = 0;
  std::size_t bound = 0;         // d 2^(n/d) - d + t
};

/// Maps the basis of W(x^(q^d) - alpha x) through M for the minimal binomial multiple of A.
LiftResult lift_pipeline(const Field& F, const AdditivePoly& A);

struct PowerImageReport {
  std::uint64_t scanned = 0;     // members of W(A) visited
  std::uint64_t distinct = 0;    // distinct F^v among them
  std::uint64_t verified = 0;    // F^v passing mills_check against T
  bool exhaustive = false;
  std::uint64_t bound = 0;       // (|W(A)| - 1)/v + 1 when it fits in 64 bits, else 0
};

/// Distinct F^v over W(A) = span(gens): all of it when q^dim <= limit and sample == 0,
/// else `sample` random distinct members (seeded).
PowerImageReport power_image_count(const Field& F, const Poly& T, std::uint64_t v, const std::vector<Poly>& gens,
                                   std::uint64_t limit, std::uint64_t sample = 0, std::uint64_t seed = 1);

struct PolyHash {
  std::size_t operator()(const Poly& f) const noexcept;
};

}  // namespace mvsp
