#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "mvsp/wspace.hpp"

namespace mvsp {

/// Hard ceiling on any exhaustive scan.
inline constexpr std::uint64_t kOracleHardGuard = std::uint64_t{1} << 24;

struct OracleOptions {
  std::uint64_t guard = std::uint64_t{1} << 20;  // candidates scanned; capped at kOracleHardGuard
  unsigned jobs = 1;
  std::size_t witness_limit = 4096;
};

struct CensusReport {
  std::string field;
  std::vector<Elem> value_set;                       // S, sorted
  std::string mode;                                  // "functions" or "polynomials"
  std::uint64_t total = 0;                           // candidates scanned
  std::uint64_t members = 0;                         // members of W, constants included
  std::uint64_t count = 0;                           // nonconstant m.v.s.p.'s among them
  std::uint64_t verified = 0;                        // members re-checked by mills_check
  std::map<std::int64_t, std::uint64_t> degree_histogram;  // nonconstant members
  std::vector<Poly> witnesses;                       // members, in scan order, up to the limit
  bool witnesses_truncated = false;
  /// The four interpolation conditions (1)..(4) as a bit string per nonconstant function, with counts.
  std::map<std::string, std::uint64_t> agreement;
  std::uint64_t discrepancies = 0;
  std::string reason;                                // set when the precondition fails
};

/// Every function F_Q -> F_q, interpolated and classified by the four interpolation conditions.
CensusReport census_subfield_valued(const Field& F, const OracleOptions& opt = {});

/// Members of W(prod (x - s)) by function scan (|S|^Q within the guard) or by a scan of
/// all polynomials of degree <= max_deg.
CensusReport census_fixed_valueset(const Field& F, std::vector<Elem> S, int max_deg, const OracleOptions& opt = {});
/// As above with S the roots of T; reports the failed precondition when T is not a target.
CensusReport census_target(const Field& F, const Poly& T, int max_deg, const OracleOptions& opt = {});

struct LinearDim {
  std::size_t dim = 0;      // dim over F_q of W(A)
  std::uint64_t D = 0;      // degree cutoff
  std::size_t columns = 0;  // F_p unknowns
  std::size_t rank = 0;     // F_p rank of the operator
  Elem theta;
};

/// Kernel of F -> A(F) - theta (x^Q - x) F' on polynomials of degree <= D, theta = -A'.
LinearDim linear_dim_w(const Field& F, const AdditivePoly& A, std::size_t max_columns = 4096);

struct FormCheckRow {
  int degree = 0;
  bool normalized = false;   // monic, F(0) = 0 and, when p does not divide the degree, no x^(deg-1) term
  std::uint64_t scanned = 0;
  std::uint64_t mvsp = 0;
  std::uint64_t of_form = 0;
  std::uint64_t discrepancies = 0;
};

struct FormCheckReport {
  std::string field;
  std::vector<FormCheckRow> rows;
  std::vector<Poly> discrepancies;  // first few
  bool ok() const;
};

/// The degree <= sqrt(Q) and degree sqrt(Q)+1 characterizations against a value-set scan.
/// Q in {4, 9} is scanned in full, Q in {16, 25} up to affine normalization.
FormCheckReport verify_low_degree_forms(const Field& F, const OracleOptions& opt = {});

/// Splits [0, n) into contiguous chunks, runs fn(begin, end) -> R on up to `jobs` threads
/// and folds the results in chunk order, so the outcome does not depend on `jobs`.
template <class R, class Fn, class Merge>
R parallel_reduce(std::uint64_t n, unsigned jobs, Fn fn, Merge merge) {
  const std::uint64_t chunks = std::max<std::uint64_t>(1, std::min<std::uint64_t>(n, 64));
  std::vector<R> parts(chunks);
  auto run = [&](unsigned w, unsigned workers) {
    for (std::uint64_t c = w; c < chunks; c += workers) parts[c] = fn(n * c / chunks, n * (c + 1) / chunks);
  };
  const unsigned workers = static_cast<unsigned>(std::clamp<std::uint64_t>(jobs, 1, chunks));
  if (workers == 1) {
    run(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w, workers);
    for (auto& t : pool) t.join();
  }
  R out = std::move(parts[0]);
  for (std::uint64_t c = 1; c < chunks; ++c) merge(out, std::move(parts[c]));
  return out;
}

}  // namespace mvsp
