#include "mvsp/oracle.hpp"

#include <numeric>
#include <set>
#include <unordered_map>

#include "mvsp/fp_matrix.hpp"

namespace mvsp {

namespace {

std::uint64_t checked_guard(const OracleOptions& opt) { return std::min(opt.guard, kOracleHardGuard); }

// base^e, or nullopt once it passes `cap`.
std::optional<std::uint64_t> bounded_pow(std::uint64_t base, std::uint64_t e, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (r > cap / base) return std::nullopt;
    r *= base;
  }
  return r;
}

// Dense Lagrange basis 1 - (x - a)^(Q-1), one per field element a.
std::vector<std::vector<Elem>> lagrange_basis(const Field& F) {
  const std::uint64_t Q = F.order();
  std::vector<std::vector<Elem>> out;
  out.reserve(Q);
  for (std::uint64_t a = 0; a < Q; ++a) {
    const Poly lin(F, {{1, F.one()}, {0, F.neg(Elem{a})}});
    auto d = to_dense(sub(F, Poly::constant(F.one()), pow(F, lin, Q - 1)));
    d.resize(Q, Elem{0});
    out.push_back(std::move(d));
  }
  return out;
}

// The interpolant of the function whose value at a is S[digit a of idx in base |S|].
Poly function_interpolant(const Field& F, const std::vector<std::vector<Elem>>& basis, const std::vector<Elem>& S,
                          std::uint64_t idx, std::vector<Elem>& values) {
  const std::uint64_t Q = F.order();
  std::vector<Elem> coeffs(Q, Elem{0});
  for (std::uint64_t a = 0; a < Q; ++a) {
    values[a] = S[idx % S.size()];
    idx /= S.size();
    if (values[a].is_zero()) continue;
    for (std::uint64_t e = 0; e < Q; ++e)
      if (!basis[a][e].is_zero()) coeffs[e] = F.add(coeffs[e], F.mul(values[a], basis[a][e]));
  }
  return from_dense(coeffs);
}

Poly root_poly(const Field& F, const std::vector<Elem>& S) {
  Poly T = Poly::constant(F.one());
  for (Elem s : S) T = mul(F, T, Poly(F, {{1, F.one()}, {0, F.neg(s)}}));
  return T;
}

void merge_census(CensusReport& a, CensusReport&& b, std::size_t limit) {
  a.total += b.total;
  a.members += b.members;
  a.count += b.count;
  a.verified += b.verified;
  a.discrepancies += b.discrepancies;
  for (auto [d, c] : b.degree_histogram) a.degree_histogram[d] += c;
  for (auto& [k, c] : b.agreement) a.agreement[k] += c;
  for (auto& w : b.witnesses) {
    if (a.witnesses.size() < limit) a.witnesses.push_back(std::move(w));
    else a.witnesses_truncated = true;
  }
  a.witnesses_truncated = a.witnesses_truncated || b.witnesses_truncated;
}

void record_member(CensusReport& r, const Poly& f, bool verified, std::size_t limit) {
  ++r.members;
  if (verified) ++r.verified;
  if (!f.is_constant()) {
    ++r.count;
    ++r.degree_histogram[f.degree()];
  }
  if (r.witnesses.size() < limit) r.witnesses.push_back(f);
  else r.witnesses_truncated = true;
}

CensusReport scan_functions(const Field& F, const std::vector<Elem>& S, std::uint64_t total, const Poly& T,
                            const OracleOptions& opt) {
  const auto basis = lagrange_basis(F);
  auto chunk = [&](std::uint64_t b, std::uint64_t e) {
    CensusReport r;
    std::vector<Elem> values(F.order());
    for (std::uint64_t idx = b; idx < e; ++idx) {
      ++r.total;
      const Poly f = function_interpolant(F, basis, S, idx, values);
      if (mills_check(F, f, T).member) record_member(r, f, true, opt.witness_limit);
    }
    return r;
  };
  return parallel_reduce<CensusReport>(total, opt.jobs, chunk, [&](CensusReport& a, CensusReport&& b) {
    merge_census(a, std::move(b), opt.witness_limit);
  });
}

CensusReport scan_polynomials(const Field& F, int max_deg, std::uint64_t total, const Poly& T,
                              const OracleOptions& opt) {
  const std::uint64_t Q = F.order();
  auto chunk = [&](std::uint64_t b, std::uint64_t e) {
    CensusReport r;
    std::vector<Elem> coeffs(static_cast<std::size_t>(max_deg) + 1);
    for (std::uint64_t idx = b; idx < e; ++idx) {
      ++r.total;
      std::uint64_t rest = idx;
      for (auto& c : coeffs) {
        c = Elem{rest % Q};
        rest /= Q;
      }
      const Poly f = from_dense(coeffs);
      if (mills_check(F, f, T).member) record_member(r, f, true, opt.witness_limit);
    }
    return r;
  };
  return parallel_reduce<CensusReport>(total, opt.jobs, chunk, [&](CensusReport& a, CensusReport&& b) {
    merge_census(a, std::move(b), opt.witness_limit);
  });
}

}  // namespace

CensusReport census_subfield_valued(const Field& F, const OracleOptions& opt) {
  const std::uint64_t q = F.q(), Q = F.order();
  const auto total = bounded_pow(q, Q, checked_guard(opt));
  if (!total) throw GuardError("census_subfield_valued: q^Q functions exceed the scan guard");
  const auto S = F.subfield_elements(1);
  const Poly T = root_poly(F, S);
  const Poly xQ = field_poly(F);
  const auto basis = lagrange_basis(F);
  const std::uint64_t top = (Q - 1) / (q - 1);

  auto chunk = [&](std::uint64_t b, std::uint64_t e) {
    CensusReport r;
    std::vector<Elem> values(Q);
    for (std::uint64_t idx = b; idx < e; ++idx) {
      ++r.total;
      const Poly f = function_interpolant(F, basis, S, idx, values);
      if (f.is_constant()) {
        record_member(r, f, mills_check(F, f, T).member, opt.witness_limit);
        continue;
      }
      const auto deg = static_cast<std::uint64_t>(f.degree());
      const std::set<Elem> image(values.begin(), values.end());
      const bool c1 = image.size() == q && value_bound(F, f.degree()) == q;
      const bool c2 = sub(F, pow(F, f, q), f) == mul(F, xQ, derivative(F, f));
      const bool c3 = Q / q <= deg && deg <= top;
      const bool c4 = deg <= top;
      std::string key{c1 ? '1' : '0', c2 ? '1' : '0', c3 ? '1' : '0', c4 ? '1' : '0'};
      ++r.agreement[key];
      if (!(c1 == c2 && c2 == c3 && c3 == c4)) ++r.discrepancies;
      if (c2) record_member(r, f, mills_check(F, f, T).member, opt.witness_limit);
    }
    return r;
  };
  auto r = parallel_reduce<CensusReport>(*total, opt.jobs, chunk, [&](CensusReport& a, CensusReport&& b) {
    merge_census(a, std::move(b), opt.witness_limit);
  });
  r.field = F.spec();
  r.value_set = S;
  r.mode = "functions";
  return r;
}

CensusReport census_fixed_valueset(const Field& F, std::vector<Elem> S, int max_deg, const OracleOptions& opt) {
  std::sort(S.begin(), S.end());
  S.erase(std::unique(S.begin(), S.end()), S.end());
  for (Elem s : S)
    if (!F.is_valid(s)) throw InputError("census_fixed_valueset: value outside the field");
  if (max_deg < 0) throw InputError("census_fixed_valueset: max_deg must be >= 0");
  CensusReport r;
  const Poly T = root_poly(F, S);
  if (!is_mills_target(F, T)) {
    r.field = F.spec();
    r.value_set = S;
    r.reason = "prod (x - s) does not satisfy (*)";
    return r;
  }
  const std::uint64_t guard = checked_guard(opt);
  if (auto total = bounded_pow(S.size(), F.order(), guard)) {
    r = scan_functions(F, S, *total, T, opt);
    r.mode = "functions";
  } else if (auto total2 = bounded_pow(F.order(), static_cast<std::uint64_t>(max_deg) + 1, guard)) {
    r = scan_polynomials(F, max_deg, *total2, T, opt);
    r.mode = "polynomials";
  } else {
    throw GuardError("census_fixed_valueset: both function and polynomial scans exceed the guard");
  }
  r.field = F.spec();
  r.value_set = S;
  return r;
}

CensusReport census_target(const Field& F, const Poly& T, int max_deg, const OracleOptions& opt) {
  if (T.is_constant()) throw InputError("census_target: T must be nonconstant");
  const auto roots = roots_by_scan(F, T);
  if (T.leading() != F.one() || roots.size() != static_cast<std::uint64_t>(T.degree())) {
    CensusReport r;
    r.field = F.spec();
    r.value_set = roots;
    r.reason = "T does not split into distinct linear factors over the field";
    return r;
  }
  return census_fixed_valueset(F, roots, max_deg, opt);
}

LinearDim linear_dim_w(const Field& F, const AdditivePoly& A, std::size_t max_columns) {
  const Poly T = to_poly(F, A);
  if (!is_mills_target(F, T)) throw InputError("linear_dim_w: A does not satisfy (*)");
  const std::uint64_t q = F.q(), Q = F.order(), deg = poly_degree(F, A);
  std::uint64_t qt = 1;
  while (qt < deg) qt *= q;
  if (qt != deg) throw InputError("linear_dim_w: deg A is not a power of q");

  LinearDim out;
  out.D = (Q - 1) / (deg - 1);
  out.theta = F.neg(A.coeff(0));
  const unsigned N = F.degree();
  out.columns = static_cast<std::size_t>(out.D + 1) * N;
  if (out.columns > max_columns) throw GuardError("linear_dim_w: coefficient space exceeds the column guard");

  const Poly xQ = field_poly(F);
  std::vector<Poly> images;
  images.reserve(out.columns);
  for (std::uint64_t j = 0; j <= out.D; ++j)
    for (unsigned r = 0; r < N; ++r) {
      const Poly in = Poly::monomial(Elem{ipow(F.p(), r)}, j);
      images.push_back(sub(F, apply(F, A, in), scale(F, mul(F, xQ, derivative(F, in)), out.theta)));
    }

  // Degree blocks only interact through shared output exponents; eliminate per connected component.
  const std::size_t blocks = static_cast<std::size_t>(out.D + 1);
  std::vector<std::size_t> parent(blocks);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::unordered_map<std::uint64_t, std::size_t> owner;
  for (std::size_t c = 0; c < images.size(); ++c)
    for (const auto& [e, v] : images[c].terms()) {
      auto [it, fresh] = owner.emplace(e, c / N);
      if (!fresh) parent[find(c / N)] = find(it->second);
    }
  std::map<std::size_t, std::vector<std::size_t>> components;
  for (std::size_t c = 0; c < images.size(); ++c) components[find(c / N)].push_back(c);

  out.rank = 0;
  for (const auto& [root, cols] : components) {
    std::map<std::uint64_t, std::size_t> col;
    for (auto c : cols)
      for (const auto& [e, v] : images[c].terms()) col.emplace(e, 0);
    std::size_t next = 0;
    for (auto& [e, i] : col) i = next++;
    FpRowBasis rows(F.p(), col.size() * N);
    for (auto c : cols) {
      std::vector<std::uint64_t> row(col.size() * N, 0);
      for (const auto& [e, v] : images[c].terms()) {
        const auto d = F.digits(v);
        for (unsigned i = 0; i < N; ++i) row[col.at(e) * N + i] = d[i];
      }
      rows.insert(std::move(row));
    }
    out.rank += rows.rank();
  }
  const std::size_t nullity = out.columns - out.rank;
  if (nullity % F.k() != 0) throw InvariantError("linear_dim_w: F_p nullity not a multiple of k");
  out.dim = nullity / F.k();
  return out;
}

bool FormCheckReport::ok() const {
  for (const auto& r : rows)
    if (r.discrepancies != 0) return false;
  return true;
}

FormCheckReport verify_low_degree_forms(const Field& F, const OracleOptions& opt) {
  const std::uint64_t Q = F.order();
  if (Q != 4 && Q != 9 && Q != 16 && Q != 25) throw InputError("verify_low_degree_forms: Q must be 4, 9, 16 or 25");
  const int s = Q == 4 ? 2 : Q == 9 ? 3 : Q == 16 ? 4 : 5;
  const bool normalized = Q > 9;
  const std::uint64_t p = F.p();

  FormCheckReport rep;
  rep.field = F.spec();
  for (int d = 1; d <= s + 1; ++d) {
    // Free coefficient positions; the leading one ranges over nonzero elements unless normalized.
    std::vector<int> free;
    for (int i = 0; i < d; ++i) {
      if (normalized && i == 0) continue;
      if (normalized && i == d - 1 && d % p != 0) continue;
      free.push_back(i);
    }
    const std::uint64_t lead_choices = normalized ? 1 : Q - 1;
    const auto rest = bounded_pow(Q, free.size(), checked_guard(opt));
    if (!rest || *rest > checked_guard(opt) / lead_choices)
      throw GuardError("verify_low_degree_forms: candidate count exceeds the guard");
    const std::uint64_t total = lead_choices * *rest;
    const bool top = d == s + 1;

    struct Part {
      FormCheckRow row;
      std::vector<Poly> bad;
    };
    auto chunk = [&](std::uint64_t b, std::uint64_t e) {
      Part part;
      std::vector<Elem> coeffs(static_cast<std::size_t>(d) + 1, Elem{0});
      for (std::uint64_t idx = b; idx < e; ++idx) {
        std::uint64_t r = idx;
        coeffs[d] = normalized ? F.one() : Elem{1 + r % (Q - 1)};
        if (!normalized) r /= Q - 1;
        for (int i : free) {
          coeffs[i] = Elem{r % Q};
          r /= Q;
        }
        const Poly f = from_dense(coeffs);
        ++part.row.scanned;
        const auto m = is_minimal(F, f);
        const auto kind = classify_low_degree(F, f).kind;
        // The degree sqrt(Q)+1 statement only covers |V_F| > 2.
        const bool wide = !top || m.value_set.size() > 2;
        const bool is_m = m.is_mvsp && wide;
        const bool form = wide && (top ? kind == FormKind::kSqrtPlusOne : kind == FormKind::kAdditivePower);
        if (is_m) ++part.row.mvsp;
        if (form) ++part.row.of_form;
        if (is_m != form) {
          ++part.row.discrepancies;
          if (part.bad.size() < 8) part.bad.push_back(f);
        }
      }
      return part;
    };
    auto merged = parallel_reduce<Part>(total, opt.jobs, chunk, [](Part& a, Part&& b) {
      a.row.scanned += b.row.scanned;
      a.row.mvsp += b.row.mvsp;
      a.row.of_form += b.row.of_form;
      a.row.discrepancies += b.row.discrepancies;
      for (auto& f : b.bad)
        if (a.bad.size() < 8) a.bad.push_back(std::move(f));
    });
    merged.row.degree = d;
    merged.row.normalized = normalized;
    rep.rows.push_back(merged.row);
    for (auto& f : merged.bad)
      if (rep.discrepancies.size() < 8) rep.discrepancies.push_back(std::move(f));
  }
  return rep;
}

}  // namespace mvsp
