#include "mvsp/wspace.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "mvsp/fp_matrix.hpp"

namespace mvsp {

namespace {

constexpr unsigned kMaxNecklaceLength = 24;
constexpr std::uint64_t kEnumerationCap = std::uint64_t{1} << 24;

std::uint64_t rotate(std::uint64_t mask, unsigned n) {
  const std::uint64_t full = (n >= 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  return ((mask << 1) | (mask >> (n - 1))) & full;
}

// sum a_i Q^i over the bits of mask.
std::uint64_t mask_exponent(std::uint64_t mask, unsigned n, std::uint64_t Q) {
  std::uint64_t e = 0, qi = 1;
  for (unsigned i = 0; i < n; ++i) {
    if (mask >> i & 1) e += qi;
    if (i + 1 < n) qi *= Q;
  }
  return e;
}

// q^e if it stays below 2^62.
std::optional<std::uint64_t> checked_pow(std::uint64_t q, std::uint64_t e) {
  unsigned __int128 r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    r *= q;
    if (r >= Poly::kMaxExponent) return std::nullopt;
  }
  return static_cast<std::uint64_t>(r);
}

// Columns (exponent, F_p coordinate) for the polynomials.
std::unordered_map<std::uint64_t, std::size_t> exponent_columns(const std::vector<Poly>& polys) {
  std::set<std::uint64_t> exps;
  for (const auto& f : polys)
    for (const auto& [e, c] : f.terms()) exps.insert(e);
  std::unordered_map<std::uint64_t, std::size_t> col;
  for (auto e : exps) col.emplace(e, col.size());
  return col;
}

std::vector<std::uint64_t> flatten(const Field& F, const Poly& f,
                                   const std::unordered_map<std::uint64_t, std::size_t>& col) {
  const unsigned N = F.degree();
  std::vector<std::uint64_t> row(col.size() * N, 0);
  for (const auto& [e, c] : f.terms()) {
    const auto d = F.digits(c);
    const std::size_t base = col.at(e) * N;
    for (unsigned i = 0; i < N; ++i) row[base + i] = d[i];
  }
  return row;
}

}  // namespace

std::size_t PolyHash::operator()(const Poly& f) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ull;
  for (const auto& [e, c] : f.terms()) {
    h ^= std::hash<std::uint64_t>{}(e) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h ^= std::hash<std::uint64_t>{}(c.v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

std::pair<std::uint64_t, unsigned> least_rotation(std::uint64_t mask, unsigned n) {
  std::uint64_t best = mask, cur = mask;
  unsigned back = 0;
  for (unsigned s = 1; s < n; ++s) {
    cur = rotate(cur, n);
    if (cur < best) {
      best = cur;
      back = s;
    }
  }
  // mask = rot^(n - back)(best).
  return {best, back == 0 ? 0 : n - back};
}

OrbitTable orbit_table(std::uint64_t q, unsigned n) {
  if (n == 0) throw InputError("orbit_table: n must be positive");
  if (q < 2) throw InputError("orbit_table: q must be at least 2");
  if (n > kMaxNecklaceLength) throw GuardError("orbit_table: 2^n necklace scan refused for n > 24");
  OrbitTable t;
  t.q = q;
  t.n = n;
  const bool exps = checked_pow(q, n).has_value();
  for (auto d : divisors(n)) t.counts[static_cast<unsigned>(d)] = 0;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t m = 0; m < total; ++m) {
    if (least_rotation(m, n).first != m) continue;
    unsigned size = 1;
    for (std::uint64_t r = rotate(m, n); r != m; r = rotate(r, n)) ++size;
    t.orbits.push_back({m, exps ? mask_exponent(m, n, q) : 0, size});
    ++t.counts[size];
  }
  // Bit masks and exponents order the same way, so the list is sorted by exponent.
  return t;
}

std::string orbit_table_csv(const OrbitTable& t) {
  std::string out = "n,bits,exponent,size\n";
  for (const auto& o : t.orbits) {
    std::string bits;
    for (unsigned i = 0; i < t.n; ++i) bits += (o.mask >> i & 1) ? '1' : '0';
    out += std::to_string(t.n) + "," + bits + "," + std::to_string(o.exponent) + "," + std::to_string(o.size) + "\n";
  }
  return out;
}

Poly binomial_poly(const Field& F, unsigned d, Elem alpha) {
  const std::uint64_t Qd = ipow(F.q(), d);
  return Poly(F, {{Qd, F.one()}, {1, F.neg(alpha)}});
}

WBasis build_basis(const Field& F, unsigned d, Elem alpha) {
  if (d == 0 || F.n() % d != 0) throw InputError("build_basis: d must divide n");
  if (alpha.is_zero() || !F.is_valid(alpha)) throw InputError("build_basis: alpha must be a nonzero field element");
  WBasis B;
  B.d = d;
  B.alpha = alpha;
  B.Qd = ipow(F.q(), d);
  B.n_rel = F.n() / d;
  const auto beta = F.solve_power(alpha, B.Qd - 1);
  if (!beta) throw InputError("build_basis: alpha is not a (q^d - 1)-th power, so x^(q^d) - alpha x does not split");
  B.beta = *beta;
  B.table = orbit_table(B.Qd, B.n_rel);
  for (std::size_t i = 0; i < B.table.orbits.size(); ++i) {
    const auto& o = B.table.orbits[i];
    for (Elem b : F.subfield_basis(d * o.size)) {
      std::vector<Poly::Term> terms;
      std::uint64_t mask = o.mask;
      for (unsigned l = 0; l < o.size; ++l) {
        terms.emplace_back(mask_exponent(mask, B.n_rel, B.Qd),
                           F.mul(B.beta, F.frobenius(b, static_cast<std::int64_t>(d) * l)));
        mask = rotate(mask, B.n_rel);
      }
      B.elems.push_back(Poly(F, std::move(terms)));
      B.orbit_of.push_back(i);
      B.coeff_of.push_back(b);
    }
  }
  B.dim = B.elems.size();
  return B;
}

std::optional<std::vector<Elem>> membership_coordinates(const Field& F, const Poly& f, const WBasis& B) {
  const Poly g = scale(F, reduce_mod_field(F, f), F.inv(B.beta));
  std::unordered_map<std::uint64_t, Elem> by_mask;
  for (const auto& [e, c] : g.terms()) {
    std::uint64_t mask = 0, rest = e;
    for (unsigned i = 0; i < B.n_rel; ++i) {
      const std::uint64_t digit = rest % B.Qd;
      if (digit > 1) return std::nullopt;
      mask |= digit << i;
      rest /= B.Qd;
    }
    if (rest != 0) return std::nullopt;
    by_mask[mask] = c;
  }
  auto coeff = [&](std::uint64_t m) {
    auto it = by_mask.find(m);
    return it == by_mask.end() ? F.zero() : it->second;
  };
  std::vector<Elem> coords(B.dim, F.zero());
  std::size_t next = 0;
  for (std::size_t i = 0; i < B.table.orbits.size(); ++i) {
    const auto& o = B.table.orbits[i];
    const Elem a = coeff(o.mask);
    std::uint64_t mask = o.mask;
    for (unsigned l = 0; l < o.size; ++l) {
      if (coeff(mask) != F.frobenius(a, static_cast<std::int64_t>(B.d) * l)) return std::nullopt;
      mask = rotate(mask, B.n_rel);
    }
    if (!F.in_subfield(a, B.d * o.size)) return std::nullopt;
    std::vector<Elem> basis;
    const std::size_t start = next;
    while (next < B.dim && B.orbit_of[next] == i) basis.push_back(B.coeff_of[next++]);
    const auto c = F.fq_coordinates(basis, a);
    if (!c) throw InvariantError("membership_coordinates: subfield element outside the span of its basis");
    std::copy(c->begin(), c->end(), coords.begin() + static_cast<std::ptrdiff_t>(start));
  }
  return coords;
}

Poly combine(const Field& F, const std::vector<Poly>& basis, const std::vector<Elem>& coords) {
  if (basis.size() != coords.size()) throw InputError("combine: coordinate count mismatch");
  Poly acc;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (!coords[i].is_zero()) acc = add(F, acc, scale(F, basis[i], coords[i]));
  return acc;
}

void for_each_combination(const Field& F, const std::vector<Poly>& gens, std::uint64_t limit,
                          const std::function<void(const Poly&)>& fn) {
  if (limit > kEnumerationCap) throw GuardError("enumeration limit above the 2^24 hard maximum");
  const auto total = checked_pow(F.q(), gens.size());
  if (!total || *total > limit)
    throw GuardError("enumeration of q^" + std::to_string(gens.size()) + " elements exceeds the limit " +
                     std::to_string(limit));
  const auto E = F.subfield_elements(1);
  std::vector<std::size_t> idx(gens.size(), 0);
  Poly cur;
  fn(cur);
  for (std::uint64_t step = 1; step < *total; ++step) {
    std::size_t i = 0;
    while (idx[i] + 1 == E.size()) {
      cur = sub(F, cur, scale(F, gens[i], E.back()));
      idx[i++] = 0;
    }
    cur = add(F, cur, scale(F, gens[i], F.sub(E[idx[i] + 1], E[idx[i]])));
    ++idx[i];
    fn(cur);
  }
}

std::vector<Poly> enumerate_w(const Field& F, const WBasis& B, std::uint64_t limit) {
  std::vector<Poly> out;
  for_each_combination(F, B.elems, limit, [&](const Poly& f) { out.push_back(f); });
  return out;
}

std::vector<Poly> fq_independent(const Field& F, const std::vector<Poly>& polys) {
  const auto col = exponent_columns(polys);
  FpRowBasis rb(F.p(), col.size() * F.degree());
  std::vector<Poly> kept;
  for (const auto& f : polys) {
    if (f.is_zero()) continue;
    unsigned added = 0;
    for (Elem w : F.fq_prime_basis()) added += rb.insert(flatten(F, scale(F, f, w), col)) ? 1 : 0;
    if (added == F.k()) kept.push_back(f);
    else if (added != 0) throw InvariantError("fq_independent: F_q-span grew by a partial line");
  }
  return kept;
}

std::size_t fq_rank(const Field& F, const std::vector<Poly>& polys) { return fq_independent(F, polys).size(); }

LiftResult lift_pipeline(const Field& F, const AdditivePoly& A0) {
  const AdditivePoly A = at_base(F, A0);
  if (!satisfies_star(F, A)) throw InputError("lift_pipeline: A must be monic, separable, split and of degree > 2");
  const auto [d, alpha] = minimal_binomial_multiple(F, A);
  LiftResult out;
  out.witness = factor_binomial_lift(F, A, d, alpha);
  out.basis = build_basis(F, d, alpha);
  std::vector<Poly> images;
  images.reserve(out.basis.dim);
  for (const auto& b : out.basis.elems) images.push_back(reduce_mod_field(F, apply(F, out.witness.M, b)));
  out.generators = fq_independent(F, images);
  out.dim_lower = out.generators.size();
  out.bound = d * (std::size_t{1} << (F.n() / d)) - d + out.witness.t;
  if (out.dim_lower != out.bound)
    throw InvariantError("lift_pipeline: rank " + std::to_string(out.dim_lower) + " differs from d 2^(n/d) - d + t = " +
                         std::to_string(out.bound));
  const Poly Ap = to_poly(F, A);
  for (const auto& g : out.generators)
    if (!mills_check(F, g, Ap).member) throw InvariantError("lift_pipeline: generator fails mills_check against A");
  return out;
}

PowerImageReport power_image_count(const Field& F, const Poly& T, std::uint64_t v, const std::vector<Poly>& gens,
                                   std::uint64_t limit, std::uint64_t sample, std::uint64_t seed) {
  if (v == 0) throw InputError("power_image_count: v must be positive");
  PowerImageReport rep;
  const auto total = checked_pow(F.q(), gens.size());
  if (total) rep.bound = (*total - 1) / v + 1;
  std::unordered_set<Poly, PolyHash> images;
  auto visit = [&](const Poly& f) {
    ++rep.scanned;
    Poly g = pow(F, f, v);
    if (images.insert(g).second && mills_check(F, g, T).member) ++rep.verified;
  };
  if (sample == 0) {
    rep.exhaustive = true;
    for_each_combination(F, gens, limit, visit);
  } else {
    const auto E = F.subfield_elements(1);
    const std::uint64_t want = total ? std::min(sample, *total) : sample;
    std::mt19937_64 rng(seed);
    std::set<std::vector<std::size_t>> seen;
    std::uniform_int_distribution<std::size_t> pick(0, E.size() - 1);
    while (seen.size() < want) {
      std::vector<std::size_t> idx(gens.size());
      for (auto& i : idx) i = pick(rng);
      if (!seen.insert(idx).second) continue;
      std::vector<Elem> coords;
      for (auto i : idx) coords.push_back(E[i]);
      visit(combine(F, gens, coords));
    }
  }
  rep.distinct = images.size();
  return rep;
}

}  // namespace mvsp
