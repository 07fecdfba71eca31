#include "mvsp/poly.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace mvsp {

namespace {

constexpr std::uint64_t kDenseLimit = std::uint64_t{1} << 24;

std::vector<Poly::Term> merge_sorted(const Field& F, std::vector<Poly::Term> t) {
  std::sort(t.begin(), t.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Poly::Term> out;
  out.reserve(t.size());
  for (auto& [e, c] : t) {
    if (!out.empty() && out.back().first == e)
      out.back().second = F.add(out.back().second, c);
    else
      out.emplace_back(e, c);
  }
  std::erase_if(out, [](const auto& term) { return term.second.is_zero(); });
  return out;
}

void check_exponent(unsigned __int128 e) {
  if (e >= Poly::kMaxExponent) throw InputError("polynomial exponent exceeds 2^62");
}

using Dense = std::vector<Elem>;

void trim(Dense& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

// a mod b for dense b with nonzero leading coefficient.
Dense dense_rem(const Field& F, Dense a, const Dense& b, Dense* quot = nullptr) {
  trim(a);
  const std::size_t db = b.size() - 1;
  const Elem lead_inv = F.inv(b.back());
  if (quot) quot->assign(a.size() > db ? a.size() - db : 0, Elem{0});
  while (a.size() > db && !a.empty()) {
    const Elem c = F.mul(a.back(), lead_inv);
    const std::size_t shift = a.size() - 1 - db;
    if (quot) (*quot)[shift] = c;
    const Elem nc = F.neg(c);
    for (std::size_t i = 0; i < db; ++i)
      if (!b[i].is_zero()) a[shift + i] = F.add(a[shift + i], F.mul(nc, b[i]));
    a.pop_back();
    trim(a);
  }
  return a;
}

Dense dense_mulmod(const Field& F, const Dense& a, const Dense& b, const Dense& m) {
  if (a.empty() || b.empty()) return {};
  Dense r(a.size() + b.size() - 1, Elem{0});
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (!b[j].is_zero()) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  return dense_rem(F, std::move(r), m);
}

// x^e mod m.
Dense x_powmod(const Field& F, std::uint64_t e, const Dense& m) {
  Dense r{F.one()};
  r = dense_rem(F, r, m);
  Dense base{Elem{0}, F.one()};
  base = dense_rem(F, base, m);
  while (e) {
    if (e & 1) r = dense_mulmod(F, r, base, m);
    e >>= 1;
    if (e) base = dense_mulmod(F, base, base, m);
  }
  return r;
}

Poly pow_small(const Field& F, const Poly& g, std::uint64_t e) {
  Poly r = Poly::constant(F.one());
  Poly base = g;
  while (e) {
    if (e & 1) r = mul(F, r, base);
    e >>= 1;
    if (e) base = mul(F, base, base);
  }
  return r;
}

// Powers g^e assembled from Frobenius images g^(p^i) and small powers of them.
class PowerCache {
 public:
  PowerCache(const Field& F, const Poly& g) : F_(F), g_(g) {}

  Poly power(std::uint64_t e) {
    Poly r = Poly::constant(F_.one());
    unsigned i = 0;
    while (e) {
      const std::uint64_t d = e % F_.p();
      if (d) r = mul(F_, r, digit_power(i, d));
      e /= F_.p();
      ++i;
    }
    return r;
  }

 private:
  const Poly& digit_power(unsigned i, std::uint64_t d) {
    auto key = std::make_pair(i, d);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    Poly base = frobenius_map(F_, g_, i);
    return cache_.emplace(key, pow_small(F_, base, d)).first->second;
  }

  const Field& F_;
  const Poly& g_;
  std::map<std::pair<unsigned, std::uint64_t>, Poly> cache_;
};

}  // namespace

Poly::Poly(const Field& F, std::vector<Term> terms) : terms_(merge_sorted(F, std::move(terms))) {
  for (const auto& t : terms_) check_exponent(t.first);
}

Poly Poly::constant(Elem c) { return monomial(c, 0); }

Poly Poly::monomial(Elem c, std::uint64_t e) {
  check_exponent(e);
  if (c.is_zero()) return Poly{};
  return Poly(Sorted{}, {{e, c}});
}

Elem Poly::coeff(std::uint64_t e) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), e, [](const Term& t, std::uint64_t x) { return t.first < x; });
  return (it != terms_.end() && it->first == e) ? it->second : Elem{0};
}

Poly from_sorted_terms(std::vector<Poly::Term> terms) { return Poly(Poly::Sorted{}, std::move(terms)); }

Poly from_dense(const std::vector<Elem>& coeffs) {
  std::vector<Poly::Term> t;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (!coeffs[i].is_zero()) t.emplace_back(i, coeffs[i]);
  return from_sorted_terms(std::move(t));
}

std::vector<Elem> to_dense(const Poly& f) {
  if (f.is_zero()) return {};
  if (static_cast<std::uint64_t>(f.degree()) >= kDenseLimit) throw InputError("polynomial too large for a dense view");
  std::vector<Elem> d(static_cast<std::size_t>(f.degree()) + 1, Elem{0});
  for (const auto& [e, c] : f.terms()) d[e] = c;
  return d;
}

Poly add(const Field& F, const Poly& f, const Poly& g) {
  std::vector<Poly::Term> out;
  out.reserve(f.size() + g.size());
  auto a = f.terms().begin(), ae = f.terms().end();
  auto b = g.terms().begin(), be = g.terms().end();
  while (a != ae || b != be) {
    if (b == be || (a != ae && a->first < b->first)) {
      out.push_back(*a++);
    } else if (a == ae || b->first < a->first) {
      out.push_back(*b++);
    } else {
      const Elem s = F.add(a->second, b->second);
      if (!s.is_zero()) out.emplace_back(a->first, s);
      ++a;
      ++b;
    }
  }
  return from_sorted_terms(std::move(out));
}

Poly neg(const Field& F, const Poly& f) {
  std::vector<Poly::Term> out = f.terms();
  for (auto& t : out) t.second = F.neg(t.second);
  return from_sorted_terms(std::move(out));
}

Poly sub(const Field& F, const Poly& f, const Poly& g) { return add(F, f, neg(F, g)); }

Poly scale(const Field& F, const Poly& f, Elem c) {
  if (c.is_zero()) return {};
  std::vector<Poly::Term> out = f.terms();
  for (auto& t : out) t.second = F.mul(t.second, c);
  return from_sorted_terms(std::move(out));
}

Poly mul(const Field& F, const Poly& f, const Poly& g) {
  if (f.is_zero() || g.is_zero()) return {};
  const auto deg = static_cast<unsigned __int128>(f.degree()) + static_cast<std::uint64_t>(g.degree());
  check_exponent(deg);
  const std::uint64_t span = static_cast<std::uint64_t>(deg) + 1;
  const std::uint64_t work = static_cast<std::uint64_t>(f.size()) * g.size();
  if (span <= kDenseLimit && span <= 16 * work + 64) {
    std::vector<Elem> acc(span, Elem{0});
    for (const auto& [ea, ca] : f.terms())
      for (const auto& [eb, cb] : g.terms()) acc[ea + eb] = F.add(acc[ea + eb], F.mul(ca, cb));
    return from_dense(acc);
  }
  std::vector<Poly::Term> out;
  out.reserve(work);
  for (const auto& [ea, ca] : f.terms())
    for (const auto& [eb, cb] : g.terms()) out.emplace_back(ea + eb, F.mul(ca, cb));
  return from_sorted_terms(merge_sorted(F, std::move(out)));
}

Poly frobenius_map(const Field& F, const Poly& f, unsigned i) {
  if (i == 0) return f;
  const std::uint64_t pp = ipow(F.p(), i);
  std::vector<Poly::Term> out;
  out.reserve(f.size());
  for (const auto& [e, c] : f.terms()) {
    check_exponent(static_cast<unsigned __int128>(e) * pp);
    out.emplace_back(e * pp, F.pow(c, pp));
  }
  return from_sorted_terms(std::move(out));
}

Poly pow(const Field& F, const Poly& f, std::uint64_t e) {
  if (e == 0) return Poly::constant(F.one());
  if (f.is_zero()) return {};
  check_exponent(static_cast<unsigned __int128>(f.degree()) * e);
  PowerCache cache(F, f);
  return cache.power(e);
}

Poly compose(const Field& F, const Poly& f, const Poly& g) {
  if (f.is_zero()) return {};
  if (g.is_constant()) return Poly::constant(eval(F, f, g.coeff(0)));
  check_exponent(static_cast<unsigned __int128>(f.degree()) * static_cast<std::uint64_t>(g.degree()));
  PowerCache cache(F, g);
  Poly acc;
  for (const auto& [e, c] : f.terms()) acc = add(F, acc, scale(F, cache.power(e), c));
  return acc;
}

Poly derivative(const Field& F, const Poly& f) {
  std::vector<Poly::Term> out;
  for (const auto& [e, c] : f.terms()) {
    if (e == 0 || e % F.p() == 0) continue;
    out.emplace_back(e - 1, F.scale_int(c, e % F.p()));
  }
  return from_sorted_terms(std::move(out));
}

Poly monic(const Field& F, const Poly& f) {
  if (f.is_zero()) return f;
  return scale(F, f, F.inv(f.leading()));
}

Poly reduce_mod_field(const Field& F, const Poly& f, std::uint64_t Q) {
  if (Q < 2) throw InputError("field size must be at least 2");
  std::vector<Poly::Term> out;
  out.reserve(f.size());
  for (const auto& [e, c] : f.terms()) out.emplace_back(e == 0 ? 0 : ((e - 1) % (Q - 1)) + 1, c);
  return Poly(F, std::move(out));
}

std::pair<Poly, Poly> divmod(const Field& F, const Poly& a, const Poly& b) {
  if (b.is_zero()) throw InputError("division by the zero polynomial");
  if (a.degree() < b.degree()) return {Poly{}, a};
  Dense q;
  Dense r = dense_rem(F, to_dense(a), to_dense(b), &q);
  return {from_dense(q), from_dense(r)};
}

Poly rem(const Field& F, const Poly& a, const Poly& b) {
  if (b.is_zero()) throw InputError("division by the zero polynomial");
  if (a.degree() < b.degree()) return a;
  const auto db = static_cast<std::uint64_t>(b.degree());
  const auto da = static_cast<std::uint64_t>(a.degree());
  const Dense bd = to_dense(b);
  const std::uint64_t dense_cost = (da - db + 1) * b.size();
  const std::uint64_t sparse_cost = a.size() * (std::bit_width(da) + 1) * (db + 1) * (db + 1);
  if (dense_cost <= sparse_cost && da < kDenseLimit) return from_dense(dense_rem(F, to_dense(a), bd));
  // Reduce term by term with x^e mod b.
  Dense acc(db, Elem{0});
  for (const auto& [e, c] : a.terms()) {
    const Dense xe = x_powmod(F, e, bd);
    for (std::size_t i = 0; i < xe.size(); ++i) acc[i] = F.add(acc[i], F.mul(c, xe[i]));
  }
  return from_dense(acc);
}

Poly gcd(const Field& F, const Poly& f, const Poly& g) {
  if (f.is_zero() && g.is_zero()) throw InputError("gcd(0, 0) is undefined");
  Poly a = f, b = g;
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    Poly r = rem(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(F, a);
}

Poly field_poly(const Field& F) {
  return from_sorted_terms({{1, F.neg(F.one())}, {F.order(), F.one()}});
}

std::uint64_t distinct_root_count(const Field& F, const Poly& f) {
  return static_cast<std::uint64_t>(gcd(F, f, field_poly(F)).degree());
}

Elem eval(const Field& F, const Poly& f, Elem a) {
  Elem acc{0};
  for (const auto& [e, c] : f.terms()) acc = F.add(acc, F.mul(c, F.pow(a, e)));
  return acc;
}

std::vector<Elem> value_set(const Field& F, const Poly& f) {
  std::vector<bool> seen(F.order(), false);
  for (std::uint64_t v = 0; v < F.order(); ++v) seen[eval(F, f, Elem{v}).v] = true;
  std::vector<Elem> out;
  for (std::uint64_t v = 0; v < F.order(); ++v)
    if (seen[v]) out.emplace_back(v);
  return out;
}

std::vector<Elem> roots_by_scan(const Field& F, const Poly& f) {
  std::vector<Elem> out;
  for (std::uint64_t v = 0; v < F.order(); ++v)
    if (eval(F, f, Elem{v}).is_zero()) out.emplace_back(v);
  return out;
}

Poly interpolate(const Field& F, const std::vector<std::pair<Elem, Elem>>& points) {
  const std::size_t n = points.size();
  if (n == 0) return {};
  std::vector<Elem> xs(n), dd(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = points[i].first;
    dd[i] = points[i].second;
  }
  {
    auto sorted = xs;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw InputError("interpolate: repeated abscissa");
  }
  // Newton divided differences.
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) {
      dd[i] = F.div(F.sub(dd[i], dd[i - 1]), F.sub(xs[i], xs[i - j]));
      if (i == j) break;
    }
  // Horner expansion in the Newton basis.
  Dense acc{dd[n - 1]};
  for (std::size_t i = n - 1; i-- > 0;) {
    Dense next(acc.size() + 1, Elem{0});
    const Elem nx = F.neg(xs[i]);
    for (std::size_t t = 0; t < acc.size(); ++t) {
      next[t + 1] = F.add(next[t + 1], acc[t]);
      next[t] = F.add(next[t], F.mul(acc[t], nx));
    }
    next[0] = F.add(next[0], dd[i]);
    acc = std::move(next);
  }
  return from_dense(acc);
}

}  // namespace mvsp
