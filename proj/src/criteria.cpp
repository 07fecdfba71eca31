#include "mvsp/criteria.hpp"

#include <algorithm>
#include <set>

namespace mvsp {

namespace {

constexpr std::uint64_t kScanLimit = std::uint64_t{1} << 24;

Poly x_pow(std::uint64_t e) { return Poly::monomial(Elem{1}, e); }

// All F_q-combinations of an F_q-basis, sorted.
std::vector<Elem> fq_span(const Field& F, const std::vector<Elem>& basis) {
  std::vector<Elem> out{F.zero()};
  const auto fq = F.subfield_elements(1);
  for (Elem b : basis) {
    std::vector<Elem> next;
    next.reserve(out.size() * fq.size());
    for (Elem c : fq) {
      const Elem cb = F.mul(c, b);
      for (Elem x : out) next.push_back(F.add(x, cb));
    }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::uint64_t value_bound(const Field& F, std::int64_t deg) {
  if (deg <= 0) throw InputError("value bound needs a positive degree");
  return (F.order() - 1) / static_cast<std::uint64_t>(deg) + 1;
}

bool satisfies_star(const Field& F, const Poly& T) {
  if (T.degree() <= 2 || T.leading() != F.one()) return false;
  return distinct_root_count(F, T) == static_cast<std::uint64_t>(T.degree());
}

bool is_mills_target(const Field& F, const Poly& T) {
  if (satisfies_star(F, T)) return true;
  // x^2 - a x in characteristic 2: the q = 2 binomials, twisted when a != 1.
  return F.p() == 2 && T.degree() == 2 && T.leading() == F.one() && T.size() == 2 && !T.coeff(1).is_zero();
}

std::vector<Elem> split_roots(const Field& F, const Poly& T) {
  if (T.is_zero()) throw InputError("roots of the zero polynomial");
  if (auto A = detect_additive(F, T); A && A->level() % F.k() == 0 && A->is_separable()) {
    const auto K = kernel(F, *A);
    if (poly_degree(F, *A) == ipow(F.q(), K.t)) return fq_span(F, K.basis);
  }
  if (F.order() > kScanLimit) throw GuardError("root scan refused above 2^24 field elements");
  return roots_by_scan(F, T);
}

MvspReport is_minimal(const Field& F, const Poly& f) {
  if (f.is_constant()) throw InputError("is_minimal: F must be nonconstant");
  if (F.order() > kScanLimit) throw GuardError("value set scan refused above 2^24 field elements");
  MvspReport r;
  r.deg = f.degree();
  r.bound = value_bound(F, r.deg);
  r.value_set = value_set(F, f);
  r.is_mvsp = r.value_set.size() == r.bound;
  if (!r.is_mvsp) r.reason = "value set has " + std::to_string(r.value_set.size()) + " elements, bound is " +
                             std::to_string(r.bound);
  return r;
}

bool mills_identity(const Field& F, const Poly& f, const Poly& T, Elem theta) {
  const Poly lhs = compose(F, T, f);
  const Poly rhs = scale(F, mul(F, field_poly(F), derivative(F, f)), theta);
  return lhs == rhs;
}

MvspReport mills_check(const Field& F, const Poly& f, const Poly& T) {
  if (!is_mills_target(F, T)) {
    if (T.degree() >= 1 && distinct_root_count(F, T) < static_cast<std::uint64_t>(T.degree()))
      throw InputError("T does not split into distinct linear factors over the field");
    throw InputError("T must be monic, separable, split and of degree > 2 (or x^2 - x over characteristic 2)");
  }
  MvspReport r;
  const Poly dT = derivative(F, T);
  std::set<Elem> cand;
  if (dT.is_constant()) {
    cand.insert(F.neg(dT.coeff(0)));
  } else {
    for (Elem g : split_roots(F, T)) cand.insert(F.neg(eval(F, dT, g)));
  }
  r.theta_candidates.assign(cand.begin(), cand.end());

  if (f.is_constant()) {
    r.deg = f.is_zero() ? Poly::kDegZero : 0;
    const Elem c = f.coeff(0);
    r.value_set = {c};
    r.member = eval(F, T, c).is_zero();
    if (!r.member) r.reason = "constant is not a root of T";
    return r;
  }

  r.deg = f.degree();
  r.bound = value_bound(F, r.deg);
  if (F.order() <= kScanLimit) {
    r.value_set = value_set(F, f);
    r.is_mvsp = r.value_set.size() == r.bound;
  }

  // Degrees must match: deg T * deg F = Q + deg F'.
  const Poly df = derivative(F, f);
  const auto degT = static_cast<unsigned __int128>(T.degree());
  if (df.is_zero() ||
      degT * static_cast<std::uint64_t>(r.deg) != static_cast<unsigned __int128>(F.order()) + df.degree()) {
    r.reason = df.is_zero() ? "F' = 0" : "degree mismatch in T(F) = theta (x^Q - x) F'";
    if (!r.value_set.empty()) {
      const auto roots = split_roots(F, T);
      if (r.value_set != roots) r.reason = "value set mismatch";
    }
    return r;
  }
  const Poly lhs = compose(F, T, f);
  const Poly base = mul(F, field_poly(F), df);
  for (Elem theta : r.theta_candidates) {
    if (theta.is_zero()) continue;
    if (lhs == scale(F, base, theta)) {
      r.theta = theta;
      r.member = true;
      break;
    }
  }
  if (!r.member) {
    r.reason = "no theta satisfies T(F) = theta (x^Q - x) F'";
    if (!r.value_set.empty() && r.value_set != split_roots(F, T)) r.reason = "value set mismatch";
  } else if (!r.value_set.empty() && !r.is_mvsp) {
    throw InvariantError("mills identity holds but F is not minimal");
  }
  return r;
}

std::vector<ReductionWitness> find_additive_reduction(const Field& F, const Poly& T) {
  if (!is_mills_target(F, T)) throw InputError("find_additive_reduction: T must satisfy (*)");
  const auto D = static_cast<std::uint64_t>(T.degree());
  const auto roots = split_roots(F, T);
  std::vector<ReductionWitness> out;
  for (unsigned lvl = 1; lvl <= F.degree(); ++lvl) {
    const std::uint64_t P = ipow(F.p(), lvl);
    // Degrees force v (D - 1) + 1 = P^m, and v <= P - 1 bounds m.
    const unsigned __int128 cap = static_cast<unsigned __int128>(D - 1) * (P - 1) + 1;
    for (unsigned __int128 Pm = P; Pm <= cap; Pm *= P) {
      if ((Pm - 1) % (D - 1) != 0) continue;
      const auto v = static_cast<std::uint64_t>((Pm - 1) / (D - 1));
      if ((P - 1) % v != 0) continue;
      for (Elem g : roots) {
        const Poly shifted = compose(F, T, add(F, x_pow(v), Poly::constant(g)));
        if (shifted.is_zero() || shifted.terms().front().first < v - 1) continue;
        std::vector<Poly::Term> q;
        for (const auto& [e, c] : shifted.terms()) q.emplace_back(e - (v - 1), c);
        auto A = as_additive(F, from_sorted_terms(std::move(q)), lvl);
        if (A) out.push_back({v, lvl, g, std::move(*A)});
      }
    }
  }
  return out;
}

Poly power_lift(const Field& F, const Poly& f, std::uint64_t v, const Poly& T) {
  if (v == 0) throw InputError("power_lift: v must be positive");
  if (!T.coeff(0).is_zero()) throw InputError("power_lift: x must divide T");
  const Poly Tv = compose(F, T, x_pow(v));
  if (Tv.is_zero() || Tv.terms().front().first < v - 1) throw InvariantError("power_lift: x^(v-1) does not divide T(x^v)");
  std::vector<Poly::Term> q;
  for (const auto& [e, c] : Tv.terms()) q.emplace_back(e - (v - 1), c);
  const Poly Apoly = from_sorted_terms(std::move(q));
  auto A = detect_additive(F, Apoly);
  if (!A) throw InputError("power_lift: T(x^v)/x^(v-1) is not additive");
  if (!is_mills_target(F, Apoly))
    throw InputError("power_lift: T(x^v)/x^(v-1) does not satisfy (*)");
  if ((ipow(F.p(), A->level()) - 1) % v != 0)
    throw InputError("power_lift: v must divide p^k - 1 for the additive level k");
  const auto rep = mills_check(F, f, Apoly);
  if (!rep.member) throw InputError("power_lift: F is not in W(A): " + rep.reason);
  const Poly g = pow(F, f, v);
  // theta = -A'/v; A' is the x coefficient.
  const Elem theta = F.neg(F.div(A->coeff(0), F.from_int(static_cast<std::int64_t>(v % F.p()))));
  if (g.is_constant()) {
    if (!eval(F, T, g.coeff(0)).is_zero()) throw InvariantError("power_lift: constant image is not a root of T");
  } else if (!mills_identity(F, g, T, theta)) {
    throw InvariantError("power_lift: F^v fails the identity with theta = -A'/v");
  }
  return g;
}

namespace {

// Monic v-th root R of a monic h up to the constant term (R^v - h is constant),
// by matching coefficients from the top; nullopt if none.
std::optional<Poly> monic_root(const Field& F, const Poly& h, std::uint64_t v) {
  const auto D = static_cast<std::uint64_t>(h.degree());
  if (D % v != 0) return std::nullopt;
  const std::uint64_t r = D / v;
  const Elem v_inv = F.inv(F.from_int(static_cast<std::int64_t>(v % F.p())));
  std::vector<Elem> root(r + 1, F.zero());
  root[r] = F.one();
  for (std::uint64_t i = 1; i <= r; ++i) {
    const Poly cur = pow(F, from_dense(root), v);
    const std::uint64_t e = D - i;
    root[r - i] = F.mul(F.sub(h.coeff(e), cur.coeff(e)), v_inv);
  }
  Poly R = from_dense(root);
  const Poly diff = sub(F, pow(F, R, v), h);
  if (!diff.is_constant()) return std::nullopt;
  return R;
}

}  // namespace

Classification classify_low_degree(const Field& F, const Poly& f) {
  if (f.is_constant()) throw InputError("classify_low_degree: F must be nonconstant");
  const std::uint64_t Q = F.order();
  std::uint64_t s = 0;
  while ((s + 1) * (s + 1) <= Q) ++s;
  const bool square = s * s == Q;
  const auto deg = static_cast<std::uint64_t>(f.degree());
  if (deg > s + (square ? 1 : 0)) throw InputError("classify_low_degree: degree exceeds sqrt(Q) (+1 for square Q)");
  return extract_normal_form(F, f);
}

Classification extract_normal_form(const Field& F, const Poly& f) {
  if (f.is_constant()) throw InputError("extract_normal_form: F must be nonconstant");
  const std::uint64_t Q = F.order();
  std::uint64_t s = 0;
  while ((s + 1) * (s + 1) <= Q) ++s;
  const bool square = s * s == Q;
  const auto deg = static_cast<std::uint64_t>(f.degree());

  Classification out;
  if (square && deg == s + 1) {
    const Elem alpha = f.leading();
    const Elem beta = F.div(f.coeff(s), alpha);
    const Poly base = scale(F, pow(F, add(F, Poly::x(), Poly::constant(beta)), s + 1), alpha);
    const Elem gamma = F.sub(f.coeff(0), base.coeff(0));
    if (add(F, base, Poly::constant(gamma)) == f) {
      out.kind = FormKind::kSqrtPlusOne;
      out.alpha = alpha;
      out.beta = beta;
      out.gamma = gamma;
      out.v = s + 1;
      out.L = add(F, Poly::x(), Poly::constant(beta));
    }
    return out;
  }

  // With v = 1 the fibres of an additive L are cosets, so gamma = F(0) is as good as any
  // value. With v > 1 the root does not see the constant term and gamma is forced.
  const Elem alpha = f.leading();
  const Poly h = scale(F, f, F.inv(alpha));
  for (auto lvl64 : divisors(F.degree())) {
    const auto lvl = static_cast<unsigned>(lvl64);
    for (auto v : divisors(ipow(F.p(), lvl) - 1)) {
      if (deg % v != 0) continue;
      std::optional<Poly> R;
      if (v == 1)
        R = sub(F, h, Poly::constant(h.coeff(0)));
      else
        R = monic_root(F, h, v);
      if (!R) continue;
      const Elem beta = R->coeff(0);
      if (!as_additive(F, sub(F, *R, Poly::constant(beta)), lvl)) continue;
      if (distinct_root_count(F, *R) != static_cast<std::uint64_t>(R->degree())) continue;
      out.kind = FormKind::kAdditivePower;
      out.alpha = alpha;
      out.beta = beta;
      out.gamma = F.sub(f.coeff(0), F.mul(alpha, F.pow(beta, v)));
      out.v = v;
      out.level = lvl;
      out.L = std::move(*R);
      return out;
    }
  }
  return out;
}

std::optional<std::pair<Elem, Elem>> affine_equivalent(const Field& F, const Poly& f, const Poly& g) {
  if (f.degree() != g.degree()) return std::nullopt;
  if (f.is_constant()) return f == g ? std::optional{std::pair{F.one(), F.zero()}} : std::nullopt;
  const auto d = static_cast<std::uint64_t>(f.degree());
  // Leading coefficients force a^d = lead(G)/lead(F).
  const Elem ratio = F.div(g.leading(), f.leading());
  for (std::uint64_t av = 1; av < F.order(); ++av) {
    const Elem a{av};
    if (F.pow(a, d) != ratio) continue;
    for (std::uint64_t bv = 0; bv < F.order(); ++bv) {
      const Elem b{bv};
      const Poly lin = add(F, Poly::monomial(a, 1), Poly::constant(b));
      if (compose(F, f, lin) == g) return std::pair{a, b};
    }
  }
  return std::nullopt;
}

MillsProfile mills_profile(const Field& F, const Poly& f, const Poly& T) {
  const auto rep = mills_check(F, f, T);
  if (!rep.member || f.is_constant()) throw InputError("mills_profile: F must be a nonconstant member of W(T)");
  const auto roots = split_roots(F, T);
  if (roots.size() <= 2) throw InputError("mills_profile: T needs more than two roots");
  MillsProfile out;
  const Poly fq = field_poly(F);
  for (Elem g : roots) {
    ValueProfile vp;
    vp.gamma = g;
    const Poly G = sub(F, f, Poly::constant(g));
    const Poly Lg = gcd(F, G, fq);
    vp.distinct_roots = static_cast<std::uint64_t>(Lg.degree());
    Poly rest = G;
    for (Elem r : roots_by_scan(F, Lg)) {
      const Poly lin = sub(F, Poly::x(), Poly::constant(r));
      std::uint64_t m = 0;
      while (true) {
        auto [q, rr] = divmod(F, rest, lin);
        if (!rr.is_zero()) break;
        rest = std::move(q);
        ++m;
      }
      vp.multiplicities.emplace_back(r, m);
      if (m == 1) ++vp.simple_roots;
      if (m % F.p() == 0) vp.field_mults_prime_to_p = false;
    }
    vp.rest_is_pth_power = derivative(F, rest).is_zero();
    if (vp.simple_roots > 0) ++out.with_simple_root;
    out.part_i = out.part_i && vp.field_mults_prime_to_p && vp.rest_is_pth_power;
    out.values.push_back(std::move(vp));
  }
  out.part_ii = out.with_simple_root + 1 >= roots.size();
  return out;
}

}  // namespace mvsp
