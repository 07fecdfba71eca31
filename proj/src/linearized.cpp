#include "mvsp/linearized.hpp"

#include <numeric>

#include "mvsp/fp_matrix.hpp"

namespace mvsp {

namespace {

// Smallest j with p^j == e, or nullopt when e is not a power of p.
std::optional<unsigned> log_p(std::uint64_t e, std::uint64_t p) {
  if (e == 0) return std::nullopt;
  unsigned j = 0;
  while (e % p == 0) {
    e /= p;
    ++j;
  }
  if (e != 1) return std::nullopt;
  return j;
}

void require_same_level(const AdditivePoly& A, const AdditivePoly& B) {
  if (A.level() != B.level()) throw InputError("additive polynomials have different levels");
}

}  // namespace

AdditivePoly::AdditivePoly(unsigned level, std::vector<Elem> tau_coeffs) : level_(level), coeffs_(std::move(tau_coeffs)) {
  if (level_ == 0) throw InputError("additive level must be positive");
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

AdditivePoly AdditivePoly::identity(unsigned level) { return AdditivePoly(level, {Elem{1}}); }

AdditivePoly AdditivePoly::binomial(const Field& F, unsigned level, unsigned d, Elem alpha) {
  std::vector<Elem> c(d + 1, F.zero());
  c[0] = F.neg(alpha);
  c[d] = F.add(c[d], F.one());
  return AdditivePoly(level, std::move(c));
}

std::uint64_t poly_degree(const Field& F, const AdditivePoly& A) {
  if (A.is_zero()) return 0;
  const auto e = static_cast<unsigned long long>(A.level()) * static_cast<unsigned>(A.tau_degree());
  unsigned __int128 d = 1;
  for (unsigned long long i = 0; i < e; ++i) {
    d *= F.p();
    if (d >= Poly::kMaxExponent) throw InputError("additive polynomial degree exceeds 2^62");
  }
  return static_cast<std::uint64_t>(d);
}

Poly to_poly(const Field& F, const AdditivePoly& A) {
  std::vector<Poly::Term> t;
  const std::uint64_t Q = ipow(F.p(), A.level());
  std::uint64_t e = 1;
  for (std::size_t i = 0; i < A.coeffs().size(); ++i) {
    if (i > 0) {
      if (static_cast<unsigned __int128>(e) * Q >= Poly::kMaxExponent)
        throw InputError("additive polynomial degree exceeds 2^62");
      e *= Q;
    }
    if (!A.coeffs()[i].is_zero()) t.emplace_back(e, A.coeffs()[i]);
  }
  return from_sorted_terms(std::move(t));
}

std::optional<AdditivePoly> detect_additive(const Field& F, const Poly& f) {
  std::vector<unsigned> logs;
  for (const auto& [e, c] : f.terms()) {
    auto l = log_p(e, F.p());
    if (!l) return std::nullopt;
    logs.push_back(*l);
  }
  unsigned g = 0;
  for (auto l : logs) g = std::gcd(g, l);
  if (g == 0) g = F.degree();
  return as_additive(F, f, g);
}

std::optional<AdditivePoly> as_additive(const Field& F, const Poly& f, unsigned level) {
  if (level == 0) return std::nullopt;
  std::vector<Elem> c;
  for (const auto& [e, coef] : f.terms()) {
    auto l = log_p(e, F.p());
    if (!l || *l % level != 0) return std::nullopt;
    const std::size_t i = *l / level;
    if (c.size() <= i) c.resize(i + 1, F.zero());
    c[i] = coef;
  }
  return AdditivePoly(level, std::move(c));
}

AdditivePoly with_level(const AdditivePoly& A, unsigned new_level) {
  if (new_level == 0 || A.level() % new_level != 0)
    throw InputError("cannot express a p^" + std::to_string(A.level()) + "-additive polynomial at level " +
                     std::to_string(new_level));
  const unsigned r = A.level() / new_level;
  std::vector<Elem> c(A.is_zero() ? 0 : A.tau_degree() * r + 1, Elem{0});
  for (std::size_t i = 0; i < A.coeffs().size(); ++i) c[i * r] = A.coeffs()[i];
  return AdditivePoly(new_level, std::move(c));
}

AdditivePoly at_base(const Field& F, const AdditivePoly& A) {
  return A.level() == F.k() ? A : with_level(A, F.k());
}

AdditivePoly add(const Field& F, const AdditivePoly& A, const AdditivePoly& B) {
  require_same_level(A, B);
  std::vector<Elem> c(std::max(A.coeffs().size(), B.coeffs().size()), F.zero());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = F.add(A.coeff(i), B.coeff(i));
  return AdditivePoly(A.level(), std::move(c));
}

AdditivePoly scale(const Field& F, const AdditivePoly& A, Elem s) {
  std::vector<Elem> c = A.coeffs();
  for (auto& x : c) x = F.mul(x, s);
  return AdditivePoly(A.level(), std::move(c));
}

AdditivePoly tau_compose(const Field& F, const AdditivePoly& A, const AdditivePoly& B) {
  require_same_level(A, B);
  if (A.is_zero() || B.is_zero()) return AdditivePoly(A.level(), {});
  const auto lvl = static_cast<std::int64_t>(A.level());
  std::vector<Elem> c(A.coeffs().size() + B.coeffs().size() - 1, F.zero());
  for (std::size_t i = 0; i < A.coeffs().size(); ++i) {
    const Elem a = A.coeffs()[i];
    if (a.is_zero()) continue;
    for (std::size_t j = 0; j < B.coeffs().size(); ++j) {
      const Elem b = B.coeffs()[j];
      if (b.is_zero()) continue;
      c[i + j] = F.add(c[i + j], F.mul(a, F.frobenius_p(b, lvl * static_cast<std::int64_t>(i))));
    }
  }
  return AdditivePoly(A.level(), std::move(c));
}

std::pair<AdditivePoly, AdditivePoly> tau_left_divide(const Field& F, const AdditivePoly& C, const AdditivePoly& A) {
  require_same_level(C, A);
  if (A.is_zero()) throw InputError("tau_left_divide: divisor is zero");
  const int t = A.tau_degree();
  const auto lvl = static_cast<std::int64_t>(A.level());
  const Elem lead_inv = F.inv(A.leading());
  std::vector<Elem> r = C.coeffs();
  std::vector<Elem> m(C.tau_degree() >= t ? C.tau_degree() - t + 1 : 0, F.zero());
  for (int top = C.tau_degree(); top >= t; --top) {
    const Elem ct = r[top];
    if (ct.is_zero()) continue;
    const int j = top - t;
    // The new quotient coefficient is (c_top / a_t)^(Q^-t).
    const Elem mj = F.frobenius_p(F.mul(ct, lead_inv), -lvl * t);
    m[j] = mj;
    for (int i = 0; i <= t; ++i) {
      const Elem a = A.coeff(i);
      if (a.is_zero()) continue;
      r[i + j] = F.sub(r[i + j], F.mul(a, F.frobenius_p(mj, lvl * i)));
    }
    if (!r[top].is_zero()) throw InvariantError("tau_left_divide: top coefficient did not cancel");
  }
  return {AdditivePoly(A.level(), std::move(m)), AdditivePoly(A.level(), std::move(r))};
}

Elem eval(const Field& F, const AdditivePoly& A, Elem a) {
  Elem acc = F.zero();
  const auto lvl = static_cast<std::int64_t>(A.level());
  for (std::size_t i = 0; i < A.coeffs().size(); ++i)
    if (!A.coeffs()[i].is_zero())
      acc = F.add(acc, F.mul(A.coeffs()[i], F.frobenius_p(a, lvl * static_cast<std::int64_t>(i))));
  return acc;
}

Poly apply(const Field& F, const AdditivePoly& A, const Poly& f) {
  Poly acc;
  for (std::size_t i = 0; i < A.coeffs().size(); ++i)
    if (!A.coeffs()[i].is_zero())
      acc = add(F, acc, scale(F, frobenius_map(F, f, A.level() * static_cast<unsigned>(i)), A.coeffs()[i]));
  return acc;
}

AdditiveKernel kernel(const Field& F, const AdditivePoly& A0) {
  if (A0.is_zero()) throw InputError("kernel of the zero polynomial");
  const AdditivePoly A = at_base(F, A0);
  const unsigned N = F.degree();
  FpMatrix m(F.p(), N, N);
  for (unsigned i = 0; i < N; ++i) {
    // y^i as a packed coordinate vector is p^i.
    const auto img = F.digits(eval(F, A, Elem{ipow(F.p(), i)}));
    for (unsigned r = 0; r < N; ++r) m.at(r, i) = img[r];
  }
  std::vector<Elem> roots;
  for (const auto& v : m.nullspace()) roots.push_back(F.from_digits(v));
  AdditiveKernel out;
  out.basis = F.fq_independent_subset(roots);
  out.t = static_cast<unsigned>(out.basis.size());
  if (roots.size() != out.t * F.k()) throw InvariantError("kernel of a q-additive map is not an F_q-space");
  return out;
}

bool splits_and_separable(const Field& F, const AdditivePoly& A0) {
  if (A0.is_zero()) return false;
  const AdditivePoly A = at_base(F, A0);
  if (!A.is_separable()) return false;
  return kernel(F, A).t == static_cast<unsigned>(A.tau_degree());
}

bool satisfies_star(const Field& F, const AdditivePoly& A) {
  if (A.is_zero() || !A.is_monic()) return false;
  if (A.level() % F.k() != 0) return false;
  if (poly_degree(F, A) <= 2) return false;
  return splits_and_separable(F, A);
}

AdditivePoly subspace_poly(const Field& F, const std::vector<Elem>& V) {
  AdditivePoly M = AdditivePoly::identity(F.k());
  const std::uint64_t qm1 = F.q() - 1;
  for (Elem v : V) {
    const Elem c = eval(F, M, v);
    if (c.is_zero()) throw InputError("subspace_poly: input vectors are F_q-dependent");
    const Elem s = F.pow(c, qm1);
    std::vector<Elem> next(M.coeffs().size() + 1, F.zero());
    for (std::size_t i = 0; i < M.coeffs().size(); ++i) {
      next[i + 1] = F.add(next[i + 1], F.frobenius(M.coeffs()[i], 1));
      next[i] = F.sub(next[i], F.mul(s, M.coeffs()[i]));
    }
    M = AdditivePoly(F.k(), std::move(next));
  }
  return M;
}

std::pair<unsigned, Elem> minimal_binomial_multiple(const Field& F, const AdditivePoly& A0) {
  const AdditivePoly A = at_base(F, A0);
  if (!satisfies_star(F, A)) throw InputError("minimal_binomial_multiple: A must be separable, monic, split, of degree > 2");
  const auto ker = kernel(F, A);
  const Elem rho = ker.basis.front();
  for (auto d64 : divisors(F.n())) {
    const auto d = static_cast<unsigned>(d64);
    const Elem alpha = F.div(F.frobenius(rho, d), rho);
    bool ok = true;
    for (Elem r : ker.basis)
      if (F.frobenius(r, d) != F.mul(alpha, r)) {
        ok = false;
        break;
      }
    if (ok) return {d, alpha};
  }
  throw InvariantError("minimal_binomial_multiple: d = n must always work");
}

LiftWitness factor_binomial_lift(const Field& F, const AdditivePoly& A0, unsigned d, Elem alpha) {
  const AdditivePoly A = at_base(F, A0);
  if (!satisfies_star(F, A)) throw InputError("factor_binomial_lift: A must be separable, monic, split, of degree > 2");
  if (d == 0 || F.n() % d != 0) throw InputError("factor_binomial_lift: d must divide n");
  if (alpha.is_zero()) throw InputError("factor_binomial_lift: alpha must be nonzero");
  const unsigned t = static_cast<unsigned>(A.tau_degree());
  const std::uint64_t qd = ipow(F.q(), d);
  const auto beta_opt = F.solve_power(alpha, qd - 1);
  if (!beta_opt) throw InputError("factor_binomial_lift: x^(q^d) - alpha x does not split (alpha is not a (q^d-1)-th power)");
  const Elem beta = *beta_opt;
  const Elem beta_inv = F.inv(beta);

  // Monic twist: beta^(-q^t) A(beta x).
  const Elem lead_scale = F.inv(F.frobenius(beta, t));
  std::vector<Elem> tw(A.coeffs().size());
  for (std::size_t i = 0; i < tw.size(); ++i)
    tw[i] = F.mul(lead_scale, F.mul(A.coeffs()[i], F.frobenius(beta, static_cast<std::int64_t>(i))));
  const AdditivePoly twisted(F.k(), std::move(tw));

  auto [L, R] = tau_left_divide(F, AdditivePoly::binomial(F, F.k(), d, F.one()), twisted);
  if (!R.is_zero()) throw InputError("factor_binomial_lift: A does not divide x^(q^d) - alpha x");

  // Untwist: M(x) = beta L(beta^-1 x).
  std::vector<Elem> mc(L.coeffs().size());
  for (std::size_t j = 0; j < mc.size(); ++j)
    mc[j] = F.mul(beta, F.mul(L.coeffs()[j], F.frobenius(beta_inv, static_cast<std::int64_t>(j))));

  LiftWitness w;
  w.d = d;
  w.alpha = alpha;
  w.M = AdditivePoly(F.k(), std::move(mc));
  w.gamma = F.div(F.pow(beta, qd), F.frobenius(beta, t));
  w.t = t;

  const AdditivePoly target = AdditivePoly::binomial(F, F.k(), d, alpha);
  if (scale(F, tau_compose(F, A, w.M), w.gamma) != target)
    throw InvariantError("factor_binomial_lift: twisted identity failed");
  if (scale(F, compose(F, to_poly(F, A), to_poly(F, w.M)), w.gamma) != to_poly(F, target))
    throw InvariantError("factor_binomial_lift: expanded identity failed");
  if (w.M.tau_degree() != static_cast<int>(d - t)) throw InvariantError("factor_binomial_lift: deg M != q^(d-t)");
  // M splits with all roots among those of the binomial (F_{q^d} itself when alpha = 1).
  const auto kerM = kernel(F, w.M);
  if (kerM.t != d - t) throw InvariantError("factor_binomial_lift: M does not split over the field");
  for (Elem r : kerM.basis)
    if (F.frobenius(r, d) != F.mul(alpha, r)) throw InvariantError("factor_binomial_lift: a root of M is not a root of the binomial");
  return w;
}

}  // namespace mvsp
