#include "mvsp/field.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "mvsp/fp_matrix.hpp"

namespace mvsp {

namespace {

constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 20;

using Dense = std::vector<std::uint64_t>;  // F_p polynomial, low degree first

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

void trim(Dense& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// a mod f for monic f.
Dense dense_rem(Dense a, const Dense& f, std::uint64_t p) {
  trim(a);
  const std::size_t df = f.size() - 1;
  while (a.size() > df) {
    const std::uint64_t c = a.back();
    const std::size_t shift = a.size() - 1 - df;
    if (c)
      for (std::size_t i = 0; i <= df; ++i) a[shift + i] = (a[shift + i] + mulmod(p - c, f[i], p)) % p;
    a.pop_back();
    trim(a);
  }
  return a;
}

Dense dense_mulmod(const Dense& a, const Dense& b, const Dense& f, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Dense r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
  }
  return dense_rem(std::move(r), f, p);
}

Dense dense_powmod(Dense base, std::uint64_t e, const Dense& f, std::uint64_t p) {
  Dense r{1};
  base = dense_rem(std::move(base), f, p);
  while (e) {
    if (e & 1) r = dense_mulmod(r, base, f, p);
    e >>= 1;
    if (e) base = dense_mulmod(base, base, f, p);
  }
  return r;
}

Dense dense_gcd(Dense a, Dense b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    const std::uint64_t iv = fp_inv(b.back(), p);
    Dense monic = b;
    for (auto& c : monic) c = mulmod(c, iv, p);
    a = dense_rem(std::move(a), monic, p);
    std::swap(a, b);
  }
  return a;
}

// Rabin's test for monic f of degree N >= 1.
bool dense_irreducible(const Dense& f, std::uint64_t p) {
  const std::size_t N = f.size() - 1;
  if (N == 1) return true;
  const Dense x{0, 1};
  // x^(p^i) mod f for i = 0..N
  std::vector<Dense> frob(N + 1);
  frob[0] = dense_rem(x, f, p);
  for (std::size_t i = 1; i <= N; ++i) frob[i] = dense_powmod(frob[i - 1], p, f, p);
  auto minus_x = [&](Dense a) {
    if (a.size() < 2) a.resize(2, 0);
    a[1] = (a[1] + p - 1) % p;
    trim(a);
    return a;
  };
  if (!minus_x(frob[N]).empty()) return false;
  for (auto r : prime_factors(N)) {
    const Dense g = dense_gcd(f, minus_x(frob[N / r]), p);
    if (g.size() != 1) return false;
  }
  return true;
}

bool has_root_in_prime_field(const Dense& f, std::uint64_t p) {
  if (p > 64) return false;
  for (std::uint64_t x = 0; x < p; ++x) {
    std::uint64_t acc = 0;
    for (std::size_t i = f.size(); i-- > 0;) acc = (acc * x + f[i]) % p;
    if (acc == 0) return true;
  }
  return false;
}

bool mul_overflows(std::uint64_t a, std::uint64_t b) {
  return static_cast<unsigned __int128>(a) * b > std::numeric_limits<std::uint64_t>::max() / 4;
}

}  // namespace

bool is_prime(std::uint64_t m) {
  if (m < 2) return false;
  for (std::uint64_t d = 2; d * d <= m; ++d)
    if (m % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t m) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= m; ++d) {
    if (m % d) continue;
    out.push_back(d);
    while (m % d == 0) m /= d;
  }
  if (m > 1) out.push_back(m);
  return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t m) {
  std::vector<std::uint64_t> lo, hi;
  for (std::uint64_t d = 1; d * d <= m; ++d) {
    if (m % d) continue;
    lo.push_back(d);
    if (d != m / d) hi.push_back(m / d);
  }
  lo.insert(lo.end(), hi.rbegin(), hi.rend());
  return lo;
}

std::uint64_t ipow(std::uint64_t base, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= base;
  return r;
}

Field::Field(std::uint64_t p, unsigned k, unsigned n) : p_(p), k_(k), n_(n), N_(k * n) {
  ppow_.resize(N_ + 1);
  ppow_[0] = 1;
  for (unsigned i = 1; i <= N_; ++i) ppow_[i] = ppow_[i - 1] * p_;
  q_ = ppow_[k_];
  order_ = ppow_[N_];

  // Candidates enumerated with c_0 as the most significant digit.
  modulus_.assign(N_ + 1, 0);
  modulus_[N_] = 1;
  // For N >= 2 a zero constant term means y divides the candidate, so start at c_0 = 1.
  const std::uint64_t first = N_ >= 2 ? ppow_[N_ - 1] : 0;
  for (std::uint64_t m = first; m < order_; ++m) {
    std::uint64_t t = m;
    for (unsigned i = 0; i < N_; ++i) {
      modulus_[N_ - 1 - i] = t % p_;
      t /= p_;
    }
    if (N_ >= 2 && has_root_in_prime_field(modulus_, p_)) continue;
    if (dense_irreducible(modulus_, p_)) break;
  }

  // Primitive element: least element whose order is exactly |F|-1.
  const auto factors = prime_factors(order_ - 1);
  for (std::uint64_t v = 1; v < order_; ++v) {
    const Elem c{v};
    bool ok = true;
    for (auto r : factors)
      if (pow(c, (order_ - 1) / r) == one()) {
        ok = false;
        break;
      }
    if (ok) {
      primitive_ = c;
      break;
    }
  }
  if (order_ == 2) primitive_ = one();
  if (order_ <= kTableLimit) build_tables();

  // F_p-basis of F_q: greedy over elements fixed by x -> x^q.
  FpRowBasis rb(p_, N_);
  for (std::uint64_t v = 1; v < order_ && fq_basis_.size() < k_; ++v) {
    const Elem c{v};
    if (pow(c, q_) != c) continue;
    if (rb.insert(digits(c))) fq_basis_.push_back(c);
  }
}

void Field::build_tables() {
  exp_.resize(order_ - 1);
  log_.assign(order_, 0);
  Elem x = one();
  for (std::uint64_t i = 0; i + 1 < order_; ++i) {
    exp_[i] = static_cast<std::uint32_t>(x.v);
    log_[x.v] = static_cast<std::uint32_t>(i);
    x = mul_schoolbook(x, primitive_);
  }
}

FieldPtr Field::make(std::uint64_t p, unsigned k, unsigned n) {
  if (!is_prime(p)) throw InputError("characteristic " + std::to_string(p) + " is not prime");
  if (k == 0 || n == 0) throw InputError("k and n must be positive");
  std::uint64_t order = 1;
  for (unsigned i = 0; i < k * n; ++i) {
    if (mul_overflows(order, p)) throw InputError("field size exceeds the 64-bit exponent range");
    order *= p;
  }
  return FieldPtr(new Field(p, k, n));
}

FieldPtr Field::parse(const std::string& spec) {
  std::uint64_t p = 0, N = 0, k = 1;
  const auto caret = spec.find('^');
  const auto colon = spec.find(':');
  try {
    if (caret == std::string::npos) throw InputError("");
    std::size_t used = 0;
    p = std::stoull(spec.substr(0, caret), &used);
    if (used != caret) throw InputError("");
    const std::string deg = spec.substr(caret + 1, colon == std::string::npos ? std::string::npos : colon - caret - 1);
    N = std::stoull(deg, &used);
    if (used != deg.size()) throw InputError("");
    if (colon != std::string::npos) {
      const std::string ks = spec.substr(colon + 1);
      k = std::stoull(ks, &used);
      if (used != ks.size()) throw InputError("");
    }
  } catch (const std::exception&) {
    throw InputError("bad field spec '" + spec + "', expected p^N:k");
  }
  if (k == 0 || N == 0 || N % k != 0) throw InputError("field spec '" + spec + "': k must divide N");
  return make(p, static_cast<unsigned>(k), static_cast<unsigned>(N / k));
}

std::string Field::spec() const {
  return std::to_string(p_) + "^" + std::to_string(N_) + ":" + std::to_string(k_);
}

Elem Field::gen() const {
  if (N_ >= 2) return Elem{p_};
  return Elem{(p_ - modulus_[0]) % p_};
}

Elem Field::from_int(std::int64_t c) const {
  const auto m = static_cast<std::int64_t>(p_);
  return Elem{static_cast<std::uint64_t>(((c % m) + m) % m)};
}

Elem Field::from_digits(std::span<const std::uint64_t> d) const {
  if (d.size() > N_) throw InputError("element has more than N coordinates");
  std::uint64_t v = 0;
  for (std::size_t i = d.size(); i-- > 0;) {
    if (d[i] >= p_) throw InputError("element coordinate out of range [0, p)");
    v = v * p_ + d[i];
  }
  return Elem{v};
}

std::vector<std::uint64_t> Field::digits(Elem a) const {
  std::vector<std::uint64_t> d(N_);
  for (unsigned i = 0; i < N_; ++i) {
    d[i] = a.v % p_;
    a.v /= p_;
  }
  return d;
}

Elem Field::add(Elem a, Elem b) const {
  if (p_ == 2) return Elem{a.v ^ b.v};
  std::uint64_t r = 0;
  for (unsigned i = 0; (a.v | b.v) != 0 && i < N_; ++i) {
    const std::uint64_t s = (a.v % p_ + b.v % p_) % p_;
    r += s * ppow_[i];
    a.v /= p_;
    b.v /= p_;
  }
  return Elem{r};
}

Elem Field::neg(Elem a) const {
  if (p_ == 2) return a;
  std::uint64_t r = 0;
  for (unsigned i = 0; a.v != 0 && i < N_; ++i) {
    const std::uint64_t d = a.v % p_;
    r += (d == 0 ? 0 : p_ - d) * ppow_[i];
    a.v /= p_;
  }
  return Elem{r};
}

Elem Field::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Elem Field::scale_int(Elem a, std::uint64_t c) const {
  c %= p_;
  if (c == 0) return zero();
  if (c == 1) return a;
  std::uint64_t r = 0;
  for (unsigned i = 0; a.v != 0 && i < N_; ++i) {
    r += mulmod(a.v % p_, c, p_) * ppow_[i];
    a.v /= p_;
  }
  return Elem{r};
}

Elem Field::mul_schoolbook(Elem a, Elem b) const {
  if (a.is_zero() || b.is_zero()) return zero();
  // N <= 63 since p^N fits in 64 bits.
  std::uint64_t da[64], db[64], r[128] = {};
  for (unsigned i = 0; i < N_; ++i) {
    da[i] = a.v % p_;
    a.v /= p_;
    db[i] = b.v % p_;
    b.v /= p_;
  }
  for (unsigned i = 0; i < N_; ++i) {
    if (!da[i]) continue;
    for (unsigned j = 0; j < N_; ++j)
      if (db[j]) r[i + j] = (r[i + j] + mulmod(da[i], db[j], p_)) % p_;
  }
  for (unsigned d = 2 * N_ - 1; d-- > N_;) {
    const std::uint64_t c = r[d];
    if (!c) continue;
    const unsigned shift = d - N_;
    for (unsigned i = 0; i < N_; ++i)
      if (modulus_[i]) r[shift + i] = (r[shift + i] + mulmod(p_ - c, modulus_[i], p_)) % p_;
    r[d] = 0;
  }
  std::uint64_t v = 0;
  for (unsigned i = N_; i-- > 0;) v = v * p_ + r[i];
  return Elem{v};
}

Elem Field::mul(Elem a, Elem b) const {
  if (a.is_zero() || b.is_zero()) return zero();
  if (exp_.empty()) return mul_schoolbook(a, b);
  std::uint64_t s = std::uint64_t{log_[a.v]} + log_[b.v];
  if (s >= order_ - 1) s -= order_ - 1;
  return Elem{exp_[s]};
}

Elem Field::inv(Elem a) const {
  if (a.is_zero()) throw InputError("inverse of zero");
  if (exp_.empty()) return pow(a, order_ - 2);
  const std::uint64_t l = log_[a.v];
  return Elem{exp_[l == 0 ? 0 : order_ - 1 - l]};
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  if (e == 0) return one();
  if (a.is_zero()) return zero();
  if (!exp_.empty()) {
    const std::uint64_t m = order_ - 1;
    return Elem{exp_[mulmod(log_[a.v], e % m, m)]};
  }
  Elem r = one();
  while (e) {
    if (e & 1) r = mul_schoolbook(r, a);
    e >>= 1;
    if (e) a = mul_schoolbook(a, a);
  }
  return r;
}

Elem Field::frobenius(Elem a, std::int64_t j) const {
  const auto n = static_cast<std::int64_t>(n_);
  const auto jj = static_cast<unsigned>(((j % n) + n) % n);
  return pow(a, ppow_[k_ * jj]);
}

Elem Field::frobenius_p(Elem a, std::int64_t i) const {
  const auto N = static_cast<std::int64_t>(N_);
  const auto ii = static_cast<unsigned>(((i % N) + N) % N);
  return pow(a, ppow_[ii]);
}

bool Field::in_subfield(Elem a, unsigned d) const {
  if (d == 0 || n_ % d != 0) throw InputError("subfield degree " + std::to_string(d) + " does not divide n");
  return frobenius(a, d) == a;
}

std::vector<Elem> Field::subfield_elements(unsigned d) const {
  if (d == 0 || n_ % d != 0) throw InputError("subfield degree " + std::to_string(d) + " does not divide n");
  std::vector<Elem> out;
  if (!exp_.empty()) {
    const std::uint64_t sub = ppow_[k_ * d] - 1;
    const std::uint64_t step = (order_ - 1) / sub;
    out.push_back(zero());
    for (std::uint64_t i = 0; i < sub; ++i) out.push_back(Elem{exp_[i * step]});
    std::sort(out.begin(), out.end());
    return out;
  }
  for (std::uint64_t v = 0; v < order_; ++v)
    if (frobenius(Elem{v}, d) == Elem{v}) out.push_back(Elem{v});
  return out;
}

std::vector<Elem> Field::subfield_basis(unsigned d) const {
  return fq_independent_subset(subfield_elements(d), d);
}

unsigned Field::fq_rank(std::span<const Elem> elems) const {
  FpRowBasis rb(p_, N_);
  for (Elem c : elems)
    for (Elem w : fq_basis_) rb.insert(digits(mul(c, w)));
  return static_cast<unsigned>(rb.rank() / k_);
}

std::vector<Elem> Field::fq_independent_subset(std::span<const Elem> elems, std::size_t limit) const {
  std::vector<Elem> kept;
  FpRowBasis rb(p_, N_);
  for (Elem c : elems) {
    if (kept.size() >= limit) break;
    if (c.is_zero()) continue;
    unsigned added = 0;
    for (Elem w : fq_basis_) added += rb.insert(digits(mul(c, w))) ? 1 : 0;
    if (added == k_) kept.push_back(c);
  }
  return kept;
}

std::optional<std::vector<Elem>> Field::fq_coordinates(std::span<const Elem> basis, Elem target) const {
  FpMatrix m(p_, N_, basis.size() * k_);
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (unsigned u = 0; u < k_; ++u) {
      const auto d = digits(mul(basis[j], fq_basis_[u]));
      for (unsigned i = 0; i < N_; ++i) m.at(i, j * k_ + u) = d[i];
    }
  const auto x = m.solve(digits(target));
  if (!x) return std::nullopt;
  std::vector<Elem> coords(basis.size(), zero());
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (unsigned u = 0; u < k_; ++u) coords[j] = add(coords[j], scale_int(fq_basis_[u], (*x)[j * k_ + u]));
  return coords;
}

std::optional<Elem> Field::solve_power(Elem alpha, std::uint64_t e) const {
  if (alpha.is_zero()) throw InputError("solve_power: alpha must be nonzero");
  if (e == 0) throw InputError("solve_power: exponent must be positive");
  const std::uint64_t m = order_ - 1;
  if (!exp_.empty()) {
    const std::uint64_t target = log_[alpha.v];
    const std::uint64_t step = e % m;
    std::uint64_t acc = 0;  // e * i mod m
    for (std::uint64_t i = 0; i < m; ++i) {
      if (acc == target) return Elem{exp_[i]};
      acc += step;
      if (acc >= m) acc -= m;
    }
    return std::nullopt;
  }
  Elem b = one();
  for (std::uint64_t i = 0; i < m; ++i) {
    if (pow(b, e) == alpha) return b;
    b = mul(b, primitive_);
  }
  return std::nullopt;
}

}  // namespace mvsp
