#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mvsp/poly.hpp"

namespace mvsp {

/// A p^level-additive polynomial sum_i c_i x^((p^level)^i), stored in twisted
/// form as the coefficient list (c_0, ..., c_m). Composition of additive
/// polynomials is multiplication in the skew ring where tau * a = a^(p^level) * tau.
class AdditivePoly {
 public:
  AdditivePoly() = default;
  AdditivePoly(unsigned level, std::vector<Elem> tau_coeffs);

  /// The identity map x, at the given level.
  static AdditivePoly identity(unsigned level);
  /// x^(Q^d) - alpha x with Q = p^level.
  static AdditivePoly binomial(const Field& F, unsigned level, unsigned d, Elem alpha);

  unsigned level() const { return level_; }
  const std::vector<Elem>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// m for c_m != 0; -1 for the zero polynomial.
  int tau_degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  Elem leading() const { return coeffs_.empty() ? Elem{0} : coeffs_.back(); }
  Elem coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Elem{0}; }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == Elem{1}; }
  bool is_separable() const { return !coeffs_.empty() && !coeffs_[0].is_zero(); }

  friend bool operator==(const AdditivePoly&, const AdditivePoly&) = default;

 private:
  unsigned level_ = 1;
  std::vector<Elem> coeffs_;
};

/// Data of x^(q^d) - alpha x = gamma * A(M(x)) with deg A = q^t.
struct LiftWitness {
  unsigned d = 0;
  Elem alpha;
  AdditivePoly M;
  Elem gamma;
  unsigned t = 0;
};

struct AdditiveKernel {
  std::vector<Elem> basis;  // F_q-basis
  unsigned t = 0;           // F_q-dimension
};

/// Polynomial degree (p^level)^m as an integer.
std::uint64_t poly_degree(const Field& F, const AdditivePoly& A);
Poly to_poly(const Field& F, const AdditivePoly& A);
/// Additive form of f with the largest level dividing every exponent's p-log,
/// or nullopt when some exponent is not a power of p. A lone c*x gets level N.
std::optional<AdditivePoly> detect_additive(const Field& F, const Poly& f);
/// Additive form of f at exactly the given level, if f has that shape.
std::optional<AdditivePoly> as_additive(const Field& F, const Poly& f, unsigned level);
/// Re-expresses A at a finer level; new_level must divide A.level().
AdditivePoly with_level(const AdditivePoly& A, unsigned new_level);
/// A at the field's base level k (A.level() must be a multiple of k).
AdditivePoly at_base(const Field& F, const AdditivePoly& A);

AdditivePoly add(const Field& F, const AdditivePoly& A, const AdditivePoly& B);
AdditivePoly scale(const Field& F, const AdditivePoly& A, Elem c);
/// A o B.
AdditivePoly tau_compose(const Field& F, const AdditivePoly& A, const AdditivePoly& B);
/// (M, R) with C = A o M + R and tau-deg R < tau-deg A.
std::pair<AdditivePoly, AdditivePoly> tau_left_divide(const Field& F, const AdditivePoly& C, const AdditivePoly& A);

Elem eval(const Field& F, const AdditivePoly& A, Elem a);
/// A(f(x)) as a polynomial.
Poly apply(const Field& F, const AdditivePoly& A, const Poly& f);

/// F_q-basis of the roots of A in the ambient field via the F_p-matrix of A.
AdditiveKernel kernel(const Field& F, const AdditivePoly& A);
/// c_0 != 0 and q^t == deg A.
bool splits_and_separable(const Field& F, const AdditivePoly& A);
/// Separable, monic, degree > 2 and split over the ambient field.
bool satisfies_star(const Field& F, const AdditivePoly& A);
/// Monic q-additive polynomial vanishing exactly on the F_q-span of V.
AdditivePoly subspace_poly(const Field& F, const std::vector<Elem>& V);
/// Least d | n and alpha with A | x^(q^d) - alpha x.
std::pair<unsigned, Elem> minimal_binomial_multiple(const Field& F, const AdditivePoly& A);
/// Solves x^(q^d) - alpha x = gamma A(M(x)) and checks it by expansion.
LiftWitness factor_binomial_lift(const Field& F, const AdditivePoly& A, unsigned d, Elem alpha);

}  // namespace mvsp
