#pragma once

#include <string>

#include "json.hpp"
#include "mvsp/oracle.hpp"

namespace mvsp {

using Json = nlohmann::ordered_json;

/// Accepts "d0,d1,..." (F_p digits, low degree first, missing digits zero), a
/// parenthesized digit list, an integer, or "g"/"y" with an optional "^e".
Elem parse_elem(const Field& F, const std::string& text);
/// "d0,d1,...,d(N-1)".
std::string format_elem(const Field& F, Elem a);

/// Terms "c*x^e" joined by + or -; c is an integer, g^e / y^e, or "(d0,...)".
Poly parse_poly(const Field& F, const std::string& text);
/// Decreasing exponents; unit coefficients dropped, prime-field ones as integers,
/// others as "(d0,...)".
std::string format_poly(const Field& F, const Poly& f);

/// Additive polynomial in the tau variable "T" = x^(p^level): "c*T^i + ...".
AdditivePoly parse_tau(const Field& F, const std::string& text, unsigned level);
std::string format_tau(const Field& F, const AdditivePoly& A);

Json elem_json(const Field& F, Elem a);
Elem elem_from_json(const Field& F, const Json& j);
/// {"terms":[{"e":...,"c":[digits]}]} in decreasing exponent order.
Json poly_json(const Field& F, const Poly& f);
Poly poly_from_json(const Field& F, const Json& j);
Json additive_json(const Field& F, const AdditivePoly& A);

Json report_json(const Field& F, const MvspReport& r);
Json witness_json(const Field& F, const ReductionWitness& w);
Json classification_json(const Field& F, const Classification& c);
Json profile_json(const Field& F, const MillsProfile& m);
Json orbit_table_json(const OrbitTable& t);
Json basis_json(const Field& F, const WBasis& B);
Json lift_json(const Field& F, const LiftResult& r);
Json power_image_json(const PowerImageReport& r);
Json census_json(const Field& F, const CensusReport& r);
Json linear_dim_json(const Field& F, const LinearDim& d);
Json form_check_json(const Field& F, const FormCheckReport& r);

}  // namespace mvsp
