#pragma once

#include <string>

#include "hylo/field.hpp"
#include "hylo/nonlinearity.hpp"

namespace hylo {

/// Which hylenic charge a multiplier or ratio refers to. The two families
/// normalize differently, so multipliers differ by a factor 2 between them.
enum class ChargeConvention {
    fkdv,  ///< C = 1/2 int u^2,    C'(u) = u
    fns,   ///< C = int |psi|^2,    C'(psi) = 2 psi
};

std::string to_string(ChargeConvention c);
ChargeConvention charge_convention_from_string(const std::string& name);

/// int W(u) dx; W is evaluated at u for real fields and at |psi| otherwise.
double potential_integral(const Field& u, const Nonlinearity& w);

/// E = int ( |D^s u|^2 / 2 + W(u) ) dx
double energy(const Field& u, double s, const Nonlinearity& w);

/// 1/2 ||D^s u||^2 + E0 ||u||^2: the part of E fixed by W''(0).
double quadratic_energy(const Field& u, double s, double e0);

double charge_fkdv(const Field& u);
double charge_fns(const Field& psi);
double charge(const Field& u, ChargeConvention convention);

/// C'(u) under the given convention.
Field charge_gradient(const Field& u, ChargeConvention convention);

/// Lambda = E / |C|. Throws PreconditionError on zero charge.
double hylenic_ratio(const Field& u, double s, const Nonlinearity& w, ChargeConvention convention);

/// W'(u) pointwise; for complex psi this is F'(|psi|) psi/|psi|, taken as 0
/// where psi = 0.
Field nonlinear_term(const Field& u, const Nonlinearity& w);

/// L2 gradient of E: D^{2s} u + W'(u).
Field energy_gradient(const Field& u, double s, const Nonlinearity& w);

/// Fraction of the L2 mass carried by nodes with |x| >= 0.45 L, the outer
/// tenth of the box.
double tail_mass(const Field& u);

struct FunctionalReport {
    double energy = 0.0;
    double charge = 0.0;
    double ratio = 0.0;  ///< NaN when the charge vanishes
    double gradient_norm = 0.0;
    double tail_mass = 0.0;
};

FunctionalReport evaluate_functionals(const Field& u, double s, const Nonlinearity& w, ChargeConvention convention);

}  // namespace hylo
