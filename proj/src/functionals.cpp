#include "hylo/functionals.hpp"

#include <cmath>
#include <limits>

#include "hylo/kernels.hpp"
#include "hylo/spectral.hpp"

namespace hylo {

std::string to_string(ChargeConvention c) { return c == ChargeConvention::fkdv ? "fkdv" : "fns"; }

ChargeConvention charge_convention_from_string(const std::string& name) {
    if (name == "fkdv") return ChargeConvention::fkdv;
    if (name == "fns") return ChargeConvention::fns;
    throw PreconditionError("unknown charge convention '" + name + "' (expected fkdv or fns)");
}

double potential_integral(const Field& u, const Nonlinearity& w) {
    if (w.is_zero()) {
        return 0.0;
    }
    double sum = 0.0;
    if (u.is_real()) {
        sum = kernels::map_sum(u.values(), [&w](cd v) { return w.value(v.real()); });
    } else {
        sum = kernels::map_sum(u.values(), [&w](cd v) { return w.value(std::abs(v)); });
    }
    return u.grid().spacing() * sum;
}

double energy(const Field& u, double s, const Nonlinearity& w) {
    const double kinetic = sobolev_seminorm(u, s);
    return 0.5 * kinetic * kinetic + potential_integral(u, w);
}

double quadratic_energy(const Field& u, double s, double e0) {
    const double kinetic = sobolev_seminorm(u, s);
    const double mass = l2_norm(u);
    return 0.5 * kinetic * kinetic + e0 * mass * mass;
}

double charge_fkdv(const Field& u) {
    const double n = l2_norm(u);
    return 0.5 * n * n;
}

double charge_fns(const Field& psi) {
    const double n = l2_norm(psi);
    return n * n;
}

double charge(const Field& u, ChargeConvention convention) {
    return convention == ChargeConvention::fkdv ? charge_fkdv(u) : charge_fns(u);
}

Field charge_gradient(const Field& u, ChargeConvention convention) {
    return convention == ChargeConvention::fkdv ? u : 2.0 * u;
}

double hylenic_ratio(const Field& u, double s, const Nonlinearity& w, ChargeConvention convention) {
    const double c = charge(u, convention);
    if (!(c > 0.0)) {
        throw PreconditionError("hylenic ratio: the field has zero charge");
    }
    return energy(u, s, w) / std::abs(c);
}

Field nonlinear_term(const Field& u, const Nonlinearity& w) {
    Field out(u.grid(), u.kind());
    if (w.is_zero()) {
        return out;
    }
    auto dst = out.mutable_values();
    if (u.is_real()) {
        kernels::map(u.values(), dst, [&w](cd v) { return cd{w.derivative(v.real()), 0.0}; });
    } else {
        kernels::map(u.values(), dst, [&w](cd v) {
            const double r = std::abs(v);
            return r == 0.0 ? cd{0.0, 0.0} : (w.derivative(r) / r) * v;
        });
    }
    return out;
}

Field energy_gradient(const Field& u, double s, const Nonlinearity& w) {
    return fractional_derivative(u, 2.0 * s) + nonlinear_term(u, w);
}

double tail_mass(const Field& u) {
    const auto& x = u.grid().nodes();
    const double edge = 0.45 * u.grid().length();
    double outer = 0.0, total = 0.0;
    const auto v = u.values();
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double m = std::norm(v[j]);
        total += m;
        if (std::abs(x[j]) >= edge) {
            outer += m;
        }
    }
    return total > 0.0 ? outer / total : 0.0;
}

FunctionalReport evaluate_functionals(const Field& u, double s, const Nonlinearity& w, ChargeConvention convention) {
    FunctionalReport r;
    r.energy = energy(u, s, w);
    r.charge = charge(u, convention);
    r.ratio = r.charge > 0.0 ? r.energy / r.charge : std::numeric_limits<double>::quiet_NaN();
    r.gradient_norm = l2_norm(energy_gradient(u, s, w));
    r.tail_mass = tail_mass(u);
    return r;
}

}  // namespace hylo
