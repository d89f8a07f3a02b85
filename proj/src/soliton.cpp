#include "hylo/soliton.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "hylo/spectral.hpp"

namespace hylo {

std::string to_string(SolitonMethod m) {
    switch (m) {
        case SolitonMethod::gradient_flow: return "gradient_flow";
        case SolitonMethod::petviashvili: return "petviashvili";
        case SolitonMethod::exact_bo: return "exact_bo";
    }
    return "unknown";
}

std::string to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::converged: return "converged";
        case SolveStatus::max_iterations: return "max_iterations";
        case SolveStatus::vanishing: return "vanishing";
        case SolveStatus::diverged: return "diverged";
    }
    return "unknown";
}

SolitonMethod soliton_method_from_string(const std::string& name) {
    if (name == "gradient_flow") return SolitonMethod::gradient_flow;
    if (name == "petviashvili") return SolitonMethod::petviashvili;
    if (name == "exact_bo") return SolitonMethod::exact_bo;
    throw PreconditionError("unknown soliton method '" + name + "'");
}

double SolitonSolution::relative_residual() const {
    const double n = l2_norm(profile);
    return n > 0.0 ? residual_norm / n : 0.0;
}

double estimate_multiplier(const Field& u, double s, const Nonlinearity& w, ChargeConvention convention) {
    const double uu = inner(u, u);
    if (!(uu > 0.0)) {
        throw PreconditionError("estimate_multiplier: zero field");
    }
    const double gu = inner(energy_gradient(u, s, w), u);
    return convention == ChargeConvention::fkdv ? gu / uu : gu / (2.0 * uu);
}

double stationary_residual(const Field& u, double multiplier, double s, const Nonlinearity& w,
                           ChargeConvention convention) {
    Field defect = energy_gradient(u, s, w);
    if (convention == ChargeConvention::fkdv) {
        defect -= multiplier * u;
    } else {
        defect *= 0.5;
        defect -= multiplier * u;
    }
    return l2_norm(defect);
}

std::string hylomorphy_range_warning(const Nonlinearity& w, double s) {
    const auto& pl = w.metadata().power_law;
    if (!pl) {
        return {};
    }
    const double p = pl->exponent;
    if (p > 2.0 && p < 4.0 * s + 2.0) {
        return {};
    }
    std::ostringstream msg;
    msg << "power-law exponent p = " << p << " lies outside (2, 4s+2) = (2, " << 4.0 * s + 2.0
        << "); energy is not coercive at fixed charge and minimizers need not exist";
    return msg.str();
}

Field rescale_to_charge(const Field& u, double c, ChargeConvention convention) {
    const double current = charge(u, convention);
    if (!(current > 0.0)) {
        throw PreconditionError("cannot rescale a field with zero charge");
    }
    return std::sqrt(c / current) * u;
}

Field recenter(const Field& u) {
    const auto v = u.values();
    std::size_t peak = 0;
    double best = -1.0;
    for (std::size_t j = 0; j < v.size(); ++j) {
        const double a = std::abs(v[j]);
        if (a > best) {
            best = a;
            peak = j;
        }
    }
    const std::size_t n = v.size();
    const std::size_t origin = u.grid().nyquist_index();  // node at x = 0
    std::vector<cd> rolled(n);
    for (std::size_t j = 0; j < n; ++j) {
        rolled[(j + origin + n - peak) % n] = v[j];
    }
    if (u.is_real()) {
        Field out(u.grid(), Field::Kind::real);
        std::copy(rolled.begin(), rolled.end(), out.mutable_values().begin());
        return out;
    }
    return Field::complex(u.grid(), std::move(rolled));
}

Field gaussian_seed(const Grid& grid, double c, double width, ChargeConvention convention, bool complex) {
    if (!(width > 0.0)) {
        throw PreconditionError("gaussian seed: width must be positive");
    }
    Field g = Field::from_function(grid, [width](double x) { return std::exp(-0.5 * x * x / (width * width)); });
    if (complex) {
        g = g.as_complex();
    }
    return rescale_to_charge(g, c, convention);
}

namespace {

// Localization test for the vanishing diagnostic.
constexpr double kVanishingTail = 1e-3;

void finish(SolitonSolution& sol) {
    sol.charge = charge(sol.profile, sol.convention);
    sol.energy = energy(sol.profile, sol.s, sol.nonlinearity);
    sol.residual_norm = stationary_residual(sol.profile, sol.multiplier, sol.s, sol.nonlinearity, sol.convention);
}

bool finite_field(const Field& u) {
    for (cd z : u.values()) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            return false;
        }
    }
    return true;
}

}  // namespace

SolitonSolution find_soliton_gradient_flow(double c, double s, const Nonlinearity& w, ChargeConvention convention,
                                           const Field& init, const GradientFlowOptions& opt) {
    if (!(c > 0.0)) {
        throw PreconditionError("gradient flow: target charge must be positive");
    }
    if (!(opt.tau > 0.0) || !(opt.tol > 0.0) || opt.max_iter < 1) {
        throw PreconditionError("gradient flow: tau, tol and max_iter must be positive");
    }
    if (convention == ChargeConvention::fkdv && !init.is_real()) {
        throw PreconditionError("gradient flow: the fkdv convention needs a real initial field");
    }

    SolitonSolution sol(init);
    sol.method = SolitonMethod::gradient_flow;
    sol.convention = convention;
    sol.s = s;
    sol.nonlinearity = w;
    if (auto warn = hylomorphy_range_warning(w, s); !warn.empty()) {
        sol.warnings.push_back(warn);
    }

    const Multiplier precond{[s](double xi) { return cd{1.0 / (1.0 + std::pow(std::abs(xi), 2.0 * s)), 0.0}; },
                             Parity::even_real};

    Field u = rescale_to_charge(init, c, convention);
    Field best = u;
    double best_norm = std::numeric_limits<double>::infinity();
    double lambda = 0.0;
    sol.status = SolveStatus::max_iterations;
    int it = 0;
    for (; it < opt.max_iter; ++it) {
        const Field g = energy_gradient(u, s, w);
        lambda = inner(g, u) / inner(u, u);
        Field v = g;
        v -= lambda * u;
        const double vn = l2_norm(v);
        if (!std::isfinite(vn)) {
            sol.status = SolveStatus::diverged;
            break;
        }
        if (vn < best_norm) {
            best_norm = vn;
            best = u;
        }
        if (vn < opt.tol) {
            sol.status = SolveStatus::converged;
            break;
        }
        u -= opt.tau * apply(v, precond);
        if (!finite_field(u) || !(charge(u, convention) > 0.0)) {
            sol.status = SolveStatus::diverged;
            break;
        }
        u = rescale_to_charge(u, c, convention);
    }
    sol.iterations = it;
    sol.profile = best;

    if (sol.status != SolveStatus::diverged && tail_mass(best) > kVanishingTail) {
        sol.status = SolveStatus::vanishing;
        sol.message = "vanishing minimizing sequence: the flow spreads over the box instead of localizing";
    } else if (sol.status == SolveStatus::max_iterations) {
        std::ostringstream msg;
        msg << "no convergence after " << it << " iterations; best projected gradient " << best_norm;
        sol.message = msg.str();
    } else if (sol.status == SolveStatus::diverged) {
        sol.message = "gradient flow produced non-finite values";
    }

    if (opt.recenter) {
        sol.profile = recenter(sol.profile);
    }
    sol.multiplier = estimate_multiplier(sol.profile, s, w, convention);
    finish(sol);
    return sol;
}

SolitonSolution petviashvili(double shift, double s, const Nonlinearity& w, const Grid& grid,
                             ChargeConvention convention, const PetviashviliOptions& opt) {
    if (!(shift > 0.0)) {
        throw PreconditionError("petviashvili: the resolvent shift must be positive");
    }
    const auto& pl = w.metadata().power_law;
    if (!pl) {
        throw PreconditionError("petviashvili: W must have a single homogeneous remainder (power law)");
    }
    const double p = pl->exponent;
    if (!(p > 2.0)) {
        throw PreconditionError("petviashvili: power-law exponent must exceed 2");
    }
    SolitonSolution sol(Field(grid, Field::Kind::real));
    sol.method = SolitonMethod::petviashvili;
    sol.convention = convention;
    sol.s = s;
    sol.nonlinearity = w;
    if (auto warn = hylomorphy_range_warning(w, s); !warn.empty()) {
        sol.warnings.push_back(warn);
    }

    const double gamma = (p - 1.0) / (p - 2.0);
    const double base = shift + 2.0 * w.e0();
    if (!(base > 0.0)) {
        throw PreconditionError("petviashvili: shift + 2 E0 must be positive");
    }
    const auto& xi = grid.wavenumbers();
    std::vector<double> symbol(xi.size());
    for (std::size_t i = 0; i < xi.size(); ++i) {
        symbol[i] = base + std::pow(std::abs(xi[i]), 2.0 * s);
    }

    // -N'(u) on a real profile; fns evaluates W at |u|
    auto rhs = [&](const Field& u) {
        Field out(grid, Field::Kind::real);
        auto dst = out.mutable_values();
        const auto src = u.values();
        for (std::size_t j = 0; j < src.size(); ++j) {
            const double r = src[j].real();
            double d = 0.0;
            if (convention == ChargeConvention::fkdv) {
                d = w.remainder_derivative(r);
            } else {
                const double a = std::abs(r);
                d = a == 0.0 ? 0.0 : (r < 0.0 ? -1.0 : 1.0) * w.remainder_derivative(a);
            }
            dst[j] = cd{-d, 0.0};
        }
        return out;
    };
    auto apply_symbol = [&](const Field& u, bool invert) {
        const auto spec = u.spectrum();
        std::vector<cd> out(spec.begin(), spec.end());
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] = invert ? out[i] / symbol[i] : out[i] * symbol[i];
        }
        return Field::from_spectrum(grid, std::move(out), Field::Kind::real);
    };

    Field u = opt.seed ? opt.seed->real_part()
                       : Field::from_function(grid, [shift, s](double x) {
                             const double width = 1.0 / std::pow(shift, 0.5 / s);
                             return std::exp(-0.5 * x * x / (width * width));
                         });
    if (inner(rhs(u), u) < 0.0) {
        u *= -1.0;
    }

    sol.status = SolveStatus::max_iterations;
    int it = 0;
    double diff = std::numeric_limits<double>::infinity();
    for (; it < opt.max_iter; ++it) {
        const Field nu = rhs(u);
        const double num = inner(apply_symbol(u, false), u);
        const double den = inner(nu, u);
        if (!(den > 0.0) || !(num > 0.0)) {
            sol.status = SolveStatus::diverged;
            sol.message = "stabilizing factor became nonpositive";
            break;
        }
        const double m = num / den;
        Field next = std::pow(m, gamma) * apply_symbol(nu, true);
        if (!finite_field(next)) {
            sol.status = SolveStatus::diverged;
            sol.message = "iterate became non-finite";
            break;
        }
        diff = l2_norm(next - u);
        u = std::move(next);
        if (diff < opt.tol) {
            ++it;
            sol.status = SolveStatus::converged;
            break;
        }
    }
    sol.iterations = it;
    if (sol.status == SolveStatus::max_iterations) {
        std::ostringstream msg;
        msg << "no convergence after " << it << " iterations; last update " << diff;
        sol.message = msg.str();
    }
    if (l2_norm(u) == 0.0 && sol.status == SolveStatus::converged) {
        sol.status = SolveStatus::vanishing;
        sol.message = "iteration collapsed to zero";
    }
    sol.profile = opt.recenter ? recenter(u) : u;
    if (convention == ChargeConvention::fns) {
        sol.profile = sol.profile.as_complex();
    }
    sol.multiplier = convention == ChargeConvention::fkdv ? -shift : -0.5 * shift;
    finish(sol);
    return sol;
}

Field exact_bo_soliton(double lambda, double x0, const Grid& grid, int images) {
    if (!(lambda != 0.0) || !std::isfinite(lambda)) {
        throw PreconditionError("exact BO soliton: lambda must be nonzero");
    }
    if (images < 0) {
        throw PreconditionError("exact BO soliton: images must be nonnegative");
    }
    const double len = grid.length();
    return Field::from_function(grid, [=](double x) {
        double sum = 0.0;
        for (int m = images; m >= -images; --m) {
            const double y = lambda * (x - x0 - m * len);
            sum += 4.0 * lambda / (1.0 + y * y);
        }
        return sum;
    });
}

Field exact_kdv_soliton(double c, double x0, const Grid& grid) {
    if (!(c > 0.0)) {
        throw PreconditionError("exact KdV soliton: c must be positive");
    }
    return Field::from_function(grid, [=](double x) {
        const double ch = std::cosh(0.5 * std::sqrt(c) * (x - x0));
        return 3.0 * c / (ch * ch);
    });
}

Field exact_gpe_soliton(double a, const Grid& grid) {
    if (!(a > 0.0)) {
        throw PreconditionError("exact GPE soliton: a must be positive");
    }
    return Field::from_function(grid, [=](double x) { return std::numbers::sqrt2 * a / std::cosh(a * x); });
}

SolitonSolution exact_bo_solution(double lambda, const Grid& grid, int images) {
    SolitonSolution sol(exact_bo_soliton(lambda, 0.0, grid, images));
    sol.multiplier = lambda;
    sol.convention = ChargeConvention::fkdv;
    sol.s = 0.5;
    sol.nonlinearity = Nonlinearity::bo();
    sol.method = SolitonMethod::exact_bo;
    sol.status = SolveStatus::converged;
    finish(sol);
    return sol;
}

}  // namespace hylo
