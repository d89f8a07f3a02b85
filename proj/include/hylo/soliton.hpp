#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hylo/field.hpp"
#include "hylo/functionals.hpp"
#include "hylo/nonlinearity.hpp"

namespace hylo {

enum class SolitonMethod { gradient_flow, petviashvili, exact_bo };
enum class SolveStatus {
    converged,
    max_iterations,  ///< best iterate returned
    vanishing,       ///< the iterates spread over the box instead of localizing
    diverged,
};

std::string to_string(SolitonMethod m);
std::string to_string(SolveStatus s);
SolitonMethod soliton_method_from_string(const std::string& name);

/**
 * A profile u with E'(u) = multiplier * C'(u) under `convention`.
 *
 * For fkdv the multiplier is the travelling speed: u(x - multiplier t)
 * solves the evolution equation. For fns it is the frequency omega of the
 * standing wave u exp(-i omega t).
 */
struct SolitonSolution {
    explicit SolitonSolution(Field p) : profile(std::move(p)) {}

    Field profile;
    double multiplier = 0.0;
    ChargeConvention convention = ChargeConvention::fkdv;
    double s = 0.5;
    Nonlinearity nonlinearity = Nonlinearity::zero();
    double charge = 0.0;
    double energy = 0.0;
    double residual_norm = 0.0;
    SolitonMethod method = SolitonMethod::gradient_flow;
    int iterations = 0;
    SolveStatus status = SolveStatus::converged;
    std::string message;
    std::vector<std::string> warnings;

    bool converged() const { return status == SolveStatus::converged; }
    /// residual_norm / ||profile||
    double relative_residual() const;
};

/// Rayleigh quotient <E'(u), u> / <C'(u), u>.
double estimate_multiplier(const Field& u, double s, const Nonlinearity& w, ChargeConvention convention);

/// L2 norm of D^{2s}u + W'(u) - lambda u (fkdv) or
/// D^{2s}u/2 + W'(u)/2 - omega u (fns).
double stationary_residual(const Field& u, double multiplier, double s, const Nonlinearity& w,
                           ChargeConvention convention);

/// Warning text when W is a power law with p outside (2, 4s+2); empty otherwise.
std::string hylomorphy_range_warning(const Nonlinearity& w, double s);

/// Multiplies u so that its charge equals c.
Field rescale_to_charge(const Field& u, double c, ChargeConvention convention);

/// Cyclic roll putting the node of largest |u| at x = 0 (leftmost on ties).
Field recenter(const Field& u);

struct GradientFlowOptions {
    double tau = 1.0;
    double tol = 1e-8;
    int max_iter = 20000;
    bool recenter = true;
};

/**
 * Preconditioned gradient descent for E on the sphere C = c.
 *
 * Each step takes g = E'(u), lambda = <g,u>/<u,u>, v = g - lambda u and
 * u <- u - tau P v with P = (1 + |xi|^{2s})^{-1}, then rescales u to charge c.
 * Stops when ||v|| < tol. A field that ends up spread over the box is
 * reported as SolveStatus::vanishing.
 */
SolitonSolution find_soliton_gradient_flow(double c, double s, const Nonlinearity& w, ChargeConvention convention,
                                           const Field& init, const GradientFlowOptions& options = {});

/// Gaussian exp(-x^2 / (2 width^2)) scaled to charge c.
Field gaussian_seed(const Grid& grid, double c, double width, ChargeConvention convention, bool complex = false);

struct PetviashviliOptions {
    double tol = 1e-10;
    int max_iter = 5000;
    bool recenter = true;
    std::optional<Field> seed;
};

/**
 * Petviashvili iteration for (shift + 2 E0 + D^{2s}) u = -N'(u), N'
 * homogeneous of degree p - 1. shift > 0 keeps the resolvent positive.
 * The returned multiplier is -shift (fkdv) or -shift/2 (fns).
 */
SolitonSolution petviashvili(double shift, double s, const Nonlinearity& w, const Grid& grid,
                             ChargeConvention convention, const PetviashviliOptions& options = {});

/// Periodized 4 lambda / (1 + lambda^2 (x - x0)^2), summed over the shifts
/// x0 + m L for |m| <= images. lambda != 0; its sign is the speed of the
/// travelling wave under the Benjamin-Ono flow with W = r^3/6.
Field exact_bo_soliton(double lambda, double x0, const Grid& grid, int images = 10);

/// 3c sech^2(sqrt(c) (x - x0) / 2): speed -c for s = 1, W = -r^3/6.
Field exact_kdv_soliton(double c, double x0, const Grid& grid);

/// sqrt(2) a sech(a x): frequency -a^2/2 for s = 1, W = -r^4/4, charge 4a.
Field exact_gpe_soliton(double a, const Grid& grid);

/// SolitonSolution wrapper around exact_bo_soliton with its functionals.
SolitonSolution exact_bo_solution(double lambda, const Grid& grid, int images = 10);

}  // namespace hylo
