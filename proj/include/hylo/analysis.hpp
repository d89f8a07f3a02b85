#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hylo/evolution.hpp"
#include "hylo/field.hpp"
#include "hylo/nonlinearity.hpp"
#include "hylo/soliton.hpp"

namespace hylo {

struct Alignment {
    double shift = 0.0;     ///< tau* in [-L/2, L/2)
    double distance = 0.0;  ///< ||u(. - tau*) - v||
    double phase = 0.0;     ///< theta* when the phase was also modded out
};

/// min over tau of ||u(. - tau) - v||. The grid maximum of the spectral
/// cross-correlation is refined by a quadratic fit and then by Newton steps
/// on the trigonometric interpolant.
Alignment translation_distance(const Field& u, const Field& v);

/// min over tau, theta of ||exp(i theta) u(. - tau) - v||, the distance to
/// the orbit of u under translations and phase rotations.
Alignment orbit_distance(const Field& u, const Field& v);

/// Smooth localized random field: band-limited Gaussian noise with |xi| <=
/// max_wavenumber under a Gaussian envelope of the given width, unit L2 norm.
Field random_localized_field(const Grid& grid, std::uint64_t seed, double width = 8.0, double max_wavenumber = 2.0,
                             bool complex = false);

/// Band-limited random mean-zero field with modes |k| <= kmax, unit L2 norm.
Field random_band_limited_field(const Grid& grid, std::uint64_t seed, long kmax, bool complex = false);

struct StabilityOptions {
    double epsilon = 1e-2;
    double t_end = 50.0;
    double dt = 1e-3;
    std::size_t sample_stride = 100;
    std::uint64_t seed = 1;
    /// Direction of the perturbation; a random localized field when empty.
    std::optional<Field> perturbation;
    bool dealias = true;
};

struct StabilityReport {
    double epsilon = 0.0;
    double profile_norm = 0.0;
    std::vector<double> times;
    std::vector<double> distance;  ///< absolute, modulo translation (and phase for fns)
    std::vector<double> shift;     ///< unwrapped tau*(t)
    std::vector<double> energy;
    std::vector<double> charge;
    double initial_distance = 0.0;
    double max_distance = 0.0;
    double fitted_speed = 0.0;
    double expected_speed = 0.0;
    bool blew_up = false;
    std::string failure;
    std::vector<std::string> warnings;

    double relative_max_distance() const { return profile_norm > 0.0 ? max_distance / profile_norm : 0.0; }
    /// |fitted - expected| / |expected|, absolute when expected = 0.
    double speed_error() const;
};

/**
 * Evolves the charge-rescaled perturbed profile u + eps ||u|| p, with p the
 * unit perturbation made L2-orthogonal to u, and tracks its distance to the
 * translation orbit of u. A blow-up ends the run and is flagged in the
 * returned partial report.
 */
StabilityReport orbital_stability_experiment(const SolitonSolution& sol, const StabilityOptions& options);

/// Least-squares slope of y against x.
double fitted_slope(const std::vector<double>& x, const std::vector<double>& y);

/// sigma(t) = 35 t^4 - 84 t^5 + 70 t^6 - 20 t^7 on [0, 1], clamped outside.
double smoothstep7(double t);

/// s0 on |x| <= R, 0 on |x| >= R + 1, s0 sigma(R + 1 - |x|) in between.
Field bump_profile(double radius, double s0, const Grid& grid);

struct HylomorphyReport {
    std::vector<double> radii;
    std::vector<double> ratios;      ///< Lambda(u_R), fns charge convention
    std::vector<double> seminorms;   ///< ||D^s u_R||^2
    double e0 = 0.0;
    double limit_estimate = 0.0;     ///< E0 + N(s0)/s0^2
    double intercept = 0.0;          ///< fit Lambda = intercept + slope / R
    double slope = 0.0;
    double intercept_error = 0.0;    ///< standard error of the intercept
    double fit_residual = 0.0;       ///< max |Lambda - fit|
    bool verdict = false;            ///< min Lambda < E0 - intercept_error
};

HylomorphyReport hylomorphy_scan(const Nonlinearity& w, double s, double s0, const std::vector<double>& radii,
                                 const Grid& grid);

struct GnExponents {
    double theta = 0.0;
    double beta = 0.0;
    bool admissible = false;
};

/// theta = (1/2 - 1/p)/s, beta = (2ps + 2 - p)/(4s + 2 - p); admissible when
/// theta in (0, 1), beta > 1 and 2 < p < 4s + 2.
GnExponents gn_exponents(double p, double s);

struct CoercivityReport {
    double beta = 0.0;
    double a = 0.0;          ///< calibrated constant times the safety factor
    double min_value = 0.0;  ///< min over the check samples of E + a C^beta
    bool admissible = false;
    bool holds = false;
};

/**
 * Sampled check of E(alpha phi) + a C(alpha phi)^beta >= 0 for alpha in
 * [0, alpha_max]. a is calibrated on a coarse sampling, multiplied by
 * `safety`, and checked on a sampling ten times finer.
 */
CoercivityReport coercivity_witness(const Field& phi, double s, const Nonlinearity& w, ChargeConvention convention,
                                    double alpha_max = 10.0, double safety = 2.0);

}  // namespace hylo
