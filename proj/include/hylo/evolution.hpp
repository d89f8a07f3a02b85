#pragma once

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hylo/field.hpp"
#include "hylo/functionals.hpp"
#include "hylo/nonlinearity.hpp"

namespace hylo {

enum class Family {
    fkdv,  ///< u_t + d/dx [ D^{2s} u + W'(u) ] = 0, u real
    fns,   ///< i psi_t = D^{2s} psi / 2 + W'(psi) / 2, psi complex
};

std::string to_string(Family f);
Family family_from_string(const std::string& name);
ChargeConvention convention_of(Family f);

struct EvolutionConfig {
    Family family = Family::fkdv;
    double s = 0.5;
    Nonlinearity nonlinearity = Nonlinearity::zero();
    double dt = 1e-3;
    double t_end = 1.0;
    /// Steps between recorded samples; the final time is always recorded.
    std::size_t snapshot_stride = 100;
    /// 2/3-rule truncation before W'(u) in the FKdV stepper.
    bool dealias = true;
    /// Keep a copy of the state at every recorded sample.
    bool keep_snapshots = false;
};

struct Snapshot {
    double time = 0.0;
    Field state;
};

struct EvolutionTrace {
    std::vector<double> times;
    std::vector<double> energy;
    std::vector<double> charge;
    std::vector<double> tail_mass;
    std::vector<Snapshot> snapshots;
    std::vector<std::string> warnings;

    std::size_t size() const { return times.size(); }
    /// max_t |E(t) - E(0)| / |E(0)| (absolute drift if E(0) = 0).
    double max_energy_drift() const;
    double max_charge_drift() const;
};

/// Raised when the solution stops being finite or its L2 norm jumps by more
/// than a factor 1e6 in one step.
class BlowUpError : public std::runtime_error {
public:
    BlowUpError(const std::string& what, double time, Field last_state, EvolutionTrace partial = {})
        : std::runtime_error(what), time_(time), last_state_(std::move(last_state)), partial_(std::move(partial)) {}

    double time() const { return time_; }
    const Field& last_state() const { return last_state_; }
    const EvolutionTrace& partial_trace() const { return partial_; }

private:
    double time_;
    Field last_state_;
    EvolutionTrace partial_;
};

/**
 * Integrating-factor RK4 for the FKdV equation.
 *
 * In Fourier space u_t = L u + N(u) with L = -i xi |xi|^{2s} and
 * N(u) = -i xi FFT(W'(u)). The linear flow exp(L t) is applied exactly and
 * the transformed nonlinear term is advanced with classical RK4.
 */
class FkdvStepper {
public:
    FkdvStepper(const Grid& grid, double dt, double s, Nonlinearity w, bool dealias);

    /// One step; the input must be real-tagged.
    Field step(const Field& u) const;
    /// One step on a spectrum in place.
    void advance(std::vector<cd>& spectrum) const;

    double dt() const { return dt_; }

private:
    void nonlinear(std::span<const cd> spectrum, std::span<cd> out) const;

    Grid grid_;
    double dt_;
    Nonlinearity w_;
    std::vector<cd> half_;   // exp(L dt/2)
    std::vector<cd> full_;   // exp(L dt)
    std::vector<cd> ddx_;    // -i xi, masked
    std::vector<double> mask_;
    mutable std::vector<cd> a_, b_, c_, d_, stage_, tmp_, phys_;
};

/**
 * Strang splitting for the FNS equation: half a step of the exact nonlinear
 * phase psi -> psi exp(-i t F'(|psi|)/(2|psi|)), a full step of the linear
 * flow exp(-i |xi|^{2s} t / 2), and another nonlinear half step.
 */
class FnsStepper {
public:
    FnsStepper(const Grid& grid, double dt, double s, Nonlinearity w);

    Field step(const Field& psi) const;
    void advance(std::vector<cd>& values) const;

    double dt() const { return dt_; }

private:
    void phase(std::vector<cd>& values, double t) const;

    Grid grid_;
    double dt_;
    Nonlinearity w_;
    std::vector<cd> linear_;
    mutable std::vector<cd> spectrum_;
};

Field step_fkdv(const Field& u, double dt, double s, const Nonlinearity& w, bool dealias = true);
Field step_fns(const Field& psi, double dt, double s, const Nonlinearity& w);

using SampleObserver = std::function<void(double time, const Field& state)>;

/// Advances u0 to config.t_end, sampling E, C and tail mass every
/// snapshot_stride steps. Throws BlowUpError with the partial trace.
EvolutionTrace run(const EvolutionConfig& config, const Field& u0, const SampleObserver& observer = {});

/// Suggested ceiling 1 / max |W''| over the amplitude range of u0.
double advisory_dt_ceiling(const Nonlinearity& w, const Field& u0);

/**
 * Discrete weak form of the FKdV equation tested against phi:
 *   int [ u_t phi - u d/dx D^{2s} phi - W'(u) d/dx phi ] dx
 * with u_t from the central difference (after - before) / (2 dt).
 */
double weak_form_residual(const Field& before, const Field& at, const Field& after, double dt, const Field& phi,
                          double s, const Nonlinearity& w);

}  // namespace hylo
