#include "hylo/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "hylo/fft.hpp"
#include "hylo/kernels.hpp"
#include "hylo/spectral.hpp"

namespace hylo {

std::string to_string(Family f) { return f == Family::fkdv ? "fkdv" : "fns"; }

Family family_from_string(const std::string& name) {
    if (name == "fkdv") return Family::fkdv;
    if (name == "fns") return Family::fns;
    throw PreconditionError("unknown family '" + name + "' (expected fkdv or fns)");
}

ChargeConvention convention_of(Family f) {
    return f == Family::fkdv ? ChargeConvention::fkdv : ChargeConvention::fns;
}

namespace {

double max_relative_drift(const std::vector<double>& series) {
    if (series.empty()) {
        return 0.0;
    }
    const double ref = series.front();
    const double scale = ref != 0.0 ? std::abs(ref) : 1.0;
    double worst = 0.0;
    for (double v : series) {
        worst = std::max(worst, std::abs(v - ref) / scale);
    }
    return worst;
}

double squared_norm(std::span<const cd> v) { return kernels::norm2(v); }

bool all_finite(std::span<const cd> v) {
    return std::all_of(v.begin(), v.end(), [](cd z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

void check_dt(double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw PreconditionError("time step must be positive and finite");
    }
}

void check_s(double s) {
    if (!(s >= 0.0) || !std::isfinite(s)) {
        throw PreconditionError("dispersion order s must be nonnegative");
    }
}

}  // namespace

double EvolutionTrace::max_energy_drift() const { return max_relative_drift(energy); }
double EvolutionTrace::max_charge_drift() const { return max_relative_drift(charge); }

// ---------------------------------------------------------------------------

FkdvStepper::FkdvStepper(const Grid& grid, double dt, double s, Nonlinearity w, bool dealias)
    : grid_(grid), dt_(dt), w_(std::move(w)) {
    check_dt(dt);
    check_s(s);
    const std::size_t n = grid.size();
    const auto& xi = grid.wavenumbers();
    const long cutoff = static_cast<long>(n) / 3;
    half_.resize(n);
    full_.resize(n);
    ddx_.resize(n);
    mask_.assign(n, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double omega = xi[i] * std::pow(std::abs(xi[i]), 2.0 * s);
        half_[i] = std::polar(1.0, -omega * dt / 2.0);
        full_[i] = std::polar(1.0, -omega * dt);
        ddx_[i] = cd{0.0, -xi[i]};
        if (dealias && std::labs(grid.mode(i)) > cutoff) {
            mask_[i] = 0.0;
            ddx_[i] = cd{0.0, 0.0};
        }
    }
    // odd symbols carry no Nyquist component
    const std::size_t ny = grid.nyquist_index();
    half_[ny] = full_[ny] = cd{1.0, 0.0};
    ddx_[ny] = cd{0.0, 0.0};
    for (auto* buf : {&a_, &b_, &c_, &d_, &stage_, &tmp_, &phys_}) {
        buf->resize(n);
    }
}

void FkdvStepper::nonlinear(std::span<const cd> spectrum, std::span<cd> out) const {
    if (w_.is_zero()) {
        std::fill(out.begin(), out.end(), cd{0.0, 0.0});
        return;
    }
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
        tmp_[i] = spectrum[i] * mask_[i];
    }
    fft::inverse(tmp_, phys_);
    const Nonlinearity& w = w_;
    kernels::map(phys_, phys_, [&w](cd v) { return cd{w.derivative(v.real()), 0.0}; });
    fft::forward(phys_, out);
    kernels::multiply(out, std::span<const cd>(ddx_));
}

void FkdvStepper::advance(std::vector<cd>& v) const {
    const std::size_t n = v.size();
    const double h = dt_;
    // Lawson RK4 with E = exp(L h/2)
    nonlinear(v, a_);
    for (std::size_t i = 0; i < n; ++i) {
        a_[i] *= h;
        stage_[i] = half_[i] * (v[i] + 0.5 * a_[i]);
    }
    nonlinear(stage_, b_);
    for (std::size_t i = 0; i < n; ++i) {
        b_[i] *= h;
        stage_[i] = half_[i] * v[i] + 0.5 * b_[i];
    }
    nonlinear(stage_, c_);
    for (std::size_t i = 0; i < n; ++i) {
        c_[i] *= h;
        stage_[i] = full_[i] * v[i] + half_[i] * c_[i];
    }
    nonlinear(stage_, d_);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = full_[i] * v[i] + (full_[i] * a_[i] + 2.0 * half_[i] * (b_[i] + c_[i]) + h * d_[i]) / 6.0;
    }
}

Field FkdvStepper::step(const Field& u) const {
    if (!u.is_real()) {
        throw PreconditionError("step_fkdv: the state must be a real field");
    }
    if (u.grid() != grid_) {
        throw PreconditionError("step_fkdv: grid does not match the stepper");
    }
    const auto spec = u.spectrum();
    std::vector<cd> v(spec.begin(), spec.end());
    advance(v);
    return Field::from_spectrum(grid_, std::move(v), Field::Kind::real);
}

// ---------------------------------------------------------------------------

FnsStepper::FnsStepper(const Grid& grid, double dt, double s, Nonlinearity w)
    : grid_(grid), dt_(dt), w_(std::move(w)) {
    check_dt(dt);
    check_s(s);
    const auto& xi = grid.wavenumbers();
    linear_.resize(xi.size());
    for (std::size_t i = 0; i < xi.size(); ++i) {
        const double omega = s == 0.0 ? 1.0 : std::pow(std::abs(xi[i]), 2.0 * s);
        linear_[i] = std::polar(1.0, -0.5 * omega * dt);
    }
    spectrum_.resize(xi.size());
}

void FnsStepper::phase(std::vector<cd>& values, double t) const {
    if (w_.is_zero()) {
        return;
    }
    const Nonlinearity& w = w_;
    kernels::map(values, values, [&w, t](cd v) {
        const double r = std::abs(v);
        return v * std::polar(1.0, -0.5 * t * w.derivative_over_r(r));
    });
}

void FnsStepper::advance(std::vector<cd>& values) const {
    phase(values, 0.5 * dt_);
    fft::forward(values, spectrum_);
    kernels::multiply(spectrum_, std::span<const cd>(linear_));
    fft::inverse(spectrum_, values);
    phase(values, 0.5 * dt_);
}

Field FnsStepper::step(const Field& psi) const {
    if (psi.grid() != grid_) {
        throw PreconditionError("step_fns: grid does not match the stepper");
    }
    std::vector<cd> v(psi.values().begin(), psi.values().end());
    advance(v);
    return Field::complex(grid_, std::move(v));
}

Field step_fkdv(const Field& u, double dt, double s, const Nonlinearity& w, bool dealias) {
    return FkdvStepper(u.grid(), dt, s, w, dealias).step(u);
}

Field step_fns(const Field& psi, double dt, double s, const Nonlinearity& w) {
    return FnsStepper(psi.grid(), dt, s, w).step(psi);
}

// ---------------------------------------------------------------------------

double advisory_dt_ceiling(const Nonlinearity& w, const Field& u0) {
    const double amp = std::max(u0.max_abs(), 1e-12);
    const double curv = w.max_second_derivative(2.0 * amp);
    return curv > 0.0 ? 1.0 / curv : std::numeric_limits<double>::infinity();
}

namespace {

void record(EvolutionTrace& trace, const EvolutionConfig& cfg, double t, const Field& state,
            const SampleObserver& observer) {
    trace.times.push_back(t);
    trace.energy.push_back(energy(state, cfg.s, cfg.nonlinearity));
    trace.charge.push_back(charge(state, convention_of(cfg.family)));
    trace.tail_mass.push_back(tail_mass(state));
    if (cfg.keep_snapshots) {
        trace.snapshots.push_back({t, state});
    }
    if (observer) {
        observer(t, state);
    }
}

}  // namespace

EvolutionTrace run(const EvolutionConfig& cfg, const Field& u0, const SampleObserver& observer) {
    check_dt(cfg.dt);
    check_s(cfg.s);
    if (!(cfg.t_end >= 0.0) || !std::isfinite(cfg.t_end)) {
        throw PreconditionError("t_end must be nonnegative");
    }
    if (cfg.snapshot_stride == 0) {
        throw PreconditionError("snapshot stride must be positive");
    }
    if (cfg.family == Family::fkdv && !u0.is_real()) {
        throw PreconditionError("fkdv evolution needs a real initial field");
    }
    const Grid& grid = u0.grid();
    EvolutionTrace trace;

    std::size_t steps = static_cast<std::size_t>(std::ceil(cfg.t_end / cfg.dt - 1e-9));
    double dt = cfg.dt;
    if (steps > 0 && std::abs(static_cast<double>(steps) * dt - cfg.t_end) > 1e-12 * std::max(1.0, cfg.t_end)) {
        dt = cfg.t_end / static_cast<double>(steps);
        std::ostringstream msg;
        msg << "dt reduced to " << dt << " so that t_end is hit exactly";
        trace.warnings.push_back(msg.str());
    }
    const double ceiling = advisory_dt_ceiling(cfg.nonlinearity, u0);
    if (dt > ceiling) {
        std::ostringstream msg;
        msg << "dt = " << dt << " exceeds the advisory ceiling 1/max|W''| = " << ceiling;
        trace.warnings.push_back(msg.str());
    }

    const bool fkdv = cfg.family == Family::fkdv;
    std::vector<cd> state;
    if (fkdv) {
        state.assign(u0.spectrum().begin(), u0.spectrum().end());
    } else {
        state.assign(u0.values().begin(), u0.values().end());
    }
    auto to_field = [&](const std::vector<cd>& st) {
        return fkdv ? Field::from_spectrum(grid, st, Field::Kind::real) : Field::complex(grid, st);
    };

    std::optional<FkdvStepper> kdv;
    std::optional<FnsStepper> nls;
    if (steps > 0) {
        if (fkdv) {
            kdv.emplace(grid, dt, cfg.s, cfg.nonlinearity, cfg.dealias);
        } else {
            nls.emplace(grid, dt, cfg.s, cfg.nonlinearity);
        }
    }

    bool tail_warned = false;
    auto sample = [&](double t, const Field& f) {
        record(trace, cfg, t, f, observer);
        if (!tail_warned && trace.tail_mass.back() > 1e-4) {
            std::ostringstream msg;
            msg << "tail mass " << trace.tail_mass.back() << " exceeds 1e-4 at t = " << t
                << "; the box may be too small";
            trace.warnings.push_back(msg.str());
            tail_warned = true;
        }
    };

    sample(0.0, fkdv ? u0 : u0.as_complex());
    double norm_prev = squared_norm(state);
    for (std::size_t k = 1; k <= steps; ++k) {
        std::vector<cd> previous = state;
        if (fkdv) {
            kdv->advance(state);
        } else {
            nls->advance(state);
        }
        const double norm_now = squared_norm(state);
        const double t = static_cast<double>(k) * dt;
        const bool finite = std::isfinite(norm_now) && all_finite(state);
        if (!finite || (norm_prev > 0.0 && norm_now > 1e12 * norm_prev)) {
            std::ostringstream msg;
            msg << "blow-up detected at t = " << t << (finite ? " (norm grew by more than 1e6 in one step)"
                                                            : " (non-finite values)");
            throw BlowUpError(msg.str(), t - dt, to_field(previous), trace);
        }
        norm_prev = norm_now;
        if (k % cfg.snapshot_stride == 0 || k == steps) {
            sample(t, to_field(state));
        }
    }
    return trace;
}

double weak_form_residual(const Field& before, const Field& at, const Field& after, double dt, const Field& phi,
                          double s, const Nonlinearity& w) {
    check_dt(dt);
    Field ut = after - before;
    ut *= 1.0 / (2.0 * dt);
    const Field dphi = derivative_x(phi);
    const Field ddphi = derivative_x(fractional_derivative(phi, 2.0 * s));
    return inner(ut, phi) - inner(at, ddphi) - inner(nonlinear_term(at, w), dphi);
}

}  // namespace hylo
