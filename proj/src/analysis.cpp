#include "hylo/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "hylo/fft.hpp"
#include "hylo/spectral.hpp"

namespace hylo {

namespace {

double wrap_shift(double tau, double len) {
    double t = std::fmod(tau + 0.5 * len, len);
    if (t < 0.0) {
        t += len;
    }
    return t - 0.5 * len;
}

// Cross-correlation sum A(tau) = dx/N sum_k a_k exp(-i xi_k tau) and its first
// two tau-derivatives. The Nyquist term follows the real-valued convention
// used by translate().
struct Correlation {
    const Grid& grid;
    std::vector<cd> a;

    void eval(double tau, cd& f, cd& df, cd& ddf) const {
        const auto& xi = grid.wavenumbers();
        const std::size_t ny = grid.nyquist_index();
        f = df = ddf = cd{0.0, 0.0};
        for (std::size_t k = 0; k < a.size(); ++k) {
            if (k == ny) {
                const double c = std::cos(xi[k] * tau), s = std::sin(xi[k] * tau);
                f += a[k] * c;
                df += -xi[k] * s * a[k];
                ddf += -xi[k] * xi[k] * c * a[k];
                continue;
            }
            const cd b = a[k] * std::polar(1.0, -xi[k] * tau);
            f += b;
            df += cd{0.0, -xi[k]} * b;
            ddf += -xi[k] * xi[k] * b;
        }
        const double w = grid.spacing() / static_cast<double>(a.size());
        f *= w;
        df *= w;
        ddf *= w;
    }
};

Alignment align(const Field& u, const Field& v, bool with_phase) {
    if (u.grid() != v.grid()) {
        throw PreconditionError("translation distance: grids do not match");
    }
    const Grid& grid = u.grid();
    const std::size_t n = grid.size();
    const double dx = grid.spacing();
    Correlation corr{grid, std::vector<cd>(n)};
    const auto su = u.spectrum();
    const auto sv = v.spectrum();
    for (std::size_t k = 0; k < n; ++k) {
        corr.a[k] = su[k] * std::conj(sv[k]);
    }
    std::vector<cd> on_grid(n);
    fft::forward(corr.a, on_grid);
    auto objective = [&](cd z) { return with_phase ? std::norm(z) : z.real(); };

    std::size_t peak = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
        const double val = objective(on_grid[j]);
        if (val > best) {
            best = val;
            peak = j;
        }
    }
    const double fm = objective(on_grid[(peak + n - 1) % n]);
    const double fp = objective(on_grid[(peak + 1) % n]);
    const double curv = fm - 2.0 * best + fp;
    double offset = curv < 0.0 ? 0.5 * (fm - fp) / curv : 0.0;
    offset = std::clamp(offset, -0.5, 0.5);
    const double start = (static_cast<double>(peak) + offset) * dx;
    double tau = start;

    for (int it = 0; it < 30; ++it) {
        cd f, df, ddf;
        corr.eval(tau, f, df, ddf);
        double g1 = 0.0, g2 = 0.0;
        if (with_phase) {
            g1 = 2.0 * (std::conj(f) * df).real();
            g2 = 2.0 * (std::norm(df) + (std::conj(f) * ddf).real());
        } else {
            g1 = df.real();
            g2 = ddf.real();
        }
        if (!(g2 < 0.0)) {
            break;
        }
        const double step = std::clamp(-g1 / g2, -dx, dx);
        tau += step;
        if (std::abs(tau - start) > dx) {
            tau = start;
            break;
        }
        if (std::abs(step) < 1e-15 * grid.length()) {
            break;
        }
    }

    Alignment out;
    out.shift = wrap_shift(tau, grid.length());
    Field moved = translate(u, out.shift);
    if (with_phase) {
        cd f, df, ddf;
        corr.eval(out.shift, f, df, ddf);
        out.phase = std::abs(f) > 0.0 ? -std::arg(f) : 0.0;
        moved = std::polar(1.0, out.phase) * moved.as_complex();
        out.distance = l2_norm(moved - v.as_complex());
    } else {
        out.distance = l2_norm(moved - v);
    }
    return out;
}

}  // namespace

Alignment translation_distance(const Field& u, const Field& v) { return align(u, v, false); }

Alignment orbit_distance(const Field& u, const Field& v) { return align(u, v, true); }

namespace {

Field normalized(Field f) {
    const double n = l2_norm(f);
    if (n > 0.0) {
        f *= 1.0 / n;
    }
    return f;
}

std::vector<cd> random_spectrum(const Grid& grid, std::uint64_t seed, const std::function<bool(std::size_t)>& keep) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal;
    std::vector<cd> spec(grid.size());
    for (std::size_t k = 0; k < spec.size(); ++k) {
        const double re = normal(gen);
        const double im = normal(gen);
        spec[k] = keep(k) ? cd{re, im} : cd{0.0, 0.0};
    }
    return spec;
}

}  // namespace

Field random_localized_field(const Grid& grid, std::uint64_t seed, double width, double max_wavenumber, bool complex) {
    if (!(width > 0.0) || !(max_wavenumber >= 0.0)) {
        throw PreconditionError("random field: width and max wavenumber must be positive");
    }
    const auto& xi = grid.wavenumbers();
    const std::size_t ny = grid.nyquist_index();
    auto spec = random_spectrum(grid, seed, [&](std::size_t k) { return k != ny && std::abs(xi[k]) <= max_wavenumber; });
    Field noise = Field::from_spectrum(grid, std::move(spec), complex ? Field::Kind::complex : Field::Kind::real);
    auto vals = noise.mutable_values();
    const auto& x = grid.nodes();
    for (std::size_t j = 0; j < vals.size(); ++j) {
        vals[j] *= std::exp(-0.5 * x[j] * x[j] / (width * width));
    }
    return normalized(std::move(noise));
}

Field random_band_limited_field(const Grid& grid, std::uint64_t seed, long kmax, bool complex) {
    if (kmax < 1) {
        throw PreconditionError("random field: kmax must be at least 1");
    }
    auto spec = random_spectrum(grid, seed, [&](std::size_t k) {
        const long m = std::labs(grid.mode(k));
        return m >= 1 && m <= kmax && k != grid.nyquist_index();
    });
    return normalized(Field::from_spectrum(grid, std::move(spec), complex ? Field::Kind::complex : Field::Kind::real));
}

double fitted_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = std::min(x.size(), y.size());
    if (n < 2) {
        return 0.0;
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxx > 0.0 ? sxy / sxx : 0.0;
}

double StabilityReport::speed_error() const {
    const double diff = std::abs(fitted_speed - expected_speed);
    return expected_speed != 0.0 ? diff / std::abs(expected_speed) : diff;
}

StabilityReport orbital_stability_experiment(const SolitonSolution& sol, const StabilityOptions& opt) {
    if (!(opt.epsilon >= 0.0) || opt.epsilon > 0.1) {
        throw PreconditionError("stability: epsilon must lie in [0, 0.1]");
    }
    const bool fkdv = sol.convention == ChargeConvention::fkdv;
    const Field u = fkdv ? sol.profile.real_part() : sol.profile.as_complex();
    const Grid& grid = u.grid();

    StabilityReport rep;
    rep.epsilon = opt.epsilon;
    rep.profile_norm = l2_norm(u);
    rep.expected_speed = fkdv ? sol.multiplier : 0.0;
    if (!sol.converged()) {
        rep.warnings.push_back("the soliton solution is not converged (" + to_string(sol.status) + ")");
    }

    Field u0 = u;
    if (opt.epsilon > 0.0) {
        Field p = opt.perturbation ? (fkdv ? opt.perturbation->real_part() : opt.perturbation->as_complex())
                                   : random_localized_field(grid, opt.seed, 8.0, 2.0, !fkdv);
        if (p.grid() != grid) {
            throw PreconditionError("stability: perturbation grid does not match the profile");
        }
        p -= (inner(p, u) / inner(u, u)) * u;
        const double pn = l2_norm(p);
        if (!(pn > 0.0)) {
            throw PreconditionError("stability: perturbation is parallel to the profile");
        }
        u0 = u + (opt.epsilon * rep.profile_norm / pn) * p;
        u0 = rescale_to_charge(u0, charge(u, sol.convention), sol.convention);
    }

    EvolutionConfig cfg;
    cfg.family = fkdv ? Family::fkdv : Family::fns;
    cfg.s = sol.s;
    cfg.nonlinearity = sol.nonlinearity;
    cfg.dt = opt.dt;
    cfg.t_end = opt.t_end;
    cfg.snapshot_stride = opt.sample_stride;
    cfg.dealias = opt.dealias;

    auto observer = [&](double t, const Field& state) {
        const Alignment al = fkdv ? translation_distance(u, state) : orbit_distance(u, state);
        double shift = al.shift;
        if (!rep.shift.empty()) {
            const double prev = rep.shift.back();
            shift += grid.length() * std::round((prev - shift) / grid.length());
        }
        rep.times.push_back(t);
        rep.distance.push_back(al.distance);
        rep.shift.push_back(shift);
    };

    try {
        const EvolutionTrace trace = run(cfg, u0, observer);
        rep.energy = trace.energy;
        rep.charge = trace.charge;
        rep.warnings.insert(rep.warnings.end(), trace.warnings.begin(), trace.warnings.end());
    } catch (const BlowUpError& e) {
        rep.blew_up = true;
        rep.failure = e.what();
        rep.energy = e.partial_trace().energy;
        rep.charge = e.partial_trace().charge;
    }

    if (!rep.distance.empty()) {
        rep.initial_distance = rep.distance.front();
        rep.max_distance = *std::max_element(rep.distance.begin(), rep.distance.end());
    }
    rep.fitted_speed = fitted_slope(rep.times, rep.shift);
    return rep;
}

double smoothstep7(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double t4 = t * t * t * t;
    return t4 * (35.0 + t * (-84.0 + t * (70.0 - 20.0 * t)));
}

Field bump_profile(double radius, double s0, const Grid& grid) {
    if (!(radius > 0.0) || !(s0 > 0.0)) {
        throw PreconditionError("bump profile: R and s0 must be positive");
    }
    if (!(radius + 1.0 < 0.5 * grid.length())) {
        throw PreconditionError("bump profile: R + 1 must be smaller than L/2");
    }
    return Field::from_function(grid, [=](double x) { return s0 * smoothstep7(radius + 1.0 - std::abs(x)); });
}

HylomorphyReport hylomorphy_scan(const Nonlinearity& w, double s, double s0, const std::vector<double>& radii,
                                 const Grid& grid) {
    if (radii.empty()) {
        throw PreconditionError("hylomorphy scan: empty list of radii");
    }
    for (double r : radii) {
        bump_profile(r, s0, grid);  // validates
    }
    HylomorphyReport rep;
    rep.radii = radii;
    rep.ratios.assign(radii.size(), 0.0);
    rep.seminorms.assign(radii.size(), 0.0);
    rep.e0 = w.e0();
    rep.limit_estimate = w.e0() + w.remainder(s0) / (s0 * s0);

    const long count = static_cast<long>(radii.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) {
        const auto k = static_cast<std::size_t>(i);
        const Field u = bump_profile(radii[k], s0, grid);
        rep.ratios[k] = hylenic_ratio(u, s, w, ChargeConvention::fns);
        const double sn = sobolev_seminorm(u, s);
        rep.seminorms[k] = sn * sn;
    }

    // Lambda = a + b / R
    const std::size_t n = radii.size();
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = 1.0 / radii[i];
    }
    if (n >= 2) {
        rep.slope = fitted_slope(x, rep.ratios);
        double mx = 0.0, my = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            mx += x[i];
            my += rep.ratios[i];
        }
        mx /= static_cast<double>(n);
        my /= static_cast<double>(n);
        rep.intercept = my - rep.slope * mx;
        double rss = 0.0, sxx = 0.0, sx2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = rep.ratios[i] - (rep.intercept + rep.slope * x[i]);
            rss += r * r;
            rep.fit_residual = std::max(rep.fit_residual, std::abs(r));
            sxx += (x[i] - mx) * (x[i] - mx);
            sx2 += x[i] * x[i];
        }
        if (n >= 3 && sxx > 0.0) {
            const double sigma2 = rss / static_cast<double>(n - 2);
            rep.intercept_error = std::sqrt(sigma2 * sx2 / (static_cast<double>(n) * sxx));
        }
    } else {
        rep.intercept = rep.ratios.front();
    }
    const double min_ratio = *std::min_element(rep.ratios.begin(), rep.ratios.end());
    rep.verdict = min_ratio < rep.e0 - rep.intercept_error;
    return rep;
}

GnExponents gn_exponents(double p, double s) {
    GnExponents g;
    if (!std::isfinite(p) || !std::isfinite(s) || !(s > 0.0) || !(p > 0.0)) {
        g.theta = g.beta = std::numeric_limits<double>::quiet_NaN();
        return g;
    }
    g.theta = (p - 2.0) / (2.0 * p * s);  // (1/2 - 1/p)/s, rounded once
    const double denom = 4.0 * s + 2.0 - p;
    g.beta = denom == 0.0 ? std::numeric_limits<double>::infinity() : (2.0 * p * s + 2.0 - p) / denom;
    g.admissible = s >= 0.5 && p > 2.0 && p < 4.0 * s + 2.0 && g.theta > 0.0 && g.theta < 1.0 && g.beta > 1.0 &&
                   std::isfinite(g.beta);
    return g;
}

CoercivityReport coercivity_witness(const Field& phi, double s, const Nonlinearity& w, ChargeConvention convention,
                                    double alpha_max, double safety) {
    CoercivityReport rep;
    const auto& pl = w.metadata().power_law;
    if (!pl) {
        return rep;
    }
    const GnExponents g = gn_exponents(pl->exponent, s);
    rep.beta = g.beta;
    rep.admissible = g.admissible;
    if (!g.admissible) {
        return rep;
    }
    auto sample = [&](double alpha, double& e, double& c) {
        const Field u = alpha * phi;
        e = energy(u, s, w);
        c = charge(u, convention);
    };
    double a_emp = 0.0;
    const int coarse = 20;
    for (int i = 1; i <= coarse; ++i) {
        double e, c;
        sample(alpha_max * i / coarse, e, c);
        if (c > 0.0) {
            a_emp = std::max(a_emp, -e / std::pow(c, rep.beta));
        }
    }
    rep.a = safety * a_emp;
    rep.min_value = std::numeric_limits<double>::infinity();
    const int fine = 10 * coarse;
    for (int i = 0; i <= fine; ++i) {
        double e, c;
        sample(alpha_max * i / fine, e, c);
        rep.min_value = std::min(rep.min_value, e + rep.a * std::pow(c, rep.beta));
    }
    rep.holds = rep.min_value >= -1e-12;
    return rep;
}

}  // namespace hylo
