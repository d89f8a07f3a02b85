#include "hylo/spectral.hpp"

#include <cmath>
#include <cstdlib>

#include "hylo/kernels.hpp"

namespace hylo {

std::vector<cd> Multiplier::sample(const Grid& grid) const {
    const auto& xi = grid.wavenumbers();
    std::vector<cd> out(xi.size());
    for (std::size_t i = 0; i < xi.size(); ++i) {
        out[i] = symbol(xi[i]);
    }
    if (parity == Parity::odd_imaginary) {
        out[grid.nyquist_index()] = cd{0.0, 0.0};
    }
    return out;
}

Multiplier fractional_symbol(double s) {
    if (!(s >= 0.0)) {
        throw PreconditionError("fractional derivative: order must be nonnegative");
    }
    if (s == 0.0) {
        return {[](double) { return cd{1.0, 0.0}; }, Parity::even_real};
    }
    return {[s](double xi) { return cd{std::pow(std::abs(xi), s), 0.0}; }, Parity::even_real};
}

Multiplier hilbert_symbol() {
    return {[](double xi) {
                const double sgn = xi > 0.0 ? 1.0 : (xi < 0.0 ? -1.0 : 0.0);
                return cd{0.0, -sgn};
            },
            Parity::odd_imaginary};
}

Multiplier derivative_symbol() {
    return {[](double xi) { return cd{0.0, xi}; }, Parity::odd_imaginary};
}

namespace {

std::vector<cd> transformed_spectrum(const Field& u, const Multiplier& m) {
    const auto spec = u.spectrum();
    std::vector<cd> out(spec.begin(), spec.end());
    const auto symbol = m.sample(u.grid());
    kernels::multiply(out, std::span<const cd>(symbol));
    return out;
}

}  // namespace

Field apply(const Field& u, const Multiplier& m) {
    const bool stays_real = u.is_real() && m.parity != Parity::general;
    return Field::from_spectrum(u.grid(), transformed_spectrum(u, m),
                                stays_real ? Field::Kind::real : Field::Kind::complex);
}

Field apply_raw(const Field& u, const Multiplier& m) {
    return Field::from_spectrum(u.grid(), transformed_spectrum(u, m), Field::Kind::complex);
}

Field fractional_derivative(const Field& u, double s) {
    if (!(s >= 0.0)) {
        throw PreconditionError("fractional derivative: order must be nonnegative");
    }
    if (s == 0.0) {
        return u;
    }
    return apply(u, fractional_symbol(s));
}

Field hilbert_transform(const Field& u) { return apply(u, hilbert_symbol()); }

Field derivative_x(const Field& u) { return apply(u, derivative_symbol()); }

Field translate(const Field& u, double tau) {
    const auto& grid = u.grid();
    const auto spec = u.spectrum();
    std::vector<cd> out(spec.begin(), spec.end());
    const auto& xi = grid.wavenumbers();
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] *= std::polar(1.0, -xi[i] * tau);
    }
    out[grid.nyquist_index()] = spec[grid.nyquist_index()] * std::cos(grid.nyquist() * tau);
    return Field::from_spectrum(grid, std::move(out), u.kind());
}

Field band_limit(const Field& u, long kmax) {
    const auto& grid = u.grid();
    const auto spec = u.spectrum();
    std::vector<cd> out(spec.begin(), spec.end());
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (std::labs(grid.mode(i)) > kmax) {
            out[i] = cd{0.0, 0.0};
        }
    }
    return Field::from_spectrum(grid, std::move(out), u.kind());
}

Field dealias(const Field& u) { return band_limit(u, static_cast<long>(u.size()) / 3); }

cd inner_complex(const Field& u, const Field& v) {
    if (u.grid() != v.grid()) {
        throw PreconditionError("inner: grids do not match");
    }
    return u.grid().spacing() * kernels::dot(u.values(), v.values());
}

double inner(const Field& u, const Field& v) { return inner_complex(u, v).real(); }

double l2_norm(const Field& u) { return std::sqrt(u.grid().spacing() * kernels::norm2(u.values())); }

double sobolev_seminorm(const Field& u, double s) { return l2_norm(fractional_derivative(u, s)); }

}  // namespace hylo
