#include "hylo/field.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "hylo/fft.hpp"
#include "hylo/kernels.hpp"

namespace hylo {

Field::Field(Grid grid, Kind kind) : grid_(std::move(grid)), kind_(kind), values_(grid_.size()) {}

Field Field::real(Grid grid, std::span<const double> values) {
    if (values.size() != grid.size()) {
        throw PreconditionError("field: value count does not match grid");
    }
    Field f(std::move(grid), Kind::real);
    std::transform(values.begin(), values.end(), f.values_.begin(), [](double v) { return cd{v, 0.0}; });
    return f;
}

Field Field::complex(Grid grid, std::vector<cd> values) {
    if (values.size() != grid.size()) {
        throw PreconditionError("field: value count does not match grid");
    }
    Field f(std::move(grid), Kind::complex);
    f.values_ = std::move(values);
    return f;
}

Field Field::from_function(Grid grid, const std::function<double(double)>& fn) {
    Field f(std::move(grid), Kind::real);
    const auto& x = f.grid_.nodes();
    for (std::size_t j = 0; j < x.size(); ++j) {
        f.values_[j] = cd{fn(x[j]), 0.0};
    }
    return f;
}

Field Field::from_complex_function(Grid grid, const std::function<cd(double)>& fn) {
    Field f(std::move(grid), Kind::complex);
    const auto& x = f.grid_.nodes();
    for (std::size_t j = 0; j < x.size(); ++j) {
        f.values_[j] = fn(x[j]);
    }
    return f;
}

Field Field::from_spectrum(Grid grid, std::vector<cd> spectrum, Kind kind) {
    if (spectrum.size() != grid.size()) {
        throw PreconditionError("field: spectrum size does not match grid");
    }
    Field f(std::move(grid), kind);
    fft::inverse(spectrum, f.values_);
    if (kind == Kind::real) {
        f.drop_imaginary();
    } else {
        f.spectrum_ = std::move(spectrum);
        f.spectrum_valid_ = true;
    }
    return f;
}

std::vector<double> Field::real_values() const {
    std::vector<double> out(values_.size());
    std::transform(values_.begin(), values_.end(), out.begin(), [](cd v) { return v.real(); });
    return out;
}

std::span<cd> Field::mutable_values() {
    spectrum_valid_ = false;
    return values_;
}

void Field::set(std::size_t j, cd value) {
    spectrum_valid_ = false;
    values_.at(j) = is_real() ? cd{value.real(), 0.0} : value;
}

std::span<const cd> Field::spectrum() const {
    if (!spectrum_valid_) {
        spectrum_.resize(values_.size());
        fft::forward(values_, spectrum_);
        spectrum_valid_ = true;
    }
    return spectrum_;
}

Field Field::as_complex() const {
    Field f = *this;
    f.kind_ = Kind::complex;
    return f;
}

Field Field::real_part() const {
    Field f = *this;
    f.kind_ = Kind::real;
    f.drop_imaginary();
    return f;
}

double Field::max_abs() const {
    double m = 0.0;
    for (const auto& v : values_) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

double Field::max_imag() const {
    double m = 0.0;
    for (const auto& v : values_) {
        m = std::max(m, std::abs(v.imag()));
    }
    return m;
}

void Field::require_same_grid(const Field& other) const {
    if (grid_ != other.grid_) {
        throw PreconditionError("field: grids do not match");
    }
}

void Field::drop_imaginary() {
    for (auto& v : values_) {
        v = cd{v.real(), 0.0};
    }
    spectrum_valid_ = false;
}

Field& Field::operator+=(const Field& other) {
    require_same_grid(other);
    kernels::axpy(values_, cd{1.0, 0.0}, other.values_);
    if (!other.is_real()) {
        kind_ = Kind::complex;
    }
    spectrum_valid_ = false;
    return *this;
}

Field& Field::operator-=(const Field& other) {
    require_same_grid(other);
    kernels::axpy(values_, cd{-1.0, 0.0}, other.values_);
    if (!other.is_real()) {
        kind_ = Kind::complex;
    }
    spectrum_valid_ = false;
    return *this;
}

Field& Field::operator*=(double alpha) {
    for (auto& v : values_) {
        v *= alpha;
    }
    if (spectrum_valid_) {
        for (auto& v : spectrum_) {
            v *= alpha;
        }
    }
    return *this;
}

Field& Field::operator*=(cd alpha) {
    if (alpha.imag() == 0.0) {
        return *this *= alpha.real();
    }
    kind_ = Kind::complex;
    for (auto& v : values_) {
        v *= alpha;
    }
    spectrum_valid_ = false;
    return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(double alpha, Field a) { return a *= alpha; }
Field operator*(cd alpha, Field a) { return a *= alpha; }

}  // namespace hylo
