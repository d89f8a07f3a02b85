#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "hylo/grid.hpp"

namespace hylo {

using cd = std::complex<double>;

/**
 * A function sampled on a Grid, with lazy access to its DFT.
 *
 * Samples are stored as complex numbers in both cases; a real-tagged field
 * keeps its imaginary parts identically zero. The spectrum is the
 * unnormalized DFT of the samples and is cached until the next mutation.
 * The cache makes concurrent const access to one Field object unsafe;
 * distinct Field objects are independent.
 */
class Field {
public:
    enum class Kind { real, complex };

    /// Zero field.
    Field(Grid grid, Kind kind);

    static Field real(Grid grid, std::span<const double> values);
    static Field complex(Grid grid, std::vector<cd> values);
    static Field from_function(Grid grid, const std::function<double(double)>& f);
    static Field from_complex_function(Grid grid, const std::function<cd(double)>& f);
    /// Builds the field whose DFT is `spectrum`. For Kind::real the imaginary
    /// residue of the inverse transform is discarded.
    static Field from_spectrum(Grid grid, std::vector<cd> spectrum, Kind kind);

    const Grid& grid() const { return grid_; }
    std::size_t size() const { return values_.size(); }
    Kind kind() const { return kind_; }
    bool is_real() const { return kind_ == Kind::real; }

    std::span<const cd> values() const { return values_; }
    cd operator[](std::size_t j) const { return values_[j]; }
    std::vector<double> real_values() const;

    /// Writable view of the samples; invalidates the spectrum cache.
    /// For real fields the caller must keep imaginary parts at zero.
    std::span<cd> mutable_values();
    void set(std::size_t j, cd value);

    std::span<const cd> spectrum() const;

    Field as_complex() const;
    /// Real part as a real-tagged field.
    Field real_part() const;

    double max_abs() const;
    double max_imag() const;

    Field& operator+=(const Field& other);
    Field& operator-=(const Field& other);
    Field& operator*=(double alpha);
    Field& operator*=(cd alpha);

private:
    void require_same_grid(const Field& other) const;
    void drop_imaginary();

    Grid grid_;
    Kind kind_;
    std::vector<cd> values_;
    mutable std::vector<cd> spectrum_;
    mutable bool spectrum_valid_ = false;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double alpha, Field a);
Field operator*(cd alpha, Field a);

}  // namespace hylo
