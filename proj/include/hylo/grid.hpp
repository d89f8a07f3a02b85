#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace hylo {

/// Thrown when an operation's precondition on its arguments fails.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/**
 * Periodic box [-L/2, L/2) sampled at N equispaced nodes.
 *
 * Node j sits at x_j = -L/2 + j L/N. Wavenumbers are stored in DFT order
 * (k = 0, 1, ..., N/2-1, -N/2, ..., -1) with xi_k = 2 pi k / L, so index N/2
 * holds the Nyquist mode xi = -pi N / L.
 */
class Grid {
public:
    Grid(double box_length, std::size_t num_points);

    double length() const { return length_; }
    std::size_t size() const { return size_; }
    double spacing() const { return length_ / static_cast<double>(size_); }
    double wavenumber_spacing() const;
    double nyquist() const;

    double node(std::size_t j) const;
    /// Integer mode number of DFT index i, in [-N/2, N/2).
    long mode(std::size_t i) const;
    double wavenumber(std::size_t i) const;
    std::size_t nyquist_index() const { return size_ / 2; }

    const std::vector<double>& nodes() const { return *nodes_; }
    const std::vector<double>& wavenumbers() const { return *wavenumbers_; }

    bool operator==(const Grid& other) const {
        return length_ == other.length_ && size_ == other.size_;
    }
    bool operator!=(const Grid& other) const { return !(*this == other); }

    std::string describe() const;

private:
    double length_;
    std::size_t size_;
    // Immutable and shared between copies.
    std::shared_ptr<const std::vector<double>> nodes_;
    std::shared_ptr<const std::vector<double>> wavenumbers_;
};

/// Validating factory: L > 0, N even and N >= 8.
Grid make_grid(double box_length, std::size_t num_points);

}  // namespace hylo
