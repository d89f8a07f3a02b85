#include "hylo/grid.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace hylo {

Grid::Grid(double box_length, std::size_t num_points) : length_(box_length), size_(num_points) {
    if (!(box_length > 0.0) || !std::isfinite(box_length)) {
        throw PreconditionError("grid: box length must be positive and finite");
    }
    if (num_points % 2 != 0) {
        throw PreconditionError("grid: number of points must be even");
    }
    if (num_points < 8) {
        throw PreconditionError("grid: need at least 8 points");
    }
    std::vector<double> x(size_), xi(size_);
    const double dx = spacing();
    for (std::size_t j = 0; j < size_; ++j) {
        x[j] = -0.5 * length_ + static_cast<double>(j) * dx;
        xi[j] = wavenumber_spacing() * static_cast<double>(mode(j));
    }
    nodes_ = std::make_shared<const std::vector<double>>(std::move(x));
    wavenumbers_ = std::make_shared<const std::vector<double>>(std::move(xi));
}

double Grid::wavenumber_spacing() const { return 2.0 * std::numbers::pi / length_; }

double Grid::nyquist() const { return std::numbers::pi * static_cast<double>(size_) / length_; }

double Grid::node(std::size_t j) const { return nodes_->at(j); }

long Grid::mode(std::size_t i) const {
    const auto n = static_cast<long>(size_);
    const auto k = static_cast<long>(i);
    return k < n / 2 ? k : k - n;
}

double Grid::wavenumber(std::size_t i) const { return wavenumbers_->at(i); }

std::string Grid::describe() const {
    std::ostringstream os;
    os.precision(17);
    os << "L=" << length_ << " N=" << size_;
    return os.str();
}

Grid make_grid(double box_length, std::size_t num_points) { return Grid(box_length, num_points); }

}  // namespace hylo
