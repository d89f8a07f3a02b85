#pragma once

#include <cmath>
#include <numbers>

#include "hylo/field.hpp"
#include "hylo/spectral.hpp"

namespace testing {

inline constexpr double pi = std::numbers::pi;

inline double rel_l2(const hylo::Field& a, const hylo::Field& b) {
    return hylo::l2_norm(a - b) / hylo::l2_norm(b);
}

inline double max_diff(const hylo::Field& a, const hylo::Field& b) {
    double m = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
    return m;
}

}  // namespace testing
