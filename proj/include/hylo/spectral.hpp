#pragma once

#include <functional>
#include <vector>

#include "hylo/field.hpp"

namespace hylo {

/// Symmetry class of a Fourier symbol, used to decide whether a real input
/// stays real.
enum class Parity {
    even_real,      ///< m(-xi) = m(xi), real valued (|xi|^s)
    odd_imaginary,  ///< m(-xi) = -m(xi), purely imaginary (i xi, -i sgn xi)
    general,
};

struct Multiplier {
    std::function<cd(double)> symbol;
    Parity parity = Parity::general;

    /// Symbol sampled at the grid wavenumbers (DFT order). Odd symbols are
    /// zeroed at the Nyquist index, which has no sign partner.
    std::vector<cd> sample(const Grid& grid) const;
};

Multiplier fractional_symbol(double s);
Multiplier hilbert_symbol();
Multiplier derivative_symbol();

/// Applies a multiplier. A real input through an even-real or odd-imaginary
/// symbol yields a real-tagged result.
Field apply(const Field& u, const Multiplier& m);
/// Same transform without the realness projection: always complex-tagged,
/// so the imaginary round-off can be inspected.
Field apply_raw(const Field& u, const Multiplier& m);

/// D^s u, symbol |xi|^s, with |0|^s = 0 for s > 0 and D^0 = identity.
Field fractional_derivative(const Field& u, double s);
/// Symbol -i sgn(xi), sgn(0) = 0.
Field hilbert_transform(const Field& u);
/// Symbol i xi.
Field derivative_x(const Field& u);

/// u(x - tau) by spectral interpolation (Nyquist mode kept real).
Field translate(const Field& u, double tau);

/// 2/3-rule: zeroes every mode with |k| > N/3.
Field dealias(const Field& u);
/// Keeps only modes with |k| <= kmax.
Field band_limit(const Field& u, long kmax);

/// dx * sum u_j conj(v_j)
cd inner_complex(const Field& u, const Field& v);
/// Real part of inner_complex: the symmetric L2 pairing.
double inner(const Field& u, const Field& v);
double l2_norm(const Field& u);
/// ||D^s u||_{L2}; equals the homogeneous Sobolev seminorm of order s.
double sobolev_seminorm(const Field& u, double s);

}  // namespace hylo
