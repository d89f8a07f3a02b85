#pragma once

#include <memory>
#include <stdexcept>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hylo {

/// Malformed or unknown nonlinearity catalog key.
class NonlinearityKeyError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Single homogeneous remainder N(r) = coefficient * |r|^p (or r^p).
struct PowerLaw {
    double exponent = 0.0;
    double coefficient = 0.0;
    bool absolute = true;
    int sign() const { return coefficient < 0.0 ? -1 : 1; }
};

/**
 * The potential W = F(r) with F(0) = F'(0) = 0, split as
 * W(r) = E0 r^2 + N(r), E0 = F''(0)/2.
 *
 * Real FKdV states evaluate F at the signed value u; complex FNS states
 * evaluate it at |psi|. Polynomial potentials are sums of terms
 * c * r^p (integer p, sign kept) or c * |r|^p. A tabulated potential is
 * interpolated with a monotone cubic (PCHIP) and throws std::domain_error
 * outside its table.
 */
class Nonlinearity {
public:
    struct Term {
        double coefficient = 0.0;
        double exponent = 2.0;
        bool absolute = false;
    };

    struct Metadata {
        std::optional<PowerLaw> power_law;
        /// q1 <= q2 bounding |N'(r)| <= c1 (r^{q1-1} + r^{q2-1}).
        std::optional<std::pair<double, double>> growth;
        /// A point s0 with N(s0) < 0, when one exists.
        std::optional<double> negative_point;
    };

    static Nonlinearity zero();
    /// F = r^3/6; with s = 1/2 the FKdV equation is Benjamin-Ono.
    static Nonlinearity bo();
    /// F = -r^3/6; with s = 1 the FKdV equation is KdV.
    static Nonlinearity kdv();
    /// F = -r^4/4; with s = 1 the FNS equation is Gross-Pitaevskii.
    static Nonlinearity gpe();
    /// F = sign |r|^p / (p (p-1)).
    static Nonlinearity power(double p, int sign);
    /// F = sign |r|^p / p.
    static Nonlinearity nls_power(double p, int sign);
    /// F = sum_k coefficients[k] r^(k+2).
    static Nonlinearity poly(const std::vector<double>& coefficients);
    static Nonlinearity polynomial(std::vector<Term> terms, std::string key);
    static Nonlinearity tabulated(std::vector<double> r, std::vector<double> f, std::string key);
    /// Two whitespace-separated columns r F(r); '#' starts a comment.
    static Nonlinearity table_file(const std::string& path);

    /// Catalog keys: "zero", "bo", "kdv", "gpe", "power(p, sign)",
    /// "nls_power(p, sign)", "poly(c2, c3, ...)", "table(path)".
    static Nonlinearity parse(const std::string& key);

    double value(double r) const;
    double derivative(double r) const;
    double second_derivative(double r) const;

    double e0() const { return e0_; }
    /// N(r) = F(r) - E0 r^2
    double remainder(double r) const { return value(r) - e0_ * r * r; }
    double remainder_derivative(double r) const { return derivative(r) - 2.0 * e0_ * r; }

    /// F'(r)/r, extended continuously by F''(0) at r = 0.
    double derivative_over_r(double r) const;

    const std::string& key() const { return key_; }
    const Metadata& metadata() const { return metadata_; }
    bool is_polynomial() const { return table_ == nullptr; }
    bool is_zero() const;
    const std::vector<Term>& terms() const { return terms_; }

    /// F + k r^2 (E0 grows by k).
    Nonlinearity plus_quadratic(double k) const;

    /// max |F''(r)| sampled on [-rmax, rmax].
    double max_second_derivative(double rmax) const;

private:
    struct Table;

    Nonlinearity() = default;
    void finalize();

    std::string key_;
    std::vector<Term> terms_;
    std::shared_ptr<const Table> table_;
    double quadratic_shift_ = 0.0;
    double e0_ = 0.0;
    Metadata metadata_;
};

/// Numerical spot checks of the standing hypotheses on W.
struct HypothesisCheck {
    bool vanishes_at_zero = false;          ///< F(0) = 0
    bool derivative_vanishes = false;       ///< F'(0) = 0
    bool remainder_subquadratic = false;    ///< |N(r)|/r^2 decreasing to 0 on a decade of small r
    std::optional<double> negative_point;   ///< some r with N(r) < 0
};

HypothesisCheck check_hypotheses(const Nonlinearity& w);

/// Energy shift for the Schroedinger family: W1 = W + k r^2 with k = 1 - E0,
/// so that E0(W1) = 1. If psi1 solves the shifted equation then
/// psi = psi1 * exp(i * phase_rate * t) solves the original one.
struct PhaseShift {
    Nonlinearity shifted;
    double phase_rate = 0.0;
};
PhaseShift fns_normalizing_shift(const Nonlinearity& w);
PhaseShift fns_shift(const Nonlinearity& w, double k);

/// Galilean shift for the KdV family: W1 = W + k r^2. If v solves the shifted
/// equation then u(t, x) = v(t, x - frame_velocity * t) solves the original.
struct GalileanShift {
    Nonlinearity shifted;
    double frame_velocity = 0.0;
};
GalileanShift fkdv_normalizing_shift(const Nonlinearity& w);
GalileanShift fkdv_shift(const Nonlinearity& w, double k);

}  // namespace hylo
