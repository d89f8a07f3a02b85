#include "hylo/nonlinearity.hpp"

// pchip.hpp calls isnan unqualified
#include <math.h>

#include <boost/math/interpolators/pchip.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace hylo {

struct Nonlinearity::Table {
    using Interpolator = boost::math::interpolators::pchip<std::vector<double>>;
    double r_min = 0.0;
    double r_max = 0.0;
    double h0 = 0.0;  // smallest nonzero |r| in the table
    std::unique_ptr<Interpolator> f;

    void require_in_range(double r) const {
        if (r < r_min || r > r_max) {
            std::ostringstream os;
            os << "tabulated nonlinearity evaluated at r=" << r << " outside [" << r_min << ", " << r_max << "]";
            throw std::domain_error(os.str());
        }
    }
};

namespace {

double term_value(const Nonlinearity::Term& t, double r) {
    if (t.absolute) {
        return t.coefficient * std::pow(std::abs(r), t.exponent);
    }
    return t.coefficient * std::pow(r, t.exponent);
}

double term_derivative(const Nonlinearity::Term& t, double r) {
    const double p = t.exponent;
    if (t.absolute) {
        const double sgn = r > 0.0 ? 1.0 : (r < 0.0 ? -1.0 : 0.0);
        return t.coefficient * p * std::pow(std::abs(r), p - 1.0) * sgn;
    }
    return t.coefficient * p * std::pow(r, p - 1.0);
}

double term_second_derivative(const Nonlinearity::Term& t, double r) {
    const double p = t.exponent;
    if (p == 2.0) {
        return 2.0 * t.coefficient;
    }
    if (t.absolute) {
        return t.coefficient * p * (p - 1.0) * std::pow(std::abs(r), p - 2.0);
    }
    return t.coefficient * p * (p - 1.0) * std::pow(r, p - 2.0);
}

bool is_integer(double p) { return std::floor(p) == p; }

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\n\r");
    auto e = s.find_last_not_of(" \t\n\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

double parse_number(const std::string& text, const std::string& key) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (trim(text.substr(used)).empty()) {
            return v;
        }
    } catch (const std::exception&) {
    }
    throw NonlinearityKeyError("nonlinearity key '" + key + "': bad number '" + text + "'");
}

}  // namespace

Nonlinearity Nonlinearity::zero() { return polynomial({}, "zero"); }

Nonlinearity Nonlinearity::bo() { return polynomial({{1.0 / 6.0, 3.0, false}}, "bo"); }

Nonlinearity Nonlinearity::kdv() { return polynomial({{-1.0 / 6.0, 3.0, false}}, "kdv"); }

Nonlinearity Nonlinearity::gpe() { return polynomial({{-0.25, 4.0, false}}, "gpe"); }

Nonlinearity Nonlinearity::power(double p, int sign) {
    if (!(p > 1.0) || (sign != 1 && sign != -1)) {
        throw NonlinearityKeyError("power(p, sign): need p > 1 and sign = +1 or -1");
    }
    std::ostringstream key;
    key.precision(17);
    key << "power(" << p << ", " << sign << ")";
    return polynomial({{static_cast<double>(sign) / (p * (p - 1.0)), p, true}}, key.str());
}

Nonlinearity Nonlinearity::nls_power(double p, int sign) {
    if (!(p > 1.0) || (sign != 1 && sign != -1)) {
        throw NonlinearityKeyError("nls_power(p, sign): need p > 1 and sign = +1 or -1");
    }
    std::ostringstream key;
    key.precision(17);
    key << "nls_power(" << p << ", " << sign << ")";
    return polynomial({{static_cast<double>(sign) / p, p, true}}, key.str());
}

Nonlinearity Nonlinearity::poly(const std::vector<double>& coefficients) {
    std::vector<Term> terms;
    std::ostringstream key;
    key.precision(17);
    key << "poly(";
    for (std::size_t k = 0; k < coefficients.size(); ++k) {
        key << (k ? ", " : "") << coefficients[k];
        if (coefficients[k] != 0.0) {
            terms.push_back({coefficients[k], static_cast<double>(k + 2), false});
        }
    }
    key << ")";
    return polynomial(std::move(terms), key.str());
}

Nonlinearity Nonlinearity::polynomial(std::vector<Term> terms, std::string key) {
    for (const auto& t : terms) {
        if (!(t.exponent >= 2.0)) {
            throw NonlinearityKeyError("nonlinearity terms need exponent >= 2 so that W'(0) = 0");
        }
        if (!t.absolute && !is_integer(t.exponent)) {
            throw NonlinearityKeyError("signed power terms need an integer exponent; use |r|^p");
        }
    }
    Nonlinearity w;
    w.key_ = std::move(key);
    w.terms_ = std::move(terms);
    w.finalize();
    return w;
}

Nonlinearity Nonlinearity::tabulated(std::vector<double> r, std::vector<double> f, std::string key) {
    if (r.size() != f.size() || r.size() < 4) {
        throw NonlinearityKeyError("table: need at least four (r, F) pairs");
    }
    if (!std::is_sorted(r.begin(), r.end()) || std::adjacent_find(r.begin(), r.end()) != r.end()) {
        throw NonlinearityKeyError("table: r column must be strictly increasing");
    }
    if (r.front() > 0.0 || r.back() < 0.0) {
        throw NonlinearityKeyError("table: r range must contain 0");
    }
    auto table = std::make_shared<Table>();
    table->r_min = r.front();
    table->r_max = r.back();
    table->h0 = std::numeric_limits<double>::infinity();
    for (double x : r) {
        if (x != 0.0) table->h0 = std::min(table->h0, std::abs(x));
    }
    table->f = std::make_unique<Table::Interpolator>(std::move(r), std::move(f));
    Nonlinearity w;
    w.key_ = std::move(key);
    w.table_ = std::move(table);
    w.finalize();
    return w;
}

Nonlinearity Nonlinearity::table_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw NonlinearityKeyError("table: cannot open '" + path + "'");
    }
    std::vector<double> r, f;
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) {
            continue;
        }
        std::istringstream row(line);
        double a = 0.0, b = 0.0;
        if (!(row >> a >> b)) {
            throw NonlinearityKeyError("table: malformed row '" + line + "' in " + path);
        }
        r.push_back(a);
        f.push_back(b);
    }
    return tabulated(std::move(r), std::move(f), "table(" + path + ")");
}

Nonlinearity Nonlinearity::parse(const std::string& raw) {
    const std::string key = trim(raw);
    const auto open = key.find('(');
    std::string name = trim(key.substr(0, open));
    std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
    std::vector<std::string> args;
    if (open != std::string::npos) {
        if (key.back() != ')') {
            throw NonlinearityKeyError("nonlinearity key '" + key + "': missing ')'");
        }
        const std::string inner = key.substr(open + 1, key.size() - open - 2);
        if (name == "table") {
            args.push_back(trim(inner));
        } else {
            std::stringstream ss(inner);
            std::string item;
            while (std::getline(ss, item, ',')) {
                args.push_back(trim(item));
            }
        }
    }
    auto want = [&](std::size_t n) {
        if (args.size() != n) {
            throw NonlinearityKeyError("nonlinearity key '" + key + "': expected " + std::to_string(n) + " argument(s)");
        }
    };
    if (name == "zero" || name == "bo" || name == "kdv" || name == "gpe") {
        if (open != std::string::npos) {
            throw NonlinearityKeyError("nonlinearity key '" + key + "' takes no arguments");
        }
        if (name == "zero") return zero();
        if (name == "bo") return bo();
        if (name == "kdv") return kdv();
        return gpe();
    }
    if (name == "power" || name == "nls_power") {
        want(2);
        const double p = parse_number(args[0], key);
        const double sign = parse_number(args[1], key);
        if (sign != 1.0 && sign != -1.0) {
            throw NonlinearityKeyError("nonlinearity key '" + key + "': sign must be +1 or -1");
        }
        return name == "power" ? power(p, static_cast<int>(sign)) : nls_power(p, static_cast<int>(sign));
    }
    if (name == "poly") {
        if (args.empty()) {
            throw NonlinearityKeyError("nonlinearity key '" + key + "': poly needs coefficients");
        }
        std::vector<double> c;
        for (const auto& a : args) {
            c.push_back(parse_number(a, key));
        }
        return poly(c);
    }
    if (name == "table") {
        want(1);
        return table_file(args[0]);
    }
    throw NonlinearityKeyError("unknown nonlinearity key '" + key + "'");
}

void Nonlinearity::finalize() {
    if (table_) {
        // F(r) ~ E0 r^2 near 0. The interpolant's curvature at 0 is not
        // reliable, so read E0 off the table value nearest 0 on each side.
        const double h = table_->h0;
        const double f0 = (*table_->f)(0.0);
        double sum = 0.0;
        int sides = 0;
        for (double r : {-h, h}) {
            if (r >= table_->r_min && r <= table_->r_max) {
                sum += ((*table_->f)(r) - f0) / (h * h);
                ++sides;
            }
        }
        e0_ = sum / sides + quadratic_shift_;
    } else {
        e0_ = quadratic_shift_;
        for (const auto& t : terms_) {
            if (t.exponent == 2.0) {
                e0_ += t.coefficient;
            }
        }
    }

    metadata_ = Metadata{};
    if (!table_) {
        std::map<std::pair<double, bool>, double> remainder;
        for (const auto& t : terms_) {
            if (t.exponent != 2.0) {
                remainder[{t.exponent, t.absolute}] += t.coefficient;
            }
        }
        std::erase_if(remainder, [](const auto& kv) { return kv.second == 0.0; });
        if (remainder.size() == 1) {
            const auto& [pa, c] = *remainder.begin();
            metadata_.power_law = PowerLaw{pa.first, c, pa.second};
        }
        if (!remainder.empty()) {
            metadata_.growth = std::make_pair(remainder.begin()->first.first, remainder.rbegin()->first.first);
        }
    }
    // Scan a logarithmic range on both sides of zero for N(s0) < 0.
    for (int i = -20; i <= 20 && !metadata_.negative_point; ++i) {
        const double r = std::pow(10.0, 0.1 * i);
        for (double cand : {r, -r}) {
            try {
                if (remainder(cand) < 0.0) {
                    metadata_.negative_point = cand;
                    break;
                }
            } catch (const std::domain_error&) {
            }
        }
    }
}

double Nonlinearity::value(double r) const {
    double v = quadratic_shift_ * r * r;
    if (table_) {
        table_->require_in_range(r);
        return v + (*table_->f)(r);
    }
    for (const auto& t : terms_) {
        v += term_value(t, r);
    }
    return v;
}

double Nonlinearity::derivative(double r) const {
    double v = 2.0 * quadratic_shift_ * r;
    if (table_) {
        table_->require_in_range(r);
        return v + table_->f->prime(r);
    }
    for (const auto& t : terms_) {
        v += term_derivative(t, r);
    }
    return v;
}

double Nonlinearity::second_derivative(double r) const {
    double v = 2.0 * quadratic_shift_;
    if (table_) {
        table_->require_in_range(r);
        const double h = 1e-5 * std::max(1.0, std::abs(r));
        const double lo = std::max(table_->r_min, r - h);
        const double hi = std::min(table_->r_max, r + h);
        return v + (table_->f->prime(hi) - table_->f->prime(lo)) / (hi - lo);
    }
    for (const auto& t : terms_) {
        v += term_second_derivative(t, r);
    }
    return v;
}

double Nonlinearity::derivative_over_r(double r) const {
    if (r == 0.0) {
        return 2.0 * e0_;
    }
    return derivative(r) / r;
}

bool Nonlinearity::is_zero() const {
    return !table_ && quadratic_shift_ == 0.0 &&
           std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.coefficient == 0.0; });
}

Nonlinearity Nonlinearity::plus_quadratic(double k) const {
    Nonlinearity w = *this;
    std::ostringstream key;
    key.precision(17);
    key << key_ << (k < 0.0 ? " - " : " + ") << std::abs(k) << "*r^2";
    w.key_ = key.str();
    if (table_) {
        w.quadratic_shift_ += k;
    } else {
        w.terms_.push_back({k, 2.0, false});
    }
    w.finalize();
    return w;
}

double Nonlinearity::max_second_derivative(double rmax) const {
    double m = 0.0;
    constexpr int samples = 201;
    for (int i = 0; i < samples; ++i) {
        const double r = -rmax + 2.0 * rmax * i / (samples - 1);
        try {
            m = std::max(m, std::abs(second_derivative(r)));
        } catch (const std::domain_error&) {
        }
    }
    return m;
}

HypothesisCheck check_hypotheses(const Nonlinearity& w) {
    HypothesisCheck out;
    out.vanishes_at_zero = std::abs(w.value(0.0)) <= 1e-12;
    out.derivative_vanishes = std::abs(w.derivative(0.0)) <= 1e-10;
    // |N(r)|/r^2 must shrink towards zero across a decade of small r.
    bool ok = true;
    double previous = std::numeric_limits<double>::infinity();
    for (double r : {1e-2, 5e-3, 2e-3, 1e-3}) {
        double ratio = 0.0;
        try {
            ratio = std::max(std::abs(w.remainder(r)), std::abs(w.remainder(-r))) / (r * r);
        } catch (const std::domain_error&) {
            ratio = std::abs(w.remainder(r)) / (r * r);
        }
        ok = ok && ratio <= previous * (1.0 + 1e-9) + 1e-9;
        previous = ratio;
    }
    out.remainder_subquadratic = ok && previous < 1e-2;
    out.negative_point = w.metadata().negative_point;
    return out;
}

PhaseShift fns_shift(const Nonlinearity& w, double k) { return {w.plus_quadratic(k), k}; }

PhaseShift fns_normalizing_shift(const Nonlinearity& w) { return fns_shift(w, 1.0 - w.e0()); }

GalileanShift fkdv_shift(const Nonlinearity& w, double k) { return {w.plus_quadratic(k), -2.0 * k}; }

GalileanShift fkdv_normalizing_shift(const Nonlinearity& w) { return fkdv_shift(w, 1.0 - w.e0()); }

}  // namespace hylo
