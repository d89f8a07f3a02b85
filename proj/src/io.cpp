#include "hylo/io.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

namespace hylo::io {

void Table::set(const std::string& key, const std::string& value) {
    for (auto& [k, v] : header) {
        if (k == key) {
            v = value;
            return;
        }
    }
    header.emplace_back(key, value);
}

void Table::set(const std::string& key, double value) { set(key, format_number(value)); }

bool Table::has(const std::string& key) const {
    for (const auto& kv : header) {
        if (kv.first == key) return true;
    }
    return false;
}

const std::string& Table::get(const std::string& key) const {
    for (const auto& kv : header) {
        if (kv.first == key) return kv.second;
    }
    throw FormatError("missing header key '" + key + "'");
}

double Table::get_number(const std::string& key) const {
    const std::string& text = get(key);
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
        if (text == "inf") return std::numeric_limits<double>::infinity();
        if (text == "-inf") return -std::numeric_limits<double>::infinity();
        throw FormatError("header key '" + key + "' is not a number: " + text);
    }
}

std::vector<double> Table::column(const std::string& name) const {
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c] == name) {
            std::vector<double> out;
            out.reserve(rows.size());
            for (const auto& r : rows) out.push_back(r[c]);
            return out;
        }
    }
    throw FormatError("missing column '" + name + "'");
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_cell(const std::string& tok, const std::filesystem::path& path, std::size_t line) {
    if (tok == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (tok == "inf") return std::numeric_limits<double>::infinity();
    if (tok == "-inf") return -std::numeric_limits<double>::infinity();
    try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used == tok.size()) return v;
    } catch (const std::exception&) {
    }
    throw FormatError(path.string() + ":" + std::to_string(line) + ": bad number '" + tok + "'");
}

}  // namespace

void write_table(const std::filesystem::path& path, const Table& table) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path);
    if (!out) {
        throw FormatError("cannot open " + path.string() + " for writing");
    }
    out << "# hylo " << table.kind << "\n";
    out << "# generated: " << timestamp() << "\n";
    for (const auto& [k, v] : table.header) {
        out << "# " << k << " = " << v << "\n";
    }
    out << "# columns:";
    for (const auto& c : table.columns) out << ' ' << c;
    out << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << ' ';
            out << format_number(row[c]);
        }
        out << "\n";
    }
    if (!out) {
        throw FormatError("write to " + path.string() + " failed");
    }
}

Table read_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw FormatError("cannot open " + path.string());
    }
    Table t;
    std::string line;
    std::size_t lineno = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string s = trim(line);
        if (s.empty()) continue;
        if (s[0] == '#') {
            const std::string body = trim(s.substr(1));
            if (first && body.rfind("hylo ", 0) == 0) {
                t.kind = trim(body.substr(5));
            } else if (body.rfind("generated:", 0) == 0) {
                // ignored
            } else if (body.rfind("columns:", 0) == 0) {
                std::istringstream cols(body.substr(8));
                std::string c;
                while (cols >> c) t.columns.push_back(c);
            } else if (const auto eq = body.find(" = "); eq != std::string::npos) {
                t.header.emplace_back(trim(body.substr(0, eq)), trim(body.substr(eq + 3)));
            }
            first = false;
            continue;
        }
        first = false;
        std::istringstream cells(s);
        std::vector<double> row;
        std::string tok;
        while (cells >> tok) row.push_back(parse_cell(tok, path, lineno));
        if (!t.columns.empty() && row.size() != t.columns.size()) {
            throw FormatError(path.string() + ":" + std::to_string(lineno) + ": expected " +
                              std::to_string(t.columns.size()) + " columns");
        }
        t.rows.push_back(std::move(row));
    }
    if (t.kind.empty()) {
        throw FormatError(path.string() + ": not a hylo data file");
    }
    return t;
}

void write_trace(const std::filesystem::path& path, const EvolutionTrace& trace, const Table& meta) {
    Table t = meta;
    t.kind = "trace";
    t.set("samples", std::to_string(trace.size()));
    t.set("max_energy_drift", trace.max_energy_drift());
    t.set("max_charge_drift", trace.max_charge_drift());
    for (std::size_t i = 0; i < trace.warnings.size(); ++i) {
        t.set("warning_" + std::to_string(i), trace.warnings[i]);
    }
    t.columns = {"t", "E", "C", "tail_mass"};
    for (std::size_t i = 0; i < trace.size(); ++i) {
        t.rows.push_back({trace.times[i], trace.energy[i], trace.charge[i], trace.tail_mass[i]});
    }
    write_table(path, t);
}

EvolutionTrace read_trace(const std::filesystem::path& path) {
    const Table t = read_table(path);
    if (t.kind != "trace") throw FormatError(path.string() + ": not a trace file");
    EvolutionTrace tr;
    tr.times = t.column("t");
    tr.energy = t.column("E");
    tr.charge = t.column("C");
    tr.tail_mass = t.column("tail_mass");
    for (const auto& [k, v] : t.header) {
        if (k.rfind("warning_", 0) == 0) tr.warnings.push_back(v);
    }
    return tr;
}

namespace {

void put_grid(Table& t, const Field& u) {
    t.set("L", u.grid().length());
    t.set("N", std::to_string(u.grid().size()));
    t.set("kind", u.is_real() ? "real" : "complex");
}

Field field_from_table(const Table& t, const std::string& re_col, const std::string& im_col) {
    const double len = t.get_number("L");
    const double n = t.get_number("N");
    const Grid grid(len, static_cast<std::size_t>(n));
    const auto re = t.column(re_col);
    if (re.size() != grid.size()) {
        throw FormatError("row count does not match N");
    }
    const bool real = t.get("kind") == "real";
    std::vector<cd> vals(grid.size());
    std::vector<double> im(grid.size(), 0.0);
    if (!real) im = t.column(im_col);
    for (std::size_t j = 0; j < vals.size(); ++j) vals[j] = cd{re[j], im[j]};
    if (real) return Field::real(grid, re);
    return Field::complex(grid, std::move(vals));
}

}  // namespace

void write_snapshot(const std::filesystem::path& path, const Field& u, double time) {
    Table t;
    t.kind = "snapshot";
    put_grid(t, u);
    t.set("t", time);
    t.columns = {"x", "re", "im"};
    const auto& x = u.grid().nodes();
    for (std::size_t j = 0; j < u.size(); ++j) {
        t.rows.push_back({x[j], u[j].real(), u[j].imag()});
    }
    write_table(path, t);
}

Field read_snapshot(const std::filesystem::path& path) {
    const Table t = read_table(path);
    if (t.kind != "snapshot") throw FormatError(path.string() + ": not a snapshot file");
    return field_from_table(t, "re", "im");
}

void write_solution(const std::filesystem::path& path, const SolitonSolution& sol) {
    Table t;
    t.kind = "solution";
    t.set("s", sol.s);
    t.set("W", sol.nonlinearity.key());
    t.set("convention", to_string(sol.convention));
    t.set("multiplier", sol.multiplier);
    t.set("charge", sol.charge);
    t.set("energy", sol.energy);
    t.set("residual", sol.residual_norm);
    t.set("relative_residual", sol.relative_residual());
    t.set("method", to_string(sol.method));
    t.set("status", to_string(sol.status));
    t.set("iterations", std::to_string(sol.iterations));
    if (!sol.message.empty()) t.set("message", sol.message);
    for (std::size_t i = 0; i < sol.warnings.size(); ++i) {
        t.set("warning_" + std::to_string(i), sol.warnings[i]);
    }
    put_grid(t, sol.profile);
    const auto& x = sol.profile.grid().nodes();
    if (sol.profile.is_real()) {
        t.columns = {"x", "u"};
        for (std::size_t j = 0; j < x.size(); ++j) t.rows.push_back({x[j], sol.profile[j].real()});
    } else {
        t.columns = {"x", "u", "im"};
        for (std::size_t j = 0; j < x.size(); ++j) {
            t.rows.push_back({x[j], sol.profile[j].real(), sol.profile[j].imag()});
        }
    }
    write_table(path, t);
}

SolitonSolution read_solution(const std::filesystem::path& path) {
    const Table t = read_table(path);
    if (t.kind != "solution") throw FormatError(path.string() + ": not a solution file");
    SolitonSolution sol(field_from_table(t, "u", "im"));
    try {
        sol.nonlinearity = Nonlinearity::parse(t.get("W"));
        sol.convention = charge_convention_from_string(t.get("convention"));
        sol.method = soliton_method_from_string(t.get("method"));
    } catch (const std::invalid_argument& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
    sol.s = t.get_number("s");
    sol.multiplier = t.get_number("multiplier");
    sol.charge = t.get_number("charge");
    sol.energy = t.get_number("energy");
    sol.residual_norm = t.get_number("residual");
    sol.iterations = static_cast<int>(t.get_number("iterations"));
    const std::string status = t.get("status");
    sol.status = status == "converged"        ? SolveStatus::converged
                 : status == "max_iterations" ? SolveStatus::max_iterations
                 : status == "vanishing"      ? SolveStatus::vanishing
                                              : SolveStatus::diverged;
    if (t.has("message")) sol.message = t.get("message");
    for (const auto& [k, v] : t.header) {
        if (k.rfind("warning_", 0) == 0) sol.warnings.push_back(v);
    }
    return sol;
}

void write_stability(const std::filesystem::path& path, const StabilityReport& rep) {
    Table t;
    t.kind = "stability";
    t.set("epsilon", rep.epsilon);
    t.set("profile_norm", rep.profile_norm);
    t.set("initial_distance", rep.initial_distance);
    t.set("max_distance", rep.max_distance);
    t.set("relative_max_distance", rep.relative_max_distance());
    t.set("fitted_speed", rep.fitted_speed);
    t.set("expected_speed", rep.expected_speed);
    t.set("blew_up", rep.blew_up ? "true" : "false");
    if (!rep.failure.empty()) t.set("failure", rep.failure);
    for (std::size_t i = 0; i < rep.warnings.size(); ++i) {
        t.set("warning_" + std::to_string(i), rep.warnings[i]);
    }
    t.columns = {"t", "distance", "shift", "E", "C"};
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i < rep.times.size(); ++i) {
        t.rows.push_back({rep.times[i], rep.distance[i], rep.shift[i], i < rep.energy.size() ? rep.energy[i] : nan,
                          i < rep.charge.size() ? rep.charge[i] : nan});
    }
    write_table(path, t);
}

void write_hylomorphy(const std::filesystem::path& path, const HylomorphyReport& rep, const std::string& w_key,
                      double s, double s0) {
    Table t;
    t.kind = "hylomorphy";
    t.set("W", w_key);
    t.set("s", s);
    t.set("s0", s0);
    t.set("convention", "fns");
    t.set("E0", rep.e0);
    t.set("limit_estimate", rep.limit_estimate);
    t.set("intercept", rep.intercept);
    t.set("slope", rep.slope);
    t.set("intercept_error", rep.intercept_error);
    t.set("fit_residual", rep.fit_residual);
    t.set("verdict", rep.verdict ? "true" : "false");
    t.columns = {"R", "Lambda", "seminorm2"};
    for (std::size_t i = 0; i < rep.radii.size(); ++i) {
        t.rows.push_back({rep.radii[i], rep.ratios[i], rep.seminorms[i]});
    }
    write_table(path, t);
}

}  // namespace hylo::io
