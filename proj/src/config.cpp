#include "hylo/config.hpp"

#include <cmath>
#include <fstream>

#include "hylo/analysis.hpp"
#include "hylo/io.hpp"

namespace hylo {

using nlohmann::json;

std::string to_string(Command c) {
    switch (c) {
        case Command::evolve: return "evolve";
        case Command::soliton: return "soliton";
        case Command::stability: return "stability";
        case Command::diagnostics: return "diagnostics";
    }
    return "unknown";
}

Nonlinearity RunConfig::nonlinearity() const {
    try {
        return Nonlinearity::parse(nonlinearity_key);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("nonlinearity: ") + e.what());
    }
}

namespace {

template <class T>
T get_or(const json& j, const char* key, T fallback) {
    if (!j.contains(key) || j.at(key).is_null()) {
        return fallback;
    }
    return j.at(key).get<T>();
}

void require(bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
}

InitialSpec parse_initial(const json& j, const std::filesystem::path& base) {
    InitialSpec spec;
    if (j.is_string()) {
        spec.type = j.get<std::string>();
        return spec;
    }
    require(j.is_object(), "initial data must be an object or a type name");
    spec.type = get_or<std::string>(j, "type", "zero");
    spec.params = j;
    if (spec.type == "solution_file") {
        require(j.contains("path"), "initial data 'solution_file' needs a path");
        std::filesystem::path p = j.at("path").get<std::string>();
        if (p.is_relative() && !base.empty()) p = base / p;
        spec.params["path"] = p.string();
    }
    return spec;
}

SolitonBlock parse_soliton(const json& j, const std::filesystem::path& base) {
    SolitonBlock b;
    try {
        b.method = soliton_method_from_string(get_or<std::string>(j, "method", "petviashvili"));
    } catch (const PreconditionError& e) {
        throw ConfigError(e.what());
    }
    b.lambda = get_or(j, "lambda", b.lambda);
    b.charge = get_or(j, "charge", b.charge);
    b.tol = get_or(j, "tol", b.tol);
    b.max_iter = get_or(j, "max_iter", b.max_iter);
    b.tau = get_or(j, "tau", b.tau);
    b.images = get_or(j, "images", b.images);
    if (j.contains("initial")) b.initial = parse_initial(j.at("initial"), base);
    require(b.tol >= 0.0 && b.max_iter >= 0 && b.tau > 0.0 && b.images >= 0,
            "soliton: tol, max_iter and images must be nonnegative, tau positive");
    switch (b.method) {
        case SolitonMethod::petviashvili:
            require(b.lambda > 0.0, "soliton: petviashvili needs lambda > 0");
            break;
        case SolitonMethod::gradient_flow:
            require(b.charge > 0.0, "soliton: gradient_flow needs charge > 0");
            require(b.lambda > 0.0, "soliton: lambda (seed width scale) must be positive");
            break;
        case SolitonMethod::exact_bo:
            require(b.lambda != 0.0, "soliton: exact_bo needs lambda != 0");
            break;
    }
    return b;
}

std::vector<double> number_list(const json& j, const char* key, std::vector<double> fallback) {
    if (!j.contains(key)) return fallback;
    return j.at(key).get<std::vector<double>>();
}

}  // namespace

RunConfig parse_config(const json& doc, const std::filesystem::path& base) {
    RunConfig c;
    try {
        require(doc.is_object(), "configuration must be a JSON object");
        require(doc.contains("command"), "missing 'command'");
        const std::string cmd = doc.at("command").get<std::string>();
        if (cmd == "evolve") c.command = Command::evolve;
        else if (cmd == "soliton") c.command = Command::soliton;
        else if (cmd == "stability") c.command = Command::stability;
        else if (cmd == "diagnostics") c.command = Command::diagnostics;
        else throw ConfigError("unknown command '" + cmd + "'");

        const json grid = get_or<json>(doc, "grid", json::object());
        c.box_length = get_or(grid, "L", c.box_length);
        const double n = get_or(grid, "N", static_cast<double>(c.num_points));
        require(n >= 0.0 && std::floor(n) == n, "grid.N must be a nonnegative integer");
        c.num_points = static_cast<std::size_t>(n);
        try {
            (void)c.grid();
        } catch (const PreconditionError& e) {
            throw ConfigError(std::string("grid: ") + e.what());
        }

        try {
            c.family = family_from_string(get_or<std::string>(doc, "family", "fkdv"));
        } catch (const PreconditionError& e) {
            throw ConfigError(e.what());
        }
        c.s = get_or(doc, "s", c.s);
        require(std::isfinite(c.s) && c.s >= 0.5, "s must be at least 1/2");
        if (c.command != Command::diagnostics || doc.contains("nonlinearity")) {
            require(doc.contains("nonlinearity"), "missing 'nonlinearity' key");
        }
        c.nonlinearity_key = get_or<std::string>(doc, "nonlinearity", "zero");
        if (doc.contains("nonlinearity") && std::filesystem::path(c.nonlinearity_key).is_relative()) {
            // table(path) keys are resolved against the config directory
            const auto open = c.nonlinearity_key.find("table(");
            if (open == 0 && !base.empty() && c.nonlinearity_key.back() == ')') {
                std::filesystem::path p = c.nonlinearity_key.substr(6, c.nonlinearity_key.size() - 7);
                if (p.is_relative()) c.nonlinearity_key = "table(" + (base / p).string() + ")";
            }
        }
        (void)c.nonlinearity();

        std::filesystem::path out = get_or<std::string>(doc, "output_dir", "out");
        if (out.is_relative() && !base.empty()) out = base / out;
        c.output_dir = out;
        const double seed = get_or(doc, "seed", 1.0);
        require(seed >= 0.0 && std::floor(seed) == seed, "seed must be a nonnegative integer");
        c.seed = static_cast<std::uint64_t>(seed);

        if (doc.contains("evolve")) {
            const json& e = doc.at("evolve");
            c.evolve.dt = get_or(e, "dt", c.evolve.dt);
            c.evolve.t_end = get_or(e, "t_end", c.evolve.t_end);
            c.evolve.snapshot_stride = get_or<std::size_t>(e, "snapshot_stride", c.evolve.snapshot_stride);
            c.evolve.dealias = get_or(e, "dealias", c.evolve.dealias);
            c.evolve.write_snapshots = get_or(e, "snapshots", c.evolve.write_snapshots);
            if (e.contains("initial")) c.evolve.initial = parse_initial(e.at("initial"), base);
        }
        if (c.command == Command::evolve) {
            require(std::isfinite(c.evolve.dt) && c.evolve.dt > 0.0, "evolve.dt must be positive");
            require(std::isfinite(c.evolve.t_end) && c.evolve.t_end > 0.0, "evolve.t_end must be positive");
            require(c.evolve.snapshot_stride > 0, "evolve.snapshot_stride must be positive");
            (void)build_initial(c.evolve.initial, c.grid(), c.family, c.seed);
        }

        if (doc.contains("soliton")) c.soliton = parse_soliton(doc.at("soliton"), base);
        else if (c.command == Command::soliton) throw ConfigError("missing 'soliton' block");

        if (doc.contains("stability")) {
            const json& st = doc.at("stability");
            if (st.contains("solution_file")) {
                std::filesystem::path p = st.at("solution_file").get<std::string>();
                if (p.is_relative() && !base.empty()) p = base / p;
                c.stability.solution_file = p;
            }
            if (st.contains("soliton")) c.stability.soliton = parse_soliton(st.at("soliton"), base);
            c.stability.epsilon = get_or(st, "epsilon", c.stability.epsilon);
            c.stability.t_end = get_or(st, "t_end", c.stability.t_end);
            c.stability.dt = get_or(st, "dt", c.stability.dt);
            c.stability.sample_stride = get_or<std::size_t>(st, "sample_stride", c.stability.sample_stride);
        }
        if (c.command == Command::stability) {
            require(doc.contains("stability"), "missing 'stability' block");
            require(c.stability.epsilon >= 0.0 && c.stability.epsilon <= 0.1, "stability.epsilon must lie in [0, 0.1]");
            require(c.stability.dt > 0.0 && c.stability.t_end > 0.0, "stability.dt and t_end must be positive");
            require(c.stability.sample_stride > 0, "stability.sample_stride must be positive");
            if (c.stability.solution_file) {
                require(std::filesystem::exists(*c.stability.solution_file),
                        "solution file not found: " + c.stability.solution_file->string());
            }
        }

        if (doc.contains("diagnostics")) {
            const json& d = doc.at("diagnostics");
            if (d.contains("hylomorphy")) {
                const json& h = d.at("hylomorphy");
                c.diagnostics.hylomorphy = true;
                c.diagnostics.s0 = get_or(h, "s0", c.diagnostics.s0);
                c.diagnostics.radii = number_list(h, "radii", c.diagnostics.radii);
            }
            if (d.contains("gn")) {
                const json& g = d.at("gn");
                c.diagnostics.gn_table = true;
                c.diagnostics.gn_p = number_list(g, "p", {3.0, 4.0});
                c.diagnostics.gn_s = number_list(g, "s", {0.5, 1.0});
            }
        }
        if (c.command == Command::diagnostics) {
            require(c.diagnostics.hylomorphy || c.diagnostics.gn_table,
                    "diagnostics needs a 'hylomorphy' or 'gn' block");
            if (c.diagnostics.hylomorphy) {
                require(doc.contains("nonlinearity"), "hylomorphy diagnostics need a 'nonlinearity' key");
                require(c.diagnostics.s0 > 0.0 && !c.diagnostics.radii.empty(),
                        "hylomorphy: s0 must be positive and radii nonempty");
                for (double r : c.diagnostics.radii) {
                    require(r > 0.0 && r + 1.0 < 0.5 * c.box_length, "hylomorphy: each R needs 0 < R and R + 1 < L/2");
                }
            }
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("configuration: ") + e.what());
    }
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read configuration file " + path.string());
    }
    json doc;
    try {
        doc = json::parse(in, nullptr, true, true);
    } catch (const json::exception& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return parse_config(doc, path.parent_path());
}

Field build_initial(const InitialSpec& spec, const Grid& grid, Family family, std::uint64_t seed) {
    const json& p = spec.params;
    const bool complex = family == Family::fns;
    auto finish = [complex](Field f) { return complex ? f.as_complex() : f; };
    try {
        if (spec.type == "zero") {
            return Field(grid, complex ? Field::Kind::complex : Field::Kind::real);
        }
        if (spec.type == "bo_soliton") {
            return finish(exact_bo_soliton(get_or(p, "lambda", -1.0), get_or(p, "x0", 0.0), grid,
                                           get_or(p, "images", 10)));
        }
        if (spec.type == "kdv_soliton") {
            return finish(exact_kdv_soliton(get_or(p, "c", 1.0), get_or(p, "x0", 0.0), grid));
        }
        if (spec.type == "gpe_soliton") {
            return finish(exact_gpe_soliton(get_or(p, "a", 1.0), grid));
        }
        if (spec.type == "gaussian") {
            const double amp = get_or(p, "amplitude", 1.0);
            const double width = get_or(p, "width", 1.0);
            const double x0 = get_or(p, "x0", 0.0);
            require(width > 0.0, "gaussian width must be positive");
            return finish(Field::from_function(grid, [=](double x) {
                const double y = (x - x0) / width;
                return amp * std::exp(-0.5 * y * y);
            }));
        }
        if (spec.type == "plane_wave") {
            const double amp = get_or(p, "amplitude", 1.0);
            const double k = get_or(p, "k", 1.0);
            require(std::floor(k) == k, "plane_wave.k must be an integer mode number");
            const double xi = 2.0 * std::numbers::pi * k / grid.length();
            if (complex) {
                return Field::from_complex_function(grid, [=](double x) { return amp * std::polar(1.0, xi * x); });
            }
            return Field::from_function(grid, [=](double x) { return amp * std::cos(xi * x); });
        }
        if (spec.type == "random") {
            const long kmax = get_or<long>(p, "kmax", static_cast<long>(grid.size() / 8));
            const double amp = get_or(p, "amplitude", 1.0);
            const auto s = get_or<std::uint64_t>(p, "seed", seed);
            return amp * random_band_limited_field(grid, s, kmax, complex);
        }
        if (spec.type == "solution_file") {
            const SolitonSolution sol = io::read_solution(p.at("path").get<std::string>());
            require(sol.profile.grid() == grid, "solution file grid does not match the configured grid");
            return finish(complex ? sol.profile.as_complex() : sol.profile.real_part());
        }
    } catch (const PreconditionError& e) {
        throw ConfigError("initial data '" + spec.type + "': " + e.what());
    } catch (const io::FormatError& e) {
        throw ConfigError("initial data '" + spec.type + "': " + e.what());
    } catch (const json::exception& e) {
        throw ConfigError("initial data '" + spec.type + "': " + e.what());
    }
    throw ConfigError("unknown initial data type '" + spec.type + "'");
}

}  // namespace hylo
