#include "hylo/commands.hpp"

#include <cstdio>
#include <iomanip>

#include "hylo/analysis.hpp"
#include "hylo/io.hpp"

namespace hylo {

namespace {

io::Table run_header(const RunConfig& c) {
    io::Table t;
    t.set("command", to_string(c.command));
    t.set("family", to_string(c.family));
    t.set("convention", to_string(c.convention()));
    t.set("s", c.s);
    t.set("W", c.nonlinearity_key);
    t.set("L", c.box_length);
    t.set("N", std::to_string(c.num_points));
    t.set("seed", std::to_string(c.seed));
    return t;
}

void print_warnings(std::ostream& log, const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) {
        log << "warning: " << w << "\n";
    }
}

std::string snapshot_name(std::size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "snapshot_%05zu.dat", index);
    return buf;
}

}  // namespace

SolitonSolution solve_soliton(const SolitonBlock& b, const RunConfig& c) {
    const Grid grid = c.grid();
    const Nonlinearity w = c.nonlinearity();
    const ChargeConvention conv = c.convention();
    switch (b.method) {
        case SolitonMethod::exact_bo:
            return exact_bo_solution(b.lambda, grid, b.images);
        case SolitonMethod::petviashvili: {
            PetviashviliOptions opt;
            if (b.tol > 0.0) opt.tol = b.tol;
            if (b.max_iter > 0) opt.max_iter = b.max_iter;
            if (b.initial) opt.seed = build_initial(*b.initial, grid, Family::fkdv, c.seed);
            try {
                return petviashvili(b.lambda, c.s, w, grid, conv, opt);
            } catch (const PreconditionError& e) {
                throw ConfigError(std::string("petviashvili: ") + e.what());
            }
        }
        case SolitonMethod::gradient_flow: {
            GradientFlowOptions opt;
            if (b.tol > 0.0) opt.tol = b.tol;
            if (b.max_iter > 0) opt.max_iter = b.max_iter;
            opt.tau = b.tau;
            Field seed = b.initial ? build_initial(*b.initial, grid, c.family, c.seed)
                                   : gaussian_seed(grid, b.charge, 1.0 / std::sqrt(b.lambda), conv,
                                                   c.family == Family::fns);
            // A real seed must sit on the side where N < 0, otherwise the
            // flow drifts to the spread-out constant state.
            if (!b.initial && seed.is_real() && w.metadata().negative_point && *w.metadata().negative_point < 0.0) {
                seed *= -1.0;
            }
            if (!(charge(seed, conv) > 0.0)) {
                throw ConfigError("gradient_flow: the initial field has zero charge");
            }
            return find_soliton_gradient_flow(b.charge, c.s, w, conv, seed, opt);
        }
    }
    throw ConfigError("unknown soliton method");
}

int cmd_evolve(const RunConfig& c, std::ostream& log) {
    const Grid grid = c.grid();
    EvolutionConfig ec;
    ec.family = c.family;
    ec.s = c.s;
    ec.nonlinearity = c.nonlinearity();
    ec.dt = c.evolve.dt;
    ec.t_end = c.evolve.t_end;
    ec.snapshot_stride = c.evolve.snapshot_stride;
    ec.dealias = c.evolve.dealias;
    const Field u0 = build_initial(c.evolve.initial, grid, c.family, c.seed);

    io::Table meta = run_header(c);
    meta.set("dt", c.evolve.dt);
    meta.set("t_end", c.evolve.t_end);
    meta.set("initial", c.evolve.initial.type);

    std::size_t index = 0;
    SampleObserver observer;
    if (c.evolve.write_snapshots) {
        observer = [&](double t, const Field& state) {
            io::write_snapshot(c.output_dir / snapshot_name(index++), state, t);
        };
    }
    try {
        const EvolutionTrace trace = run(ec, u0, observer);
        io::write_trace(c.output_dir / "trace.dat", trace, meta);
        print_warnings(log, trace.warnings);
        log << "evolve: " << trace.size() << " samples, energy drift " << trace.max_energy_drift()
            << ", charge drift " << trace.max_charge_drift() << "\n";
        return exit_ok;
    } catch (const BlowUpError& e) {
        meta.set("failure", e.what());
        io::write_trace(c.output_dir / "trace.dat", e.partial_trace(), meta);
        io::write_snapshot(c.output_dir / "last_finite.dat", e.last_state(), e.time());
        log << "error: " << e.what() << "\n";
        return exit_numerical_failure;
    }
}

int cmd_soliton(const RunConfig& c, std::ostream& log) {
    const SolitonSolution sol = solve_soliton(c.soliton, c);
    io::write_solution(c.output_dir / "solution.dat", sol);
    print_warnings(log, sol.warnings);
    log << "soliton: " << to_string(sol.method) << " " << to_string(sol.status) << " after " << sol.iterations
        << " iterations, multiplier " << std::setprecision(12) << sol.multiplier << ", charge " << sol.charge
        << ", relative residual " << sol.relative_residual() << "\n";
    if (!sol.message.empty()) {
        log << "diagnostic: " << sol.message << "\n";
    }
    return sol.converged() ? exit_ok : exit_numerical_failure;
}

int cmd_stability(const RunConfig& c, std::ostream& log) {
    SolitonSolution sol = [&] {
        if (c.stability.solution_file) {
            try {
                return io::read_solution(*c.stability.solution_file);
            } catch (const io::FormatError& e) {
                throw ConfigError(e.what());
            }
        }
        return solve_soliton(c.stability.soliton, c);
    }();
    if (sol.profile.grid() != c.grid()) {
        throw ConfigError("the soliton grid does not match the configured grid");
    }
    StabilityOptions opt;
    opt.epsilon = c.stability.epsilon;
    opt.t_end = c.stability.t_end;
    opt.dt = c.stability.dt;
    opt.sample_stride = c.stability.sample_stride;
    opt.seed = c.seed;
    const StabilityReport rep = orbital_stability_experiment(sol, opt);
    io::write_stability(c.output_dir / "stability.dat", rep);
    print_warnings(log, rep.warnings);
    log << "stability: max relative distance " << rep.relative_max_distance() << ", fitted speed "
        << rep.fitted_speed << " (expected " << rep.expected_speed << ")\n";
    if (rep.blew_up) {
        log << "error: " << rep.failure << "\n";
        return exit_numerical_failure;
    }
    return exit_ok;
}

int cmd_diagnostics(const RunConfig& c, std::ostream& log) {
    if (c.diagnostics.hylomorphy) {
        const HylomorphyReport rep =
            hylomorphy_scan(c.nonlinearity(), c.s, c.diagnostics.s0, c.diagnostics.radii, c.grid());
        io::write_hylomorphy(c.output_dir / "hylomorphy.dat", rep, c.nonlinearity_key, c.s, c.diagnostics.s0);
        log << "hylomorphy: intercept " << rep.intercept << " +- " << rep.intercept_error << ", E0 " << rep.e0
            << ", verdict " << (rep.verdict ? "true" : "false") << "\n";
    }
    if (c.diagnostics.gn_table) {
        io::Table t;
        t.kind = "gn_exponents";
        t.columns = {"p", "s", "theta", "beta", "admissible"};
        for (double p : c.diagnostics.gn_p) {
            for (double s : c.diagnostics.gn_s) {
                const GnExponents g = gn_exponents(p, s);
                t.rows.push_back({p, s, g.theta, g.beta, g.admissible ? 1.0 : 0.0});
            }
        }
        io::write_table(c.output_dir / "gn_table.dat", t);
        log << "gn: " << t.rows.size() << " rows\n";
    }
    return exit_ok;
}

int run_command(const RunConfig& c, std::ostream& log) {
    switch (c.command) {
        case Command::evolve: return cmd_evolve(c, log);
        case Command::soliton: return cmd_soliton(c, log);
        case Command::stability: return cmd_stability(c, log);
        case Command::diagnostics: return cmd_diagnostics(c, log);
    }
    return exit_config_error;
}

int run_config_file(const std::filesystem::path& path, std::ostream& log) {
    try {
        const RunConfig c = load_config(path);
        return run_command(c, log);
    } catch (const ConfigError& e) {
        log << "config error: " << e.what() << "\n";
        return exit_config_error;
    } catch (const io::FormatError& e) {
        log << "error: " << e.what() << "\n";
        return exit_numerical_failure;
    } catch (const std::exception& e) {
        log << "error: " << e.what() << "\n";
        return exit_numerical_failure;
    }
}

}  // namespace hylo
