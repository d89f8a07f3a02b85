#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hylo/evolution.hpp"
#include "hylo/soliton.hpp"

namespace hylo {

/// Invalid or unreadable run configuration (exit code 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Command { evolve, soliton, stability, diagnostics };

std::string to_string(Command c);

/// Initial data: {"type": "zero" | "bo_soliton" | "kdv_soliton" | "gpe_soliton"
/// | "gaussian" | "plane_wave" | "random" | "solution_file", ...parameters}.
struct InitialSpec {
    std::string type = "zero";
    nlohmann::json params = nlohmann::json::object();
};

struct EvolveBlock {
    double dt = 1e-3;
    double t_end = 1.0;
    std::size_t snapshot_stride = 100;
    bool dealias = true;
    bool write_snapshots = false;
    InitialSpec initial;
};

struct SolitonBlock {
    SolitonMethod method = SolitonMethod::petviashvili;
    /// Resolvent shift (petviashvili) or signed speed (exact_bo).
    double lambda = 1.0;
    /// Target charge (gradient_flow).
    double charge = 0.0;
    double tol = 0.0;  ///< 0 selects the method default
    int max_iter = 0;  ///< 0 selects the method default
    double tau = 1.0;
    int images = 10;
    /// Seed for gradient_flow; defaults to a Gaussian of width 1/sqrt(lambda).
    std::optional<InitialSpec> initial;
};

struct StabilityBlock {
    std::optional<std::filesystem::path> solution_file;
    SolitonBlock soliton;
    double epsilon = 1e-2;
    double t_end = 50.0;
    double dt = 1e-3;
    std::size_t sample_stride = 100;
};

struct DiagnosticsBlock {
    bool hylomorphy = false;
    double s0 = 1.0;
    std::vector<double> radii{10, 20, 40, 80};
    bool gn_table = false;
    std::vector<double> gn_p;
    std::vector<double> gn_s;
};

struct RunConfig {
    Command command = Command::evolve;
    double box_length = 400.0;
    std::size_t num_points = 4096;
    Family family = Family::fkdv;
    double s = 0.5;
    std::string nonlinearity_key;
    std::filesystem::path output_dir = "out";
    std::uint64_t seed = 1;

    EvolveBlock evolve;
    SolitonBlock soliton;
    StabilityBlock stability;
    DiagnosticsBlock diagnostics;

    Grid grid() const { return Grid(box_length, num_points); }
    Nonlinearity nonlinearity() const;
    ChargeConvention convention() const { return convention_of(family); }
};

/// Parses and validates; relative paths inside the file are resolved
/// against `base_dir`. Throws ConfigError.
RunConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

/// Builds the initial field on the grid (complex-tagged for fns).
Field build_initial(const InitialSpec& spec, const Grid& grid, Family family, std::uint64_t seed);

}  // namespace hylo
