#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hylo/analysis.hpp"
#include "hylo/evolution.hpp"
#include "hylo/soliton.hpp"

namespace hylo::io {

/// Malformed or unreadable data file.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * Text table with a commented header:
 *
 *   # hylo <kind>
 *   # generated: <timestamp>
 *   # key = value
 *   ...
 *   # columns: c1 c2 ...
 *   v11 v12 ...
 *
 * Numbers are written with 17 significant digits so they round-trip. The
 * `generated` line is the only nondeterministic content.
 */
struct Table {
    std::string kind;
    std::vector<std::pair<std::string, std::string>> header;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void set(const std::string& key, const std::string& value);
    void set(const std::string& key, double value);
    /// Throws FormatError when the key is missing.
    const std::string& get(const std::string& key) const;
    double get_number(const std::string& key) const;
    bool has(const std::string& key) const;
    std::vector<double> column(const std::string& name) const;
};

std::string format_number(double v);

void write_table(const std::filesystem::path& path, const Table& table);
Table read_table(const std::filesystem::path& path);

/// Columns t E C tail_mass.
void write_trace(const std::filesystem::path& path, const EvolutionTrace& trace, const Table& meta = {});
EvolutionTrace read_trace(const std::filesystem::path& path);

/// Columns x re im, with L, N and kind in the header.
void write_snapshot(const std::filesystem::path& path, const Field& u, double time);
Field read_snapshot(const std::filesystem::path& path);

/// Header with s, W key, convention, multiplier, charge, energy, residual,
/// then columns x u (plus im for complex profiles).
void write_solution(const std::filesystem::path& path, const SolitonSolution& sol);
SolitonSolution read_solution(const std::filesystem::path& path);

void write_stability(const std::filesystem::path& path, const StabilityReport& rep);
void write_hylomorphy(const std::filesystem::path& path, const HylomorphyReport& rep, const std::string& w_key,
                      double s, double s0);

}  // namespace hylo::io
