#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "twrsim/prediction.hpp"
#include "twrsim/sweep.hpp"

namespace twrsim {

inline constexpr std::string_view kToolName = "twrsim";
inline constexpr std::string_view kToolVersion = "0.1.0";

/// Identifies the run that produced an output file; written into every table
/// so results can be traced back to their inputs.
struct Provenance {
    std::string command;
    std::uint64_t seed = 0;
    std::string config_hash; // FNV-1a 64 of the config file bytes, hex
};

std::string fnv1a_hex(std::string_view bytes);

void write_rows_csv(std::ostream& out, const Provenance& prov, std::span<const SweepRow> rows);
void write_rows_json(std::ostream& out, const Provenance& prov, std::span<const SweepRow> rows);

/// One predictor-table line: model outputs across the delay-ratio grid.
struct PredictRow {
    double ratio = 0.0;
    TimeSpan twr_bias, twr_std;
    TimeSpan tdoa_bias, tdoa_std;
    double var_ratio = 0.0; // tdoa variance over twr variance
};

std::vector<PredictRow> build_predict_table(const NoiseSummary& n, std::span<const double> ratios);
void write_predict_csv(std::ostream& out, const Provenance& prov,
                       std::span<const PredictRow> rows);
void write_predict_json(std::ostream& out, const Provenance& prov,
                        std::span<const PredictRow> rows);

/// Columns needed to score predictions against observations.
struct ScoredPoint {
    std::string estimator;
    double ratio = 0.0;
    double sample_std_ns = 0.0;
    double predicted_std_ns = 0.0;
    bool has_prediction = false;
};

/// Reads the named columns back from a sweep CSV (provenance lines ignored).
/// Throws ParseError naming any missing column.
std::vector<ScoredPoint> read_sweep_csv(const std::filesystem::path& path);

} // namespace twrsim
