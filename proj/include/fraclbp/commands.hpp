/**
 * @file commands.hpp
 * @brief The pipeline steps behind each `fraclbp` subcommand. Every command
 *        writes deterministic files for a fixed configuration.
 */
#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "fraclbp/config.hpp"
#include "fraclbp/statmodel.hpp"

namespace fraclbp::commands {

/// Writes <out>/features.csv and returns its path.
std::filesystem::path cmd_extract(const RunConfig& config, const std::filesystem::path& manifest);

/// Keeps the feature columns whose estimator tag is in `combo` ("BC+BM").
features::FeatureTable select_estimators(const features::FeatureTable& table, const std::string& combo);

/// Without combos: <out>/results.csv, confusion.csv, confusion.ppm over all
/// columns. With combos: one prefixed set per combination plus
/// <out>/summary.csv. Returns the evaluations in combo order.
std::vector<std::pair<std::string, bench::Evaluation>> cmd_classify(const RunConfig& config,
                                                                    const std::filesystem::path& feature_csv,
                                                                    const std::filesystem::path& manifest);

struct SimulateRequest {
    statmodel::MeasureKind kind = statmodel::MeasureKind::Boxes;
    std::vector<double> dims{1.1, 1.5, 1.9};
    std::vector<double> points;  ///< empty: 10^1 .. 10^6, 4 per decade
    std::vector<double> scales;  ///< empty: statmodel::default_scales()
};

std::vector<double> default_point_sweep();

/// Columns kind,dS,Np,s,measure,alpha,beta; one row per (dS, Np, s).
void write_model_csv(const SimulateRequest& request, std::ostream& out);

/// Writes <out_dir>/model.csv and returns its path.
std::filesystem::path cmd_simulate_model(const SimulateRequest& request, const std::filesystem::path& out_dir);

struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Analytic fixtures and brute-force oracle comparisons. Prints one
/// PASS/FAIL line per check to `log`.
std::vector<Check> cmd_selftest(std::ostream& log, unsigned threads = 0);

}  // namespace fraclbp::commands
