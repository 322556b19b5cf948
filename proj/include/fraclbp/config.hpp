/**
 * @file config.hpp
 * @brief Run configuration stored as a flat INI file.
 *
 * Sections and keys:
 *
 *     [lbp]       neighbors, radius, levels
 *     [features]  estimators, box_deltas, max_radius, lacunarity_deltas,
 *                 mf_qs, mf_sizes
 *     [classify]  retention, shrinkage, deviation, combos
 *     [protocol]  kind, train_per_class, repetitions
 *     [run]       seed, threads, out
 *
 * Lists are comma separated; an empty value selects the default. Lines
 * starting with '#' or ';' are comments. Unknown sections or keys are
 * rejected with their line number.
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "fraclbp/bench.hpp"
#include "fraclbp/features.hpp"
#include "fraclbp/lbp.hpp"

namespace fraclbp {

struct RunConfig {
    lbp::LbpParams lbp;
    std::vector<std::uint32_t> levels;  ///< empty: default levels
    std::vector<features::EstimatorKind> estimators{features::BoxCounting{}};
    double retention = mlkit::kDefaultRetention;
    double shrinkage = mlkit::kDefaultShrinkage;
    bench::Deviation deviation = bench::Deviation::Population;
    /// Estimator-tag combinations such as "BC+BM"; empty: all estimators.
    std::vector<std::string> combos;
    bench::SplitProtocol protocol;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::filesystem::path out = "out";

    features::ExtractConfig extract_config() const;
    bench::EvaluationConfig evaluation_config() const;
    bench::SplitProtocol split_protocol() const;
};

/// Throws ConfigError naming the line and key on any problem.
RunConfig parse_config(std::istream& in, const std::string& source = "config");
RunConfig load_config(const std::filesystem::path& file);

/// Writes every key, so parse_config(write_config(c)) reproduces c.
void write_config(const RunConfig& config, std::ostream& out);

std::string protocol_kind_name(bench::ProtocolKind kind);
bench::ProtocolKind parse_protocol_kind(const std::string& name);

}  // namespace fraclbp
