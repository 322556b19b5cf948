/**
 * @file features.hpp
 * @brief Descriptor vectors built by running fractal estimators over the
 *        LBP threshold stack, and the feature-table CSV format.
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fraclbp/core.hpp"
#include "fraclbp/fractal.hpp"
#include "fraclbp/lbp.hpp"

namespace fraclbp::features {

/// Box counting. An empty list means powers of two up to half the smaller
/// image side, chosen per image.
struct BoxCounting {
    std::vector<int> deltas;
};

struct BouligandMinkowski {
    double max_radius = fractal::kDefaultMaxRadius;
};

/// Box sides larger than the image are skipped.
struct Lacunarity {
    std::vector<int> deltas = fractal::default_lacunarity_deltas();
};

/// Box sides larger than the image are skipped.
struct Multifractal {
    std::vector<double> qs = fractal::default_multifractal_qs();
    std::vector<int> sizes = fractal::default_multifractal_sizes();
};

using EstimatorKind = std::variant<BoxCounting, BouligandMinkowski, Lacunarity, Multifractal>;

/// "BC", "BM", "L" or "MF".
std::string estimator_tag(const EstimatorKind& kind);

/// Default-parameter estimator for a tag.
EstimatorKind estimator_from_tag(const std::string& tag);

/// Coefficient names emitted per threshold level, in vector order.
std::vector<std::string> coefficient_names(const EstimatorKind& kind);

struct SchemaEntry {
    std::string estimator;
    std::uint32_t level = 0;
    std::string coefficient;

    /// "BC:8:dim"
    std::string key() const;
    bool operator==(const SchemaEntry&) const = default;
};

using Schema = std::vector<SchemaEntry>;

/// Estimator order as given, then level ascending, then coefficient order.
Schema build_schema(std::span<const std::uint32_t> levels, std::span<const EstimatorKind> kinds);

struct DescriptorVector {
    std::vector<double> values;
    Schema schema;
};

/// Coefficients of one estimator on one binary image. An image without
/// white pixels yields zeros.
std::vector<double> estimate(const BinaryImage& img, const EstimatorKind& kind);

/// Runs every estimator on every threshold level. Empty levels use the
/// default level set for the LBP neighbor count.
DescriptorVector extract(const GrayImage& img, const lbp::LbpParams& lbp, std::span<const std::uint32_t> levels,
                         std::span<const EstimatorKind> kinds);

struct ImageRecord {
    std::filesystem::path path;
    std::string label;
    std::string group;
};

struct FeatureRow {
    std::string path;
    std::string label;
    std::string group;
    std::vector<double> values;
};

struct FeatureTable {
    Schema schema;
    std::vector<FeatureRow> rows;
};

struct ExtractConfig {
    lbp::LbpParams lbp;
    std::vector<std::uint32_t> levels;  ///< empty: default levels
    std::vector<EstimatorKind> kinds{BoxCounting{}};
    unsigned threads = 0;               ///< 0: hardware concurrency
    bool strict = true;
};

struct FileError {
    std::string path;
    ErrorCode code;
    std::string message;
};

struct BatchResult {
    FeatureTable table;
    std::vector<FileError> errors;
};

/// One row per record, in record order. In strict mode any failure raises
/// BatchFailed listing every failed file; otherwise failed records are
/// left out and reported in errors.
BatchResult extract_batch(std::span<const ImageRecord> records, const ExtractConfig& config);

/// Header: path,label,group followed by schema keys.
void write_feature_csv(const FeatureTable& table, std::ostream& out);
void write_feature_csv(const FeatureTable& table, const std::filesystem::path& file);
FeatureTable read_feature_csv(std::istream& in);
FeatureTable read_feature_csv(const std::filesystem::path& file);

}  // namespace fraclbp::features
