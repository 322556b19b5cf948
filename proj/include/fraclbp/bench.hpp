/**
 * @file bench.hpp
 * @brief Dataset manifests, train/test split protocols, accuracy
 *        aggregation, confusion matrices and report files.
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "fraclbp/features.hpp"
#include "fraclbp/mlkit.hpp"

namespace fraclbp::bench {

struct DatasetManifest {
    std::string name;
    std::vector<features::ImageRecord> entries;

    /// Distinct labels, sorted.
    std::vector<std::string> classes() const;
    /// Distinct group tags, sorted.
    std::vector<std::string> groups() const;
};

/// CSV with header path,label,group. Relative paths are resolved against
/// `base_dir` and stored as absolute paths. Requires >= 2 classes.
DatasetManifest parse_manifest(std::istream& in, const std::filesystem::path& base_dir, const std::string& name);

/// Reads a manifest file; relative paths are taken from the file's folder.
DatasetManifest read_manifest(const std::filesystem::path& file);

void write_manifest(const DatasetManifest& manifest, std::ostream& out);

enum class ProtocolKind { GroupHoldout, RandomPerClass };

struct SplitProtocol {
    ProtocolKind kind = ProtocolKind::RandomPerClass;
    int train_per_class = 20;  ///< random-per-class only
    int repetitions = 10;      ///< random-per-class only
    std::uint64_t seed = 0;
};

/// Indices into the manifest entries, ascending.
struct Split {
    std::string name;
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};

/// Group holdout: one split per group, training on that group alone.
/// Random per class: `repetitions` splits, each drawing train_per_class
/// entries of every class without replacement (seeded Fisher-Yates on
/// counter stream = repetition index).
std::vector<Split> make_splits(const DatasetManifest& manifest, const SplitProtocol& protocol);

class ConfusionMatrix {
public:
    ConfusionMatrix() = default;
    explicit ConfusionMatrix(std::vector<std::string> classes);

    /// Rows are true classes, columns predictions.
    void add(const std::string& truth, const std::string& predicted);
    void merge(const ConfusionMatrix& other);

    const std::vector<std::string>& classes() const { return classes_; }
    std::int64_t count(std::size_t truth, std::size_t predicted) const;
    std::int64_t total() const;
    std::int64_t correct() const;
    /// Percentage of correct predictions.
    double accuracy() const;
    /// Per-class recall in percent; classes without samples give 0.
    std::vector<double> class_accuracy() const;

    bool operator==(const ConfusionMatrix&) const = default;

private:
    std::size_t index_of(const std::string& label) const;

    std::vector<std::string> classes_;
    std::vector<std::int64_t> counts_;
};

/// A fitted classifier; maps test rows to labels.
using Predictor = std::function<std::vector<std::string>(const mlkit::Matrix& test)>;
/// Fits on training rows only.
using Trainer = std::function<Predictor(const mlkit::Matrix& train, const std::vector<std::string>& labels)>;

/// PCA followed by LDA.
Trainer pca_lda_trainer(double retention = mlkit::kDefaultRetention, double shrinkage = mlkit::kDefaultShrinkage);

enum class Deviation { Population, Sample };

struct EvaluationConfig {
    Trainer trainer = pca_lda_trainer();
    Deviation deviation = Deviation::Population;
    unsigned threads = 0;
};

struct SplitResult {
    std::string name;
    double accuracy = 0.0;
    ConfusionMatrix confusion;
};

struct Evaluation {
    std::vector<SplitResult> splits;
    double mean_accuracy = 0.0;
    double std_accuracy = 0.0;
    ConfusionMatrix confusion;  ///< summed over splits
};

/// Feature rows and labels in manifest order.
struct LabelledFeatures {
    mlkit::Matrix x;
    std::vector<std::string> labels;
};

/// Matches feature rows to manifest entries by path. Every entry must have
/// a row.
LabelledFeatures align(const features::FeatureTable& table, const DatasetManifest& manifest);

/// Copies the selected rows.
mlkit::Matrix select_rows(const mlkit::Matrix& x, const std::vector<std::size_t>& rows);

Evaluation evaluate(const LabelledFeatures& data, const std::vector<Split>& splits,
                    const EvaluationConfig& config = {});

/// True when the classifier fitted on a split is bit-identical whether the
/// test rows hold their real values or are overwritten with noise.
bool audit_leakage(const LabelledFeatures& data, const Split& split, double retention = mlkit::kDefaultRetention,
                   double shrinkage = mlkit::kDefaultShrinkage);

/// split,accuracy,std: one row per split, then a summary row with the mean
/// and deviation.
void write_results_csv(const Evaluation& eval, std::ostream& out);

/// Header "truth\\predicted" plus class labels; one row per true class.
void write_confusion_csv(const ConfusionMatrix& confusion, std::ostream& out);

/// Binary PPM heat map of row-normalized counts, `cell` pixels per entry;
/// white is 0, deep blue is 1.
void write_confusion_ppm(const ConfusionMatrix& confusion, std::ostream& out, int cell = 16);

/// descriptors,accuracy,std for several descriptor combinations.
void write_summary_csv(const std::vector<std::pair<std::string, Evaluation>>& rows, std::ostream& out);

/// results.csv, confusion.csv and confusion.ppm under `dir`, prefixed by
/// `prefix` when it is not empty.
void report(const Evaluation& eval, const std::filesystem::path& dir, const std::string& prefix = "");

}  // namespace fraclbp::bench
