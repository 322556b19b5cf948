#include "fraclbp/bench.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include "fraclbp/csv.hpp"
#include "fraclbp/parallel.hpp"
#include "fraclbp/rng.hpp"

namespace fraclbp::bench {

namespace fs = std::filesystem;

// --- manifests -------------------------------------------------------------

std::vector<std::string> DatasetManifest::classes() const {
    std::set<std::string> seen;
    for (const auto& e : entries) seen.insert(e.label);
    return {seen.begin(), seen.end()};
}

std::vector<std::string> DatasetManifest::groups() const {
    std::set<std::string> seen;
    for (const auto& e : entries) seen.insert(e.group);
    return {seen.begin(), seen.end()};
}

DatasetManifest parse_manifest(std::istream& in, const fs::path& base_dir, const std::string& name) {
    std::string line;
    if (!std::getline(in, line)) fail(ErrorCode::CorruptHeader, "manifest " + name + " is empty");
    const std::vector<std::string> header = csv::split(line);
    if (header != std::vector<std::string>{"path", "label", "group"}) {
        fail(ErrorCode::CorruptHeader, "manifest " + name + ": header must be path,label,group");
    }
    DatasetManifest manifest{name, {}};
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const std::vector<std::string> f = csv::split(line);
        if (f.size() != 3 || f[0].empty() || f[1].empty()) {
            fail(ErrorCode::CorruptHeader, "manifest " + name + " line " + std::to_string(line_no) +
                                               ": expected path,label,group");
        }
        fs::path p(f[0]);
        if (p.is_relative()) p = base_dir / p;
        manifest.entries.push_back({fs::absolute(p).lexically_normal(), f[1], f[2]});
    }
    if (manifest.classes().size() < 2) fail(ErrorCode::InsufficientData, "manifest " + name + " has fewer than 2 classes");
    return manifest;
}

DatasetManifest read_manifest(const fs::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) fail(ErrorCode::FileNotFound, "cannot open manifest " + file.string());
    return parse_manifest(in, file.parent_path(), file.stem().string());
}

void write_manifest(const DatasetManifest& manifest, std::ostream& out) {
    out << "path,label,group\n";
    for (const auto& e : manifest.entries) out << csv::join({e.path.string(), e.label, e.group}) << '\n';
}

// --- splits ----------------------------------------------------------------

std::vector<Split> make_splits(const DatasetManifest& manifest, const SplitProtocol& protocol) {
    std::vector<Split> splits;
    if (protocol.kind == ProtocolKind::GroupHoldout) {
        for (const auto& e : manifest.entries) {
            if (e.group.empty()) fail(ErrorCode::InsufficientData, "group holdout needs a group tag on every entry");
        }
        const std::vector<std::string> groups = manifest.groups();
        if (groups.size() < 2) fail(ErrorCode::InsufficientData, "group holdout needs at least 2 groups");
        for (const std::string& g : groups) {
            Split s{"train=" + g, {}, {}};
            for (std::size_t i = 0; i < manifest.entries.size(); ++i) {
                (manifest.entries[i].group == g ? s.train : s.test).push_back(i);
            }
            splits.push_back(std::move(s));
        }
        return splits;
    }

    if (protocol.train_per_class < 1) fail(ErrorCode::InvalidArgument, "train count per class must be >= 1");
    if (protocol.repetitions < 1) fail(ErrorCode::InvalidArgument, "repetitions must be >= 1");
    std::map<std::string, std::vector<std::size_t>> members;
    for (std::size_t i = 0; i < manifest.entries.size(); ++i) members[manifest.entries[i].label].push_back(i);
    for (const auto& [label, idx] : members) {
        if (idx.size() <= static_cast<std::size_t>(protocol.train_per_class)) {
            fail(ErrorCode::InsufficientData, "class '" + label + "' has " + std::to_string(idx.size()) +
                                                  " entries, needs more than " +
                                                  std::to_string(protocol.train_per_class));
        }
    }
    for (int rep = 0; rep < protocol.repetitions; ++rep) {
        CounterRng rng(protocol.seed, static_cast<std::uint64_t>(rep));
        Split s{"rep" + std::to_string(rep), {}, {}};
        for (const auto& [label, idx] : members) {
            std::vector<std::size_t> order = idx;
            for (std::size_t i = order.size() - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);
            const auto cut = order.begin() + protocol.train_per_class;
            s.train.insert(s.train.end(), order.begin(), cut);
            s.test.insert(s.test.end(), cut, order.end());
        }
        std::sort(s.train.begin(), s.train.end());
        std::sort(s.test.begin(), s.test.end());
        splits.push_back(std::move(s));
    }
    return splits;
}

// --- confusion matrix ------------------------------------------------------

ConfusionMatrix::ConfusionMatrix(std::vector<std::string> classes)
    : classes_(std::move(classes)), counts_(classes_.size() * classes_.size(), 0) {}

std::size_t ConfusionMatrix::index_of(const std::string& label) const {
    const auto it = std::find(classes_.begin(), classes_.end(), label);
    if (it == classes_.end()) fail(ErrorCode::UnknownLabelSpace, "label '" + label + "' is not a known class");
    return static_cast<std::size_t>(it - classes_.begin());
}

void ConfusionMatrix::add(const std::string& truth, const std::string& predicted) {
    ++counts_[index_of(truth) * classes_.size() + index_of(predicted)];
}

void ConfusionMatrix::merge(const ConfusionMatrix& other) {
    if (other.classes_ != classes_) fail(ErrorCode::InvalidArgument, "confusion matrices have different classes");
    for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
}

std::int64_t ConfusionMatrix::count(std::size_t truth, std::size_t predicted) const {
    return counts_.at(truth * classes_.size() + predicted);
}

std::int64_t ConfusionMatrix::total() const {
    std::int64_t sum = 0;
    for (auto c : counts_) sum += c;
    return sum;
}

std::int64_t ConfusionMatrix::correct() const {
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < classes_.size(); ++i) sum += count(i, i);
    return sum;
}

double ConfusionMatrix::accuracy() const {
    const std::int64_t n = total();
    return n == 0 ? 0.0 : 100.0 * static_cast<double>(correct()) / static_cast<double>(n);
}

std::vector<double> ConfusionMatrix::class_accuracy() const {
    std::vector<double> out(classes_.size(), 0.0);
    for (std::size_t i = 0; i < classes_.size(); ++i) {
        std::int64_t row = 0;
        for (std::size_t j = 0; j < classes_.size(); ++j) row += count(i, j);
        if (row > 0) out[i] = 100.0 * static_cast<double>(count(i, i)) / static_cast<double>(row);
    }
    return out;
}

// --- evaluation ------------------------------------------------------------

Trainer pca_lda_trainer(double retention, double shrinkage) {
    return [retention, shrinkage](const mlkit::Matrix& train, const std::vector<std::string>& labels) -> Predictor {
        auto model = std::make_shared<const mlkit::Classifier>(mlkit::train_classifier(train, labels, retention, shrinkage));
        return [model](const mlkit::Matrix& test) { return mlkit::predict(*model, test); };
    };
}

LabelledFeatures align(const features::FeatureTable& table, const DatasetManifest& manifest) {
    std::map<std::string, std::size_t> row_of;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        row_of.emplace(fs::path(table.rows[i].path).lexically_normal().string(), i);
    }
    LabelledFeatures out;
    out.x.resize(static_cast<Eigen::Index>(manifest.entries.size()), static_cast<Eigen::Index>(table.schema.size()));
    for (std::size_t r = 0; r < manifest.entries.size(); ++r) {
        const auto& e = manifest.entries[r];
        const auto it = row_of.find(e.path.lexically_normal().string());
        if (it == row_of.end()) fail(ErrorCode::InsufficientData, "no features for " + e.path.string());
        const auto& values = table.rows[it->second].values;
        for (std::size_t c = 0; c < values.size(); ++c) {
            out.x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = values[c];
        }
        out.labels.push_back(e.label);
    }
    return out;
}

mlkit::Matrix select_rows(const mlkit::Matrix& x, const std::vector<std::size_t>& rows) {
    mlkit::Matrix out(static_cast<Eigen::Index>(rows.size()), x.cols());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out.row(static_cast<Eigen::Index>(i)) = x.row(static_cast<Eigen::Index>(rows[i]));
    }
    return out;
}

Evaluation evaluate(const LabelledFeatures& data, const std::vector<Split>& splits, const EvaluationConfig& config) {
    if (splits.empty()) fail(ErrorCode::InsufficientData, "no splits to evaluate");
    if (static_cast<std::size_t>(data.x.rows()) != data.labels.size()) {
        fail(ErrorCode::InvalidArgument, "feature rows and labels differ in count");
    }
    std::set<std::string> label_set(data.labels.begin(), data.labels.end());
    const std::vector<std::string> classes(label_set.begin(), label_set.end());

    Evaluation eval;
    eval.splits.resize(splits.size());
    parallel_for(splits.size(), config.threads, [&](std::size_t s) {
        const Split& split = splits[s];
        std::vector<std::string> train_labels;
        for (std::size_t i : split.train) train_labels.push_back(data.labels.at(i));
        const Predictor predictor = config.trainer(select_rows(data.x, split.train), train_labels);
        const std::vector<std::string> predicted = predictor(select_rows(data.x, split.test));
        if (predicted.size() != split.test.size()) {
            fail(ErrorCode::InvalidArgument, "classifier returned the wrong number of predictions");
        }
        SplitResult result{split.name, 0.0, ConfusionMatrix(classes)};
        for (std::size_t i = 0; i < predicted.size(); ++i) result.confusion.add(data.labels[split.test[i]], predicted[i]);
        result.accuracy = result.confusion.accuracy();
        eval.splits[s] = std::move(result);
    });

    eval.confusion = ConfusionMatrix(classes);
    double sum = 0.0;
    for (const SplitResult& r : eval.splits) {
        sum += r.accuracy;
        eval.confusion.merge(r.confusion);
    }
    const auto n = static_cast<double>(eval.splits.size());
    eval.mean_accuracy = sum / n;
    double ss = 0.0;
    for (const SplitResult& r : eval.splits) ss += (r.accuracy - eval.mean_accuracy) * (r.accuracy - eval.mean_accuracy);
    const double denom = config.deviation == Deviation::Population ? n : n - 1.0;
    eval.std_accuracy = denom > 0.0 ? std::sqrt(ss / denom) : 0.0;
    return eval;
}

bool audit_leakage(const LabelledFeatures& data, const Split& split, double retention, double shrinkage) {
    LabelledFeatures noisy = data;
    CounterRng rng(0x1eaca9e, 0);
    for (std::size_t i : split.test) {
        for (Eigen::Index c = 0; c < noisy.x.cols(); ++c) {
            noisy.x(static_cast<Eigen::Index>(i), c) = 1e3 * rng.normal();
        }
    }
    auto fitted_text = [&](const LabelledFeatures& d) {
        std::string text;
        EvaluationConfig config;
        config.threads = 1;
        config.trainer = [&](const mlkit::Matrix& train, const std::vector<std::string>& labels) -> Predictor {
            const mlkit::Classifier model = mlkit::train_classifier(train, labels, retention, shrinkage);
            std::ostringstream out;
            mlkit::save_classifier(model, out);
            text = out.str();
            return [model](const mlkit::Matrix& test) { return mlkit::predict(model, test); };
        };
        evaluate(d, {split}, config);
        return text;
    };
    return fitted_text(data) == fitted_text(noisy);
}

// --- reports ---------------------------------------------------------------

void write_results_csv(const Evaluation& eval, std::ostream& out) {
    out << "split,accuracy,std\n";
    for (const SplitResult& r : eval.splits) out << csv::quote(r.name) << ',' << csv::format_double(r.accuracy) << ",\n";
    out << "summary," << csv::format_double(eval.mean_accuracy) << ',' << csv::format_double(eval.std_accuracy) << '\n';
}

void write_confusion_csv(const ConfusionMatrix& confusion, std::ostream& out) {
    std::vector<std::string> header{"truth\\predicted"};
    header.insert(header.end(), confusion.classes().begin(), confusion.classes().end());
    out << csv::join(header) << '\n';
    for (std::size_t i = 0; i < confusion.classes().size(); ++i) {
        out << csv::quote(confusion.classes()[i]);
        for (std::size_t j = 0; j < confusion.classes().size(); ++j) out << ',' << confusion.count(i, j);
        out << '\n';
    }
}

void write_confusion_ppm(const ConfusionMatrix& confusion, std::ostream& out, int cell) {
    if (cell < 1) fail(ErrorCode::InvalidArgument, "heat map cell size must be >= 1");
    const std::size_t k = confusion.classes().size();
    const int side = static_cast<int>(k) * cell;
    out << "P6\n" << side << ' ' << side << "\n255\n";
    std::string row_pixels(static_cast<std::size_t>(side) * 3, '\0');
    for (std::size_t i = 0; i < k; ++i) {
        std::int64_t row_total = 0;
        for (std::size_t j = 0; j < k; ++j) row_total += confusion.count(i, j);
        for (std::size_t j = 0; j < k; ++j) {
            const double v = row_total == 0 ? 0.0
                                            : static_cast<double>(confusion.count(i, j)) / static_cast<double>(row_total);
            const auto fade = static_cast<unsigned char>(std::lround(255.0 * (1.0 - v)));
            const auto blue = static_cast<unsigned char>(std::lround(255.0 - 115.0 * v));
            for (int p = 0; p < cell; ++p) {
                const std::size_t at = (j * static_cast<std::size_t>(cell) + static_cast<std::size_t>(p)) * 3;
                row_pixels[at] = static_cast<char>(fade);
                row_pixels[at + 1] = static_cast<char>(fade);
                row_pixels[at + 2] = static_cast<char>(blue);
            }
        }
        for (int p = 0; p < cell; ++p) out.write(row_pixels.data(), static_cast<std::streamsize>(row_pixels.size()));
    }
}

void write_summary_csv(const std::vector<std::pair<std::string, Evaluation>>& rows, std::ostream& out) {
    out << "descriptors,accuracy,std\n";
    for (const auto& [name, eval] : rows) {
        out << csv::quote(name) << ',' << csv::format_double(eval.mean_accuracy) << ','
            << csv::format_double(eval.std_accuracy) << '\n';
    }
}

namespace {

void write_file(const fs::path& file, const std::string& bytes) {
    std::ofstream out(file, std::ios::binary);
    if (!out) fail(ErrorCode::IoError, "cannot write " + file.string());
    out << bytes;
    if (!out) fail(ErrorCode::IoError, "write failed for " + file.string());
}

}  // namespace

void report(const Evaluation& eval, const fs::path& dir, const std::string& prefix) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) fail(ErrorCode::IoError, "cannot create " + dir.string() + ": " + ec.message());
    const std::string stem = prefix.empty() ? "" : prefix + "_";
    std::ostringstream results, confusion, ppm;
    write_results_csv(eval, results);
    write_confusion_csv(eval.confusion, confusion);
    write_confusion_ppm(eval.confusion, ppm);
    write_file(dir / (stem + "results.csv"), results.str());
    write_file(dir / (stem + "confusion.csv"), confusion.str());
    write_file(dir / (stem + "confusion.ppm"), ppm.str());
}

}  // namespace fraclbp::bench
