#include "fraclbp/features.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include "fraclbp/csv.hpp"
#include "fraclbp/imagio.hpp"
#include "fraclbp/parallel.hpp"

namespace fraclbp::features {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

std::vector<int> fitting(const std::vector<int>& sides, const BinaryImage& img) {
    const int limit = std::min(img.width(), img.height());
    std::vector<int> kept;
    for (int s : sides) {
        if (s <= limit) kept.push_back(s);
    }
    return kept;
}

}  // namespace

std::string estimator_tag(const EstimatorKind& kind) {
    return std::visit(overloaded{
                          [](const BoxCounting&) { return std::string("BC"); },
                          [](const BouligandMinkowski&) { return std::string("BM"); },
                          [](const Lacunarity&) { return std::string("L"); },
                          [](const Multifractal&) { return std::string("MF"); },
                      },
                      kind);
}

EstimatorKind estimator_from_tag(const std::string& tag) {
    if (tag == "BC") return BoxCounting{};
    if (tag == "BM") return BouligandMinkowski{};
    if (tag == "L") return Lacunarity{};
    if (tag == "MF") return Multifractal{};
    fail(ErrorCode::InvalidArgument, "unknown estimator '" + tag + "' (expected BC, BM, L or MF)");
}

std::vector<std::string> coefficient_names(const EstimatorKind& kind) {
    return std::visit(overloaded{
                          [](const BoxCounting&) { return std::vector<std::string>{"dim", "beta"}; },
                          [](const BouligandMinkowski&) { return std::vector<std::string>{"dim", "beta"}; },
                          [](const Lacunarity&) { return std::vector<std::string>{"alpha", "beta"}; },
                          [](const Multifractal& mf) {
                              std::vector<double> qs = mf.qs;
                              std::sort(qs.begin(), qs.end());
                              std::vector<std::string> names;
                              for (double q : qs) names.push_back("f(" + csv::format_double(q) + ")");
                              return names;
                          },
                      },
                      kind);
}

std::string SchemaEntry::key() const { return estimator + ":" + std::to_string(level) + ":" + coefficient; }

Schema build_schema(std::span<const std::uint32_t> levels, std::span<const EstimatorKind> kinds) {
    if (kinds.empty()) fail(ErrorCode::InvalidArgument, "at least one estimator is required");
    Schema schema;
    for (const EstimatorKind& kind : kinds) {
        const std::string tag = estimator_tag(kind);
        const std::vector<std::string> names = coefficient_names(kind);
        for (std::uint32_t level : levels) {
            for (const std::string& name : names) schema.push_back({tag, level, name});
        }
    }
    return schema;
}

std::vector<double> estimate(const BinaryImage& img, const EstimatorKind& kind) {
    if (imagio::count_white(img) == 0) return std::vector<double>(coefficient_names(kind).size(), 0.0);
    return std::visit(
        overloaded{
            [&](const BoxCounting& bc) {
                const std::vector<int> deltas =
                    bc.deltas.empty() ? fractal::default_box_deltas(img.width(), img.height()) : bc.deltas;
                const fractal::DimensionEstimate e = fractal::box_dimension(img, deltas);
                return std::vector<double>{e.dim, e.beta};
            },
            [&](const BouligandMinkowski& bm) {
                const fractal::DimensionEstimate e = fractal::minkowski_dimension(img, bm.max_radius);
                return std::vector<double>{e.dim, e.beta};
            },
            [&](const Lacunarity& l) {
                const fractal::LineCoefficients c = fractal::lacunarity_fit(img, fitting(l.deltas, img));
                return std::vector<double>{c.alpha, c.beta};
            },
            [&](const Multifractal& mf) {
                std::vector<double> qs = mf.qs;
                std::sort(qs.begin(), qs.end());
                return fractal::multifractal_spectrum(img, qs, fitting(mf.sizes, img)).fvals;
            },
        },
        kind);
}

DescriptorVector extract(const GrayImage& img, const lbp::LbpParams& lbp, std::span<const std::uint32_t> levels,
                         std::span<const EstimatorKind> kinds) {
    lbp.validate();
    std::vector<std::uint32_t> chosen(levels.begin(), levels.end());
    if (chosen.empty()) chosen = lbp::default_levels(lbp.neighbors);

    DescriptorVector out;
    out.schema = build_schema(chosen, kinds);
    out.values.reserve(out.schema.size());

    const std::vector<BinaryImage> stack = lbp::threshold_stack(lbp::lbp_map(img, lbp), chosen);
    for (const EstimatorKind& kind : kinds) {
        for (const BinaryImage& level : stack) {
            const std::vector<double> coeffs = estimate(level, kind);
            out.values.insert(out.values.end(), coeffs.begin(), coeffs.end());
        }
    }
    return out;
}

BatchResult extract_batch(std::span<const ImageRecord> records, const ExtractConfig& config) {
    config.lbp.validate();
    std::vector<std::uint32_t> levels = config.levels;
    if (levels.empty()) levels = lbp::default_levels(config.lbp.neighbors);
    const Schema schema = build_schema(levels, config.kinds);

    std::vector<FeatureRow> rows(records.size());
    std::vector<std::optional<FileError>> failures(records.size());
    parallel_for(records.size(), config.threads, [&](std::size_t i) {
        const ImageRecord& rec = records[i];
        try {
            const GrayImage img = imagio::load_gray(rec.path);
            rows[i] = {rec.path.string(), rec.label, rec.group,
                       extract(img, config.lbp, levels, config.kinds).values};
        } catch (const Error& e) {
            failures[i] = FileError{rec.path.string(), e.code(), e.what()};
        }
    });

    BatchResult result;
    result.table.schema = schema;
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (failures[i]) {
            result.errors.push_back(*failures[i]);
        } else {
            result.table.rows.push_back(std::move(rows[i]));
        }
    }
    if (config.strict && !result.errors.empty()) {
        std::string msg = std::to_string(result.errors.size()) + " of " + std::to_string(records.size()) +
                          " images failed:";
        for (const FileError& e : result.errors) {
            msg += "\n  " + e.path + ": " + std::string(to_string(e.code)) + ": " + e.message;
        }
        fail(ErrorCode::BatchFailed, msg);
    }
    return result;
}

void write_feature_csv(const FeatureTable& table, std::ostream& out) {
    std::vector<std::string> header{"path", "label", "group"};
    for (const SchemaEntry& e : table.schema) header.push_back(e.key());
    out << csv::join(header) << '\n';
    for (const FeatureRow& row : table.rows) {
        if (row.values.size() != table.schema.size()) {
            fail(ErrorCode::InvalidArgument, "feature row for " + row.path + " does not match the schema");
        }
        std::vector<std::string> fields{row.path, row.label, row.group};
        for (double v : row.values) fields.push_back(csv::format_double(v));
        out << csv::join(fields) << '\n';
    }
}

void write_feature_csv(const FeatureTable& table, const std::filesystem::path& file) {
    std::ostringstream text;
    write_feature_csv(table, text);
    std::ofstream out(file, std::ios::binary);
    if (!out) fail(ErrorCode::IoError, "cannot write " + file.string());
    out << text.str();
    if (!out) fail(ErrorCode::IoError, "write failed for " + file.string());
}

FeatureTable read_feature_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) fail(ErrorCode::CorruptHeader, "feature table is empty");
    const std::vector<std::string> header = csv::split(line);
    if (header.size() < 3 || header[0] != "path" || header[1] != "label" || header[2] != "group") {
        fail(ErrorCode::CorruptHeader, "feature table header must start with path,label,group");
    }
    FeatureTable table;
    for (std::size_t c = 3; c < header.size(); ++c) {
        const std::string& key = header[c];
        const auto a = key.find(':');
        const auto b = a == std::string::npos ? a : key.find(':', a + 1);
        if (b == std::string::npos) fail(ErrorCode::CorruptHeader, "bad feature column '" + key + "'");
        const auto level = csv::parse_int(std::string_view(key).substr(a + 1, b - a - 1), key);
        table.schema.push_back({key.substr(0, a), static_cast<std::uint32_t>(level), key.substr(b + 1)});
    }
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const std::vector<std::string> fields = csv::split(line);
        if (fields.size() != header.size()) {
            fail(ErrorCode::CorruptHeader, "feature table line " + std::to_string(line_no) + " has " +
                                               std::to_string(fields.size()) + " fields, expected " +
                                               std::to_string(header.size()));
        }
        FeatureRow row{fields[0], fields[1], fields[2], {}};
        row.values.reserve(table.schema.size());
        for (std::size_t c = 3; c < fields.size(); ++c) row.values.push_back(csv::parse_double(fields[c], header[c]));
        table.rows.push_back(std::move(row));
    }
    return table;
}

FeatureTable read_feature_csv(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) fail(ErrorCode::FileNotFound, "cannot open " + file.string());
    return read_feature_csv(in);
}

}  // namespace fraclbp::features
