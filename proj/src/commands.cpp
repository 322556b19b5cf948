#include "fraclbp/commands.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>

#include "fraclbp/csv.hpp"
#include "fraclbp/fractal.hpp"
#include "fraclbp/parallel.hpp"
#include "fraclbp/reference.hpp"
#include "fraclbp/rng.hpp"
#include "fraclbp/synth.hpp"

namespace fraclbp::commands {

namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& file, const std::string& bytes) {
    std::ofstream out(file, std::ios::binary);
    if (!out) fail(ErrorCode::IoError, "cannot write " + file.string());
    out << bytes;
    if (!out) fail(ErrorCode::IoError, "write failed for " + file.string());
}

void make_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) fail(ErrorCode::IoError, "cannot create " + dir.string() + ": " + ec.message());
}

std::set<std::string> combo_tags(const std::string& combo) {
    std::set<std::string> tags;
    std::stringstream in(combo);
    std::string tag;
    while (std::getline(in, tag, '+')) {
        if (tag.empty()) fail(ErrorCode::ConfigError, "empty estimator in combination '" + combo + "'");
        tags.insert(tag);
    }
    return tags;
}

}  // namespace

fs::path cmd_extract(const RunConfig& config, const fs::path& manifest_file) {
    const bench::DatasetManifest manifest = bench::read_manifest(manifest_file);
    const features::BatchResult batch = features::extract_batch(manifest.entries, config.extract_config());
    make_dir(config.out);
    const fs::path file = config.out / "features.csv";
    features::write_feature_csv(batch.table, file);
    return file;
}

features::FeatureTable select_estimators(const features::FeatureTable& table, const std::string& combo) {
    const std::set<std::string> tags = combo_tags(combo);
    std::set<std::string> present;
    std::vector<std::size_t> columns;
    for (std::size_t c = 0; c < table.schema.size(); ++c) {
        if (tags.contains(table.schema[c].estimator)) {
            columns.push_back(c);
            present.insert(table.schema[c].estimator);
        }
    }
    for (const std::string& tag : tags) {
        if (!present.contains(tag)) fail(ErrorCode::ConfigError, "feature table has no '" + tag + "' columns");
    }
    features::FeatureTable out;
    for (std::size_t c : columns) out.schema.push_back(table.schema[c]);
    for (const features::FeatureRow& row : table.rows) {
        features::FeatureRow picked{row.path, row.label, row.group, {}};
        for (std::size_t c : columns) picked.values.push_back(row.values[c]);
        out.rows.push_back(std::move(picked));
    }
    return out;
}

std::vector<std::pair<std::string, bench::Evaluation>> cmd_classify(const RunConfig& config, const fs::path& feature_csv,
                                                                    const fs::path& manifest_file) {
    const bench::DatasetManifest manifest = bench::read_manifest(manifest_file);
    const features::FeatureTable table = features::read_feature_csv(feature_csv);
    const std::vector<bench::Split> splits = bench::make_splits(manifest, config.split_protocol());
    const bench::EvaluationConfig eval_config = config.evaluation_config();
    make_dir(config.out);

    std::vector<std::pair<std::string, bench::Evaluation>> results;
    if (config.combos.empty()) {
        const bench::Evaluation eval = bench::evaluate(bench::align(table, manifest), splits, eval_config);
        bench::report(eval, config.out);
        results.emplace_back("all", eval);
        return results;
    }
    for (const std::string& combo : config.combos) {
        const features::FeatureTable subset = select_estimators(table, combo);
        const bench::Evaluation eval = bench::evaluate(bench::align(subset, manifest), splits, eval_config);
        bench::report(eval, config.out, combo);
        results.emplace_back(combo, eval);
    }
    std::ostringstream summary;
    bench::write_summary_csv(results, summary);
    write_file(config.out / "summary.csv", summary.str());
    return results;
}

std::vector<double> default_point_sweep() {
    std::vector<double> points;
    for (int i = 0; i <= 20; ++i) points.push_back(std::pow(10.0, 1.0 + i / 4.0));
    return points;
}

void write_model_csv(const SimulateRequest& request, std::ostream& out) {
    const std::vector<double> points = request.points.empty() ? default_point_sweep() : request.points;
    const std::vector<double> scales = request.scales.empty() ? statmodel::default_scales() : request.scales;
    if (request.dims.empty()) fail(ErrorCode::InvalidArgument, "at least one self-similar dimension is required");
    const std::string kind(statmodel::measure_kind_name(request.kind));
    out << "kind,dS,Np,s,measure,alpha,beta\n";
    for (double dim : request.dims) {
        for (double np : points) {
            const statmodel::ModelCurve curve = statmodel::model_alpha_beta({np, dim, scales}, request.kind);
            for (std::size_t i = 0; i < curve.scales.size(); ++i) {
                out << kind << ',' << csv::format_double(dim) << ',' << csv::format_double(np) << ','
                    << csv::format_double(curve.scales[i]) << ',' << csv::format_double(curve.measures[i]) << ','
                    << csv::format_double(curve.alpha) << ',' << csv::format_double(curve.beta) << '\n';
            }
        }
    }
}

fs::path cmd_simulate_model(const SimulateRequest& request, const fs::path& out_dir) {
    std::ostringstream text;
    write_model_csv(request, text);
    make_dir(out_dir);
    const fs::path file = out_dir / "model.csv";
    write_file(file, text.str());
    return file;
}

// --- selftest ----------------------------------------------------------------

namespace {

Check run_check(const std::string& name, const std::function<std::string()>& body) {
    Check check{name, false, ""};
    try {
        check.detail = body();
        check.passed = check.detail.empty();
    } catch (const std::exception& e) {
        check.detail = std::string("exception: ") + e.what();
    }
    return check;
}

std::string near(double got, double want, double tol, const std::string& what) {
    if (std::abs(got - want) <= tol) return "";
    std::ostringstream msg;
    msg.precision(17);
    msg << what << " = " << got << ", expected " << want << " within " << tol;
    return msg.str();
}

}  // namespace

std::vector<Check> cmd_selftest(std::ostream& log, unsigned threads) {
    using namespace fractal;
    std::vector<Check> checks;

    checks.push_back(run_check("box dimension of the Sierpinski carpet", [] {
        const std::array<int, 4> deltas{3, 9, 27, 81};
        return near(box_dimension(synth::sierpinski_carpet(5), deltas).dim, std::log(8.0) / std::log(3.0), 1e-9,
                    "carpet dim");
    }));
    checks.push_back(run_check("box dimension of a filled square and a line", [] {
        const std::array<int, 4> deltas{2, 4, 8, 16};
        std::string msg = near(box_dimension(synth::filled(64, 64), deltas).dim, 2.0, 0.0, "square dim");
        if (msg.empty()) msg = near(box_dimension(synth::horizontal_line(64, 64, 0), deltas).dim, 1.0, 0.0, "line dim");
        return msg;
    }));
    checks.push_back(run_check("distance transform against brute force", [threads] {
        std::vector<char> ok(200, 0);
        parallel_for(ok.size(), threads, [&](std::size_t s) {
            CounterRng rng(101, s);
            const int w = 1 + static_cast<int>(rng.below(32));
            const int h = 1 + static_cast<int>(rng.below(32));
            const BinaryImage img = synth::random_binary(w, h, 101, s);
            ok[s] = edt_squared(img) == reference::brute_force_edt(img);
        });
        const auto bad = std::count(ok.begin(), ok.end(), 0);
        return bad == 0 ? std::string() : std::to_string(bad) + " of 200 images differ";
    }));
    checks.push_back(run_check("dilation volumes against disk stamping", [threads] {
        const std::vector<std::int64_t> radii = lattice_squared_radii(kDefaultMaxRadius);
        std::vector<char> ok(40, 0);
        parallel_for(ok.size(), threads, [&](std::size_t s) {
            const BinaryImage img = synth::random_binary(32, 32, 202, s);
            ok[s] = minkowski_curve(img).volumes == reference::stamped_dilation_volumes(img, radii);
        });
        const auto bad = std::count(ok.begin(), ok.end(), 0);
        return bad == 0 ? std::string() : std::to_string(bad) + " of 40 images differ";
    }));
    checks.push_back(run_check("lacunarity closed forms", [] {
        const std::array<int, 3> deltas{2, 3, 4};
        for (double v : lacunarity_curve(synth::filled(16, 16), deltas).lambdas) {
            if (v != 1.0) return near(v, 1.0, 0.0, "filled lacunarity");
        }
        BinaryImage dot(4, 4, 0);
        dot.at(1, 1) = 1;
        const std::array<int, 1> two{2};
        return near(lacunarity_curve(dot, two).lambdas[0], 2.25, 0.0, "single-pixel lacunarity");
    }));
    checks.push_back(run_check("multifractal f(0) equals box dimension", [] {
        const BinaryImage carpet = synth::sierpinski_carpet(5);
        const std::array<int, 4> sizes{3, 9, 27, 81};
        const std::array<double, 3> qs{-2.0, 0.0, 2.0};
        const MultifractalSpectrum mf = multifractal_spectrum(carpet, qs, sizes);
        std::string msg = near(mf.fvals[1], box_dimension(carpet, sizes).dim, 1e-9, "f(0)");
        if (msg.empty()) msg = near(mf.fvals[0], mf.fvals[2], 0.02, "f(-2) vs f(2)");
        return msg;
    }));
    checks.push_back(run_check("LBP of a constant image", [] {
        const lbp::LbpMap map = lbp::lbp_map(GrayImage(8, 8, 77));
        return map.codes.at(4, 4) == 255u ? std::string() : "code " + std::to_string(map.codes.at(4, 4));
    }));
    checks.push_back(run_check("statistical model limits", [] {
        std::string msg = near(statmodel::expected_boxes(1.0, 50.0, 1.5), 1.0, 1e-15, "B(1)");
        if (msg.empty()) {
            msg = near(statmodel::expected_covered_length(1e-6, 1e6, 1.0), 1.0 - std::exp(-1.0), 1e-3, "<L> limit");
        }
        return msg;
    }));

    for (const Check& c : checks) {
        log << (c.passed ? "PASS " : "FAIL ") << c.name;
        if (!c.passed) log << ": " << c.detail;
        log << '\n';
    }
    return checks;
}

}  // namespace fraclbp::commands
