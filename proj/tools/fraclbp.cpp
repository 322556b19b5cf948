// fraclbp: fractal descriptors of LBP threshold stacks, from images to
// classification results.
#include <CLI11.hpp>

#include <iostream>
#include <optional>

#include "fraclbp/commands.hpp"

namespace {

using namespace fraclbp;

std::string one_line(std::string text) {
    for (char& c : text) {
        if (c == '\n' || c == '\r') c = ' ';
        if (c == '"') c = '\'';
    }
    return text;
}

struct GlobalFlags {
    std::string config;
    std::string manifest;
    std::string out;
    std::optional<unsigned> threads;
    std::optional<std::uint64_t> seed;
};

RunConfig resolve_config(const GlobalFlags& flags) {
    RunConfig config = flags.config.empty() ? RunConfig{} : load_config(flags.config);
    if (!flags.out.empty()) config.out = flags.out;
    if (flags.threads) config.threads = *flags.threads;
    if (flags.seed) config.seed = *flags.seed;
    return config;
}

void require_manifest(const GlobalFlags& flags) {
    if (flags.manifest.empty()) fail(ErrorCode::ConfigError, "--manifest is required");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fractal descriptors of local binary pattern threshold stacks"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalFlags flags;
    app.add_option("--config", flags.config, "INI run configuration");
    app.add_option("--manifest", flags.manifest, "dataset manifest CSV (path,label,group)");
    app.add_option("--out", flags.out, "output directory (overrides the config)");
    app.add_option("--threads", flags.threads, "worker threads, 0 = logical cores");
    app.add_option("--seed", flags.seed, "seed for split sampling");

    auto* extract = app.add_subcommand("extract", "compute the feature table for a manifest");

    auto* classify = app.add_subcommand("classify", "evaluate PCA+LDA under the configured split protocol");
    std::string feature_csv;
    std::vector<std::string> combos;
    classify->add_option("--features", feature_csv, "feature CSV (default <out>/features.csv)");
    classify->add_option("--combos", combos, "estimator combinations, e.g. BC BC+BM BC+BM+L")->delimiter(',');

    auto* simulate = app.add_subcommand("simulate-model", "tabulate the random point-set model and its fits");
    std::string kind = "boxes";
    commands::SimulateRequest request;
    simulate->add_option("--kind", kind, "boxes or length")->check(CLI::IsMember({"boxes", "length"}));
    simulate->add_option("--ds", request.dims, "self-similar dimensions")->delimiter(',');
    simulate->add_option("--np", request.points, "expected point counts (default 10^1..10^6)")->delimiter(',');
    simulate->add_option("--scales", request.scales, "scale values s (default 20 in [1e-3, 1e-1])")->delimiter(',');

    auto* selftest = app.add_subcommand("selftest", "run the analytic fixtures and oracle comparisons");

    CLI11_PARSE(app, argc, argv);

    try {
        if (extract->parsed()) {
            require_manifest(flags);
            const auto file = commands::cmd_extract(resolve_config(flags), flags.manifest);
            std::cout << "wrote " << file.string() << '\n';
        } else if (classify->parsed()) {
            require_manifest(flags);
            RunConfig config = resolve_config(flags);
            if (!combos.empty()) config.combos = combos;
            const std::filesystem::path features =
                feature_csv.empty() ? config.out / "features.csv" : std::filesystem::path(feature_csv);
            for (const auto& [name, eval] : commands::cmd_classify(config, features, flags.manifest)) {
                std::cout << name << ": accuracy " << eval.mean_accuracy << " +- " << eval.std_accuracy << '\n';
            }
        } else if (simulate->parsed()) {
            request.kind = statmodel::parse_measure_kind(kind);
            if (request.dims.empty()) request.dims = {1.1, 1.5, 1.9};
            const auto file = commands::cmd_simulate_model(request, resolve_config(flags).out);
            std::cout << "wrote " << file.string() << '\n';
        } else if (selftest->parsed()) {
            const auto checks = commands::cmd_selftest(std::cout, resolve_config(flags).threads);
            for (const auto& c : checks) {
                if (!c.passed) return 1;
            }
        }
    } catch (const Error& e) {
        std::cerr << "error code=" << to_string(e.code()) << " message=\"" << one_line(e.what()) << "\"\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error code=Internal message=\"" << one_line(e.what()) << "\"\n";
        return 3;
    }
    return 0;
}
