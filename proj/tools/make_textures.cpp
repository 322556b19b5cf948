// Writes the synthetic four-class texture corpus as PGM files plus a
// manifest.csv next to them.
#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "fraclbp/imagio.hpp"
#include "fraclbp/synth.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Generate the synthetic texture corpus"};
    std::string out = "textures";
    int per_class = 30;
    int size = 96;
    double sigma = 10.0;
    std::uint64_t seed = 0;
    int groups = 3;
    app.add_option("--out", out, "output directory");
    app.add_option("--per-class", per_class, "images per class")->check(CLI::PositiveNumber);
    app.add_option("--size", size, "image side in pixels")->check(CLI::Range(8, 4096));
    app.add_option("--sigma", sigma, "Gaussian noise on the periodic classes");
    app.add_option("--seed", seed, "generator seed");
    app.add_option("--groups", groups, "number of group tags, assigned round-robin")->check(CLI::PositiveNumber);
    CLI11_PARSE(app, argc, argv);

    namespace fs = std::filesystem;
    using namespace fraclbp;
    try {
        fs::create_directories(out);
        std::ofstream manifest(fs::path(out) / "manifest.csv", std::ios::binary);
        manifest << "path,label,group\n";
        for (int c = 0; c < synth::kTextureClassCount; ++c) {
            const auto cls = static_cast<synth::TextureClass>(c);
            const std::string name(synth::texture_class_name(cls));
            for (int i = 0; i < per_class; ++i) {
                const std::string file = name + "_" + std::to_string(i) + ".pgm";
                imagio::save_pgm(synth::texture(cls, size, sigma, seed, static_cast<std::uint64_t>(i)),
                                 fs::path(out) / file);
                manifest << file << ',' << name << ",g" << (i % groups) << '\n';
            }
        }
        if (!manifest) fail(ErrorCode::IoError, "cannot write manifest");
    } catch (const Error& e) {
        std::cerr << "error code=" << to_string(e.code()) << " message=\"" << e.what() << "\"\n";
        return 2;
    }
    return 0;
}
