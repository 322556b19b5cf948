#include "fraclbp/synth.hpp"

#include <algorithm>
#include <cmath>

#include "fraclbp/rng.hpp"

namespace fraclbp::synth {

BinaryImage sierpinski_carpet(int levels) {
    if (levels < 0 || levels > 9) fail(ErrorCode::InvalidArgument, "carpet level must be in [0, 9]");
    int side = 1;
    for (int i = 0; i < levels; ++i) side *= 3;
    BinaryImage img(side, side, 0);
    for (int y = 0; y < side; ++y) {
        for (int x = 0; x < side; ++x) {
            bool hole = false;
            for (int a = x, b = y; a > 0 || b > 0; a /= 3, b /= 3) {
                if (a % 3 == 1 && b % 3 == 1) {
                    hole = true;
                    break;
                }
            }
            img.at(x, y) = hole ? 0 : 1;
        }
    }
    return img;
}

BinaryImage filled(int width, int height) { return BinaryImage(width, height, 1); }

BinaryImage horizontal_line(int width, int height, int row) {
    if (row < 0 || row >= height) fail(ErrorCode::InvalidArgument, "line row outside the image");
    BinaryImage img(width, height, 0);
    for (int x = 0; x < width; ++x) img.at(x, row) = 1;
    return img;
}

BinaryImage bernoulli_field(int width, int height, double p, std::uint64_t seed) {
    CounterRng rng(seed, 0);
    BinaryImage img(width, height, 0);
    for (auto& v : img.pixels()) v = rng.uniform() < p ? 1 : 0;
    return img;
}

BinaryImage random_binary(int width, int height, std::uint64_t seed, std::uint64_t stream) {
    CounterRng rng(seed, stream);
    const double density = 0.02 + 0.6 * rng.uniform();
    BinaryImage img(width, height, 0);
    bool any = false;
    for (auto& v : img.pixels()) {
        v = rng.uniform() < density ? 1 : 0;
        any = any || v != 0;
    }
    if (!any) {
        const auto x = static_cast<int>(rng.below(static_cast<std::uint64_t>(width)));
        const auto y = static_cast<int>(rng.below(static_cast<std::uint64_t>(height)));
        img.at(x, y) = 1;
    }
    return img;
}

std::string_view texture_class_name(TextureClass cls) {
    switch (cls) {
        case TextureClass::CheckerboardFine: return "checker4";
        case TextureClass::CheckerboardCoarse: return "checker8";
        case TextureClass::StripesFine: return "stripes4";
        case TextureClass::UniformNoise: return "noise";
    }
    return "unknown";
}

GrayImage texture(TextureClass cls, int size, double noise_sigma, std::uint64_t seed, std::uint64_t index) {
    if (size < 3) fail(ErrorCode::InvalidArgument, "texture size must be >= 3");
    CounterRng rng(seed, (index << 2) | static_cast<std::uint64_t>(cls));
    GrayImage img(size, size, 0);

    if (cls == TextureClass::UniformNoise) {
        for (auto& v : img.pixels()) v = static_cast<std::uint8_t>(rng.below(256));
        return img;
    }

    const int period = cls == TextureClass::CheckerboardCoarse ? 8 : 4;
    const int half = period / 2;
    const int phase_x = static_cast<int>(rng.below(static_cast<std::uint64_t>(period)));
    const int phase_y = static_cast<int>(rng.below(static_cast<std::uint64_t>(period)));
    for (int y = 0; y < size; ++y) {
        for (int x = 0; x < size; ++x) {
            const int row_band = ((y + phase_y) / half) % 2;
            const int col_band = ((x + phase_x) / half) % 2;
            const bool bright = cls == TextureClass::StripesFine ? row_band == 1 : (row_band ^ col_band) == 1;
            const double value = (bright ? 176.0 : 80.0) + noise_sigma * rng.normal();
            img.at(x, y) = static_cast<std::uint8_t>(std::clamp(std::lround(value), 0L, 255L));
        }
    }
    return img;
}

}  // namespace fraclbp::synth
