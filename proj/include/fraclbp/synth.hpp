/**
 * @file synth.hpp
 * @brief Deterministic synthetic images: analytic fractal fixtures and the
 *        four-class texture family used for end-to-end checks.
 */
#pragma once

#include <cstdint>
#include <string_view>

#include "fraclbp/core.hpp"

namespace fraclbp::synth {

/// 3^levels square Sierpinski carpet; a pixel is white unless some base-3
/// digit position holds a 1 in both coordinates.
BinaryImage sierpinski_carpet(int levels);

BinaryImage filled(int width, int height);

/// Single white row at y = row.
BinaryImage horizontal_line(int width, int height, int row);

/// i.i.d. Bernoulli(p) pixels.
BinaryImage bernoulli_field(int width, int height, double p, std::uint64_t seed);

/// Uniformly random binary image whose white fraction is itself drawn at
/// random; guaranteed to hold at least one white pixel.
BinaryImage random_binary(int width, int height, std::uint64_t seed, std::uint64_t stream);

enum class TextureClass {
    CheckerboardFine,    ///< checkerboard, period 4
    CheckerboardCoarse,  ///< checkerboard, period 8
    StripesFine,         ///< horizontal stripes, period 4
    UniformNoise,        ///< i.i.d. uniform intensities
};

inline constexpr int kTextureClassCount = 4;

std::string_view texture_class_name(TextureClass cls);

/// Periodic patterns alternate between intensities 80 and 176 with a random
/// phase, plus Gaussian noise of the given sigma (rounded, clamped to
/// [0,255]). Uniform noise ignores sigma.
GrayImage texture(TextureClass cls, int size, double noise_sigma, std::uint64_t seed, std::uint64_t index);

}  // namespace fraclbp::synth
