/**
 * @file imagio.hpp
 * @brief Grayscale/binary raster ingestion (PGM P2/P5, 8-bit PNG) and PGM output.
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <type_traits>

#include "fraclbp/core.hpp"

namespace fraclbp::imagio {

/// Loads a PGM (P2 or P5, maxval <= 255) or an 8-bit PNG. Color PNGs are
/// reduced with round-half-up of 0.299R + 0.587G + 0.114B; alpha is ignored.
GrayImage load_gray(const std::filesystem::path& path);

GrayImage decode_pgm(const std::string& bytes);

enum class PgmEncoding { Binary, Ascii };

std::string encode_pgm(const GrayImage& img, PgmEncoding encoding = PgmEncoding::Binary);
void save_pgm(const GrayImage& img, const std::filesystem::path& path,
              PgmEncoding encoding = PgmEncoding::Binary);

/// 8-bit gray PNG writer, mostly for fixtures.
void save_png(const GrayImage& img, const std::filesystem::path& path);

/// ITU-R 601 luma with round-half-up, computed in exact integer arithmetic.
constexpr std::uint8_t luminance(std::uint8_t r, std::uint8_t g, std::uint8_t b) noexcept {
    return static_cast<std::uint8_t>((299u * r + 587u * g + 114u * b + 500u) / 1000u);
}

/// bit = 1 iff value >= t.
template <typename T, typename Tag>
BinaryImage to_binary_geq(const Raster<T, Tag>& img, std::type_identity_t<T> t) {
    BinaryImage out(img.width(), img.height());
    auto src = img.pixels();
    auto dst = out.pixels();
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] >= t ? 1 : 0;
    return out;
}

/// Number of white pixels.
std::size_t count_white(const BinaryImage& img) noexcept;

}  // namespace fraclbp::imagio
