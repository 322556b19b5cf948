/**
 * @file lbp.hpp
 * @brief Circular local binary pattern codes and their superlevel-set stack.
 *
 * Neighbor p of a pixel sits at angle 2*pi*p/P, starting at (+R, 0) and
 * turning counter-clockwise on screen (x right, y down, so dy = -R sin).
 * Off-lattice samples are bilinearly interpolated. Bit p is set when the
 * sample is >= the center value. Pixels closer than ceil(R) to the border
 * are invalid and carry code 0.
 */
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fraclbp/core.hpp"

namespace fraclbp::lbp {

struct LbpParams {
    int neighbors = 8;
    double radius = 1.0;

    /// Throws InvalidArgument unless 4 <= neighbors <= 24 and radius > 0.
    void validate() const;
    std::uint32_t max_code() const { return (std::uint32_t{1} << neighbors) - 1u; }
    int border() const;
};

struct LbpMap {
    CodeRaster codes;
    BinaryImage valid;
    int neighbors = 8;

    std::uint32_t max_code() const { return (std::uint32_t{1} << neighbors) - 1u; }
    int width() const noexcept { return codes.width(); }
    int height() const noexcept { return codes.height(); }
};

/// Code for one pixel given its center value and the P sampled neighbors.
std::uint32_t encode(double center, std::span<const double> neighbors);

LbpMap lbp_map(const GrayImage& img, const LbpParams& params = {});

/// One binary image per level: valid AND code >= level. Levels must be
/// strictly increasing and inside [0, max_code].
std::vector<BinaryImage> threshold_stack(const LbpMap& map, std::span<const std::uint32_t> levels);

/// Levels {s, 2s, ...} below 2^P with s = max(1, 2^P / 32). For P = 8 this
/// is {8, 16, ..., 248}.
std::vector<std::uint32_t> default_levels(int neighbors);

}  // namespace fraclbp::lbp
