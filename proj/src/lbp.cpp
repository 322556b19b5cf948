#include "fraclbp/lbp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace fraclbp::lbp {

namespace {

// Precomputed sampling geometry for one neighbor.
struct Sample {
    int dx0;
    int dy0;
    double fx;  // fractional offsets within the enclosing lattice cell
    double fy;
};

double snap(double v) {
    const double r = std::round(v);
    return std::abs(v - r) < 1e-9 ? r : v;
}

std::vector<Sample> sampling_pattern(const LbpParams& params) {
    std::vector<Sample> pattern;
    pattern.reserve(static_cast<std::size_t>(params.neighbors));
    for (int p = 0; p < params.neighbors; ++p) {
        const double theta = 2.0 * std::numbers::pi * p / params.neighbors;
        const double dx = snap(params.radius * std::cos(theta));
        const double dy = snap(-params.radius * std::sin(theta));
        const double x0 = std::floor(dx);
        const double y0 = std::floor(dy);
        pattern.push_back({static_cast<int>(x0), static_cast<int>(y0), dx - x0, dy - y0});
    }
    return pattern;
}

}  // namespace

void LbpParams::validate() const {
    if (neighbors < 4 || neighbors > 24) {
        fail(ErrorCode::InvalidArgument, "LBP neighbor count must be in [4, 24], got " + std::to_string(neighbors));
    }
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        fail(ErrorCode::InvalidArgument, "LBP radius must be positive");
    }
}

int LbpParams::border() const { return static_cast<int>(std::ceil(radius - 1e-9)); }

std::uint32_t encode(double center, std::span<const double> neighbors) {
    std::uint32_t code = 0;
    for (std::size_t p = 0; p < neighbors.size(); ++p) {
        if (neighbors[p] >= center) code |= std::uint32_t{1} << p;
    }
    return code;
}

LbpMap lbp_map(const GrayImage& img, const LbpParams& params) {
    params.validate();
    const int b = params.border();
    const int w = img.width();
    const int h = img.height();
    if (w < 2 * b + 1 || h < 2 * b + 1) {
        fail(ErrorCode::ImageTooSmall, "image " + std::to_string(w) + "x" + std::to_string(h) +
                                           " is too small for LBP radius " + std::to_string(params.radius));
    }

    const auto pattern = sampling_pattern(params);
    LbpMap map{CodeRaster(w, h, 0u), BinaryImage(w, h, 0), params.neighbors};

    for (int y = b; y < h - b; ++y) {
        for (int x = b; x < w - b; ++x) {
            const int center = img.at(x, y);
            std::uint32_t code = 0;
            for (std::size_t p = 0; p < pattern.size(); ++p) {
                const Sample& s = pattern[p];
                const int x0 = x + s.dx0;
                const int y0 = y + s.dy0;
                // Difference form relative to the top-left corner: only
                // intensity differences enter the comparison.
                const int c00 = img.at(x0, y0);
                double t = 0.0;
                if (s.fx != 0.0 || s.fy != 0.0) {
                    const int c10 = s.fx != 0.0 ? img.at(x0 + 1, y0) : c00;
                    const int c01 = s.fy != 0.0 ? img.at(x0, y0 + 1) : c00;
                    const int c11 = (s.fx != 0.0 && s.fy != 0.0) ? img.at(x0 + 1, y0 + 1) : c00;
                    t = s.fx * (c10 - c00) + s.fy * (c01 - c00) + s.fx * s.fy * (c00 - c10 - c01 + c11);
                }
                if (t >= static_cast<double>(center - c00)) code |= std::uint32_t{1} << p;
            }
            map.codes.at(x, y) = code;
            map.valid.at(x, y) = 1;
        }
    }
    return map;
}

std::vector<BinaryImage> threshold_stack(const LbpMap& map, std::span<const std::uint32_t> levels) {
    const std::uint32_t max_code = map.max_code();
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (levels[i] > max_code) {
            fail(ErrorCode::LevelOutOfRange,
                 "threshold level " + std::to_string(levels[i]) + " exceeds max code " + std::to_string(max_code));
        }
        if (i > 0 && levels[i] <= levels[i - 1]) {
            fail(ErrorCode::LevelOutOfRange, "threshold levels must be strictly increasing");
        }
    }

    std::vector<BinaryImage> stack;
    stack.reserve(levels.size());
    auto codes = map.codes.pixels();
    auto valid = map.valid.pixels();
    for (std::uint32_t level : levels) {
        BinaryImage out(map.width(), map.height(), 0);
        auto dst = out.pixels();
        for (std::size_t i = 0; i < dst.size(); ++i) {
            dst[i] = (valid[i] != 0 && codes[i] >= level) ? 1 : 0;
        }
        stack.push_back(std::move(out));
    }
    return stack;
}

std::vector<std::uint32_t> default_levels(int neighbors) {
    LbpParams{neighbors, 1.0}.validate();
    const std::uint32_t span = std::uint32_t{1} << neighbors;
    const std::uint32_t step = std::max<std::uint32_t>(1u, span / 32u);
    std::vector<std::uint32_t> levels;
    for (std::uint32_t v = step; v < span; v += step) levels.push_back(v);
    return levels;
}

}  // namespace fraclbp::lbp
