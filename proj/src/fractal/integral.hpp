#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "fraclbp/core.hpp"

namespace fraclbp::fractal::detail {

/// Summed-area table of a binary image with a zero guard row/column, so the
/// white count of [x0,x1) x [y0,y1) is four lookups.
class IntegralImage {
public:
    explicit IntegralImage(const BinaryImage& img)
        : width_(img.width()), height_(img.height()),
          sums_(static_cast<std::size_t>(width_ + 1) * static_cast<std::size_t>(height_ + 1), 0) {
        for (int y = 0; y < height_; ++y) {
            std::int64_t row_sum = 0;
            auto src = img.row(y);
            for (int x = 0; x < width_; ++x) {
                row_sum += src[static_cast<std::size_t>(x)] != 0 ? 1 : 0;
                at(x + 1, y + 1) = at(x + 1, y) + row_sum;
            }
        }
    }

    std::int64_t sum(int x0, int y0, int x1, int y1) const {
        return at(x1, y1) - at(x0, y1) - at(x1, y0) + at(x0, y0);
    }

    std::int64_t total() const { return at(width_, height_); }
    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }

private:
    std::int64_t& at(int x, int y) { return sums_[index(x, y)]; }
    std::int64_t at(int x, int y) const { return sums_[index(x, y)]; }
    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_ + 1) + static_cast<std::size_t>(x);
    }

    int width_;
    int height_;
    std::vector<std::int64_t> sums_;
};

/// Calls fn(mass) for each cell of an LxL grid anchored at (0,0), row-major,
/// with ragged cells at the right and bottom edges.
template <typename Fn>
void for_each_grid_cell(const IntegralImage& sat, int size, Fn&& fn) {
    for (int y0 = 0; y0 < sat.height(); y0 += size) {
        const int y1 = std::min(y0 + size, sat.height());
        for (int x0 = 0; x0 < sat.width(); x0 += size) {
            const int x1 = std::min(x0 + size, sat.width());
            fn(sat.sum(x0, y0, x1, y1));
        }
    }
}

}  // namespace fraclbp::fractal::detail
