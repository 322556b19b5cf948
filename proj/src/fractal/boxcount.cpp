#include <algorithm>
#include <string>

#include "fraclbp/fractal.hpp"
#include "integral.hpp"

namespace fraclbp::fractal {

std::vector<int> default_box_deltas(int width, int height) {
    std::vector<int> deltas;
    const int half = std::min(width, height) / 2;
    for (int d = 2; d <= half; d *= 2) deltas.push_back(d);
    return deltas;
}

BoxCountCurve box_count(const BinaryImage& img, std::span<const int> deltas) {
    const int side = std::min(img.width(), img.height());
    for (int d : deltas) {
        if (d < 2 || d > side) {
            fail(ErrorCode::BadDelta, "box size " + std::to_string(d) + " outside [2, " + std::to_string(side) + "]");
        }
    }
    const detail::IntegralImage sat(img);
    if (sat.total() == 0) fail(ErrorCode::EmptyImage, "box counting needs at least one white pixel");

    BoxCountCurve curve;
    curve.deltas.assign(deltas.begin(), deltas.end());
    curve.counts.reserve(deltas.size());
    for (int d : deltas) {
        std::int64_t occupied = 0;
        detail::for_each_grid_cell(sat, d, [&](std::int64_t mass) { occupied += mass > 0 ? 1 : 0; });
        curve.counts.push_back(occupied);
    }
    return curve;
}

DimensionEstimate box_dimension(const BinaryImage& img, std::span<const int> deltas) {
    const BoxCountCurve curve = box_count(img, deltas);
    std::vector<double> xs(curve.deltas.begin(), curve.deltas.end());
    std::vector<double> ys(curve.counts.begin(), curve.counts.end());
    const LogLogFit fit = fit_loglog(xs, ys);
    return {-fit.alpha, fit.beta};
}

}  // namespace fraclbp::fractal
