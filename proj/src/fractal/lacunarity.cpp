#include <algorithm>
#include <string>

#include "fraclbp/fractal.hpp"
#include "integral.hpp"

namespace fraclbp::fractal {

namespace {
__extension__ using u128 = unsigned __int128;
}  // namespace

std::vector<int> default_lacunarity_deltas() {
    std::vector<int> deltas;
    for (int d = 2; d <= 14; ++d) deltas.push_back(d);
    return deltas;
}

LacunarityCurve lacunarity_curve(const BinaryImage& img, std::span<const int> deltas) {
    const int side = std::min(img.width(), img.height());
    for (int d : deltas) {
        if (d < 1 || d > side) {
            fail(ErrorCode::BadDelta,
                 "gliding box size " + std::to_string(d) + " outside [1, " + std::to_string(side) + "]");
        }
    }
    const detail::IntegralImage sat(img);
    if (sat.total() == 0) fail(ErrorCode::EmptyImage, "lacunarity needs at least one white pixel");

    LacunarityCurve curve;
    curve.deltas.assign(deltas.begin(), deltas.end());
    curve.lambdas.reserve(deltas.size());
    for (int d : deltas) {
        const int nx = img.width() - d + 1;
        const int ny = img.height() - d + 1;
        std::uint64_t first = 0;   // sum of k
        std::uint64_t second = 0;  // sum of k^2
        for (int y = 0; y < ny; ++y) {
            for (int x = 0; x < nx; ++x) {
                const auto k = static_cast<std::uint64_t>(sat.sum(x, y, x + d, y + d));
                first += k;
                second += k * k;
            }
        }
        if (first == 0) fail(ErrorCode::ZeroMass, "no gliding box of size " + std::to_string(d) + " holds a white pixel");
        // lambda = (second/n) / (first/n)^2 = n*second / first^2, exact in integers.
        const auto positions = static_cast<u128>(nx) * static_cast<u128>(ny);
        const u128 numerator = positions * second;
        const u128 denominator = static_cast<u128>(first) * first;
        const double lambda = numerator == denominator
                                  ? 1.0
                                  : static_cast<double>(static_cast<long double>(numerator) /
                                                        static_cast<long double>(denominator));
        curve.lambdas.push_back(lambda);
    }
    return curve;
}

LineCoefficients lacunarity_fit(const BinaryImage& img, std::span<const int> deltas) {
    const LacunarityCurve curve = lacunarity_curve(img, deltas);
    std::vector<double> xs(curve.deltas.begin(), curve.deltas.end());
    const LogLogFit fit = fit_loglog(xs, curve.lambdas);
    return {fit.alpha, fit.beta};
}

}  // namespace fraclbp::fractal
