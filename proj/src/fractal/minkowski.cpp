#include <algorithm>
#include <cmath>
#include <string>

#include "fraclbp/fractal.hpp"

namespace fraclbp::fractal {

namespace {

constexpr std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    const std::int64_t q = a / b;
    return (a % b != 0 && ((a < 0) != (b < 0))) ? q - 1 : q;
}

}  // namespace

// Meijster, Roerdink & Hesselink: a column scan producing the 1-D distance g,
// then a row scan taking the lower envelope of the parabolas (x-i)^2 + g(i)^2.
DistanceRaster edt_squared(const BinaryImage& img) {
    const int w = img.width();
    const int h = img.height();
    const std::int64_t inf = static_cast<std::int64_t>(w) + h;

    bool any_white = false;
    for (std::uint8_t v : img.pixels()) {
        if (v != 0) {
            any_white = true;
            break;
        }
    }
    if (!any_white) fail(ErrorCode::EmptyImage, "distance transform needs at least one white pixel");

    DistanceRaster g(w, h, inf);
    for (int x = 0; x < w; ++x) {
        g.at(x, 0) = img.at(x, 0) != 0 ? 0 : inf;
        for (int y = 1; y < h; ++y) {
            g.at(x, y) = img.at(x, y) != 0 ? 0 : std::min(inf, g.at(x, y - 1) + 1);
        }
        for (int y = h - 2; y >= 0; --y) {
            if (g.at(x, y + 1) < g.at(x, y)) g.at(x, y) = g.at(x, y + 1) + 1;
        }
    }

    DistanceRaster out(w, h, 0);
    std::vector<int> s_buf(static_cast<std::size_t>(w));
    std::vector<int> t_buf(static_cast<std::size_t>(w));
    int* s = s_buf.data();  // apex column of each envelope segment
    int* t = t_buf.data();  // first column where that segment is minimal
    for (int y = 0; y < h; ++y) {
        const std::int64_t* gy = g.row(y).data();
        auto f = [gy](std::int64_t x, int i) { return (x - i) * (x - i) + gy[i] * gy[i]; };
        auto sep = [gy](std::int64_t i, std::int64_t u) {
            return floor_div(u * u - i * i + gy[u] * gy[u] - gy[i] * gy[i], 2 * (u - i));
        };

        int q = 0;
        s[0] = 0;
        t[0] = 0;
        for (int u = 1; u < w; ++u) {
            while (q >= 0 && f(t[q], s[q]) > f(t[q], u)) --q;
            if (q < 0) {
                q = 0;
                s[0] = u;
            } else {
                const std::int64_t start = 1 + sep(s[q], u);
                if (start < w) {
                    ++q;
                    s[q] = u;
                    t[q] = static_cast<int>(start);
                }
            }
        }
        std::int64_t* row = out.row(y).data();
        for (int u = w - 1; u >= 0; --u) {
            row[u] = f(u, s[q]);
            if (u == t[q]) --q;
        }
    }
    return out;
}

std::vector<std::int64_t> lattice_squared_radii(double max_radius) {
    if (!(max_radius >= 1.0) || !std::isfinite(max_radius)) {
        fail(ErrorCode::InvalidArgument, "maximum dilation radius must be >= 1");
    }
    const auto limit = static_cast<std::int64_t>(std::floor(max_radius * max_radius + 1e-9));
    std::vector<bool> reachable(static_cast<std::size_t>(limit + 1), false);
    for (std::int64_t a = 0; a * a <= limit; ++a) {
        for (std::int64_t b = a; a * a + b * b <= limit; ++b) reachable[static_cast<std::size_t>(a * a + b * b)] = true;
    }
    std::vector<std::int64_t> radii;
    for (std::int64_t d = 1; d <= limit; ++d) {
        if (reachable[static_cast<std::size_t>(d)]) radii.push_back(d);
    }
    return radii;
}

DilationCurve minkowski_curve(const BinaryImage& img, double max_radius) {
    if (!(max_radius >= 2.0)) fail(ErrorCode::InvalidArgument, "maximum dilation radius must be >= 2");
    const auto squared = lattice_squared_radii(max_radius);
    const DistanceRaster dist = edt_squared(img);

    const std::int64_t limit = squared.back();
    std::vector<std::int64_t> histogram(static_cast<std::size_t>(limit + 1), 0);
    for (std::int64_t d : dist.pixels()) {
        if (d <= limit) ++histogram[static_cast<std::size_t>(d)];
    }

    DilationCurve curve;
    curve.squared_radii = squared;
    curve.radii.reserve(squared.size());
    curve.volumes.reserve(squared.size());
    std::int64_t covered = 0;
    std::int64_t next = 0;
    for (std::int64_t d : squared) {
        while (next <= d) covered += histogram[static_cast<std::size_t>(next++)];
        curve.radii.push_back(std::sqrt(static_cast<double>(d)));
        curve.volumes.push_back(covered);
    }
    return curve;
}

DimensionEstimate minkowski_dimension(const BinaryImage& img, double max_radius) {
    const DilationCurve curve = minkowski_curve(img, max_radius);
    std::vector<double> vols(curve.volumes.begin(), curve.volumes.end());
    const LogLogFit fit = fit_loglog(curve.radii, vols);
    return {2.0 - fit.alpha, fit.beta};
}

}  // namespace fraclbp::fractal
