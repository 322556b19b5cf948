#include <cmath>
#include <string>

#include "fraclbp/fractal.hpp"

namespace fraclbp::fractal {

LogLogFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        fail(ErrorCode::InvalidArgument, "fit: x and y lengths differ");
    }
    const std::size_t n = x.size();
    if (n < 2) fail(ErrorCode::DegenerateFit, "fit: need at least 2 points, got " + std::to_string(n));

    double mean_x = 0.0;
    double mean_y = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(x[i]) || !std::isfinite(y[i])) {
            fail(ErrorCode::DomainError, "fit: non-finite sample");
        }
        mean_x += x[i];
        mean_y += y[i];
    }
    mean_x /= static_cast<double>(n);
    mean_y /= static_cast<double>(n);

    double var_x = 0.0;
    double cov_xy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mean_x;
        var_x += dx * dx;
        cov_xy += dx * (y[i] - mean_y);
    }
    var_x /= static_cast<double>(n);
    cov_xy /= static_cast<double>(n);
    if (!(var_x > 0.0)) fail(ErrorCode::DegenerateFit, "fit: all scale values are equal");

    LogLogFit fit;
    fit.xs.assign(x.begin(), x.end());
    fit.ys.assign(y.begin(), y.end());
    fit.alpha = cov_xy / var_x;
    fit.beta = mean_y - fit.alpha * mean_x;
    return fit;
}

LogLogFit fit_loglog(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) {
        fail(ErrorCode::InvalidArgument, "fit: x and y lengths differ");
    }
    if (xs.size() < 2) {
        fail(ErrorCode::DegenerateFit, "fit: need at least 2 points, got " + std::to_string(xs.size()));
    }
    std::vector<double> lx(xs.size());
    std::vector<double> ly(ys.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) {
            fail(ErrorCode::DomainError, "fit: log-log samples must be positive");
        }
        lx[i] = std::log(xs[i]);
        ly[i] = std::log(ys[i]);
    }
    return fit_line(lx, ly);
}

}  // namespace fraclbp::fractal
