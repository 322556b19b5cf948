#include "fraclbp/statmodel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fraclbp/fractal.hpp"
#include "fraclbp/parallel.hpp"
#include "fraclbp/rng.hpp"

namespace fraclbp::statmodel {

namespace {

void require_model_inputs(double s, double points, double dim) {
    if (!(s > 0.0 && s <= 1.0)) fail(ErrorCode::DomainError, "scale must be in (0, 1], got " + std::to_string(s));
    if (!(points > 0.0) || !std::isfinite(points)) fail(ErrorCode::DomainError, "point count must be > 0");
    if (!(dim > 0.0) || !std::isfinite(dim)) fail(ErrorCode::DomainError, "self-similar dimension must be > 0");
}

// (1 - x)^n for x in [0, 1]
double survival(double x, double n) { return std::exp(n * std::log1p(-x)); }

Estimate summarize(const std::vector<double>& samples) {
    const auto n = static_cast<double>(samples.size());
    double mean = 0.0;
    for (double v : samples) mean += v;
    mean /= n;
    double ss = 0.0;
    for (double v : samples) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

void require_trials(double s, double points, int trials) {
    if (!(s > 0.0 && s <= 1.0)) fail(ErrorCode::DomainError, "scale must be in (0, 1]");
    if (!(points >= 1.0)) fail(ErrorCode::DomainError, "Monte Carlo needs at least one point");
    if (trials < 2) fail(ErrorCode::InvalidArgument, "Monte Carlo needs at least 2 trials");
}

}  // namespace

std::string_view measure_kind_name(MeasureKind kind) {
    return kind == MeasureKind::Boxes ? "boxes" : "length";
}

MeasureKind parse_measure_kind(std::string_view name) {
    if (name == "boxes") return MeasureKind::Boxes;
    if (name == "length") return MeasureKind::Length;
    fail(ErrorCode::InvalidArgument, "unknown measure kind '" + std::string(name) + "' (expected boxes or length)");
}

double expected_boxes(double s, double points, double dim) {
    require_model_inputs(s, points, dim);
    const double cell = std::pow(s, dim);
    return -std::expm1(points * std::log1p(-cell)) / cell;
}

double coverage_coefficient(double dim) {
    if (dim == 1.0) return 1.0;
    return std::pow(std::numbers::pi, dim / 2.0) / std::tgamma(dim / 2.0 + 1.0);
}

double expected_covered_length(double s, double points, double dim, Boundary boundary) {
    require_model_inputs(s, points, dim);
    if (boundary == Boundary::Clipped) {
        if (dim != 1.0) fail(ErrorCode::InvalidArgument, "clipped coverage is defined for dimension 1 only");
        const double interior = (1.0 - s) * -std::expm1(points * std::log1p(-s));
        const double edge_gap = (survival(s / 2.0, points + 1.0) - survival(s, points + 1.0)) / (points + 1.0);
        return interior + s - 2.0 * edge_gap;
    }
    const double term = coverage_coefficient(dim) * std::pow(s, dim);
    if (term > 1.0) {
        fail(ErrorCode::DomainError, "ball volume " + std::to_string(term) + " exceeds 1 at s=" + std::to_string(s));
    }
    return -std::expm1(points * std::log1p(-term));
}

std::vector<double> default_scales() {
    constexpr int count = 20;
    std::vector<double> s(count);
    for (int i = 0; i < count; ++i) s[i] = std::pow(10.0, -3.0 + 2.0 * i / (count - 1));
    return s;
}

ModelCurve model_alpha_beta(const ModelParams& params, MeasureKind kind) {
    if (params.scales.size() < 2) fail(ErrorCode::DegenerateFit, "model curve needs at least 2 scales");
    ModelCurve curve;
    curve.scales = params.scales;
    curve.measures.reserve(params.scales.size());
    for (double s : params.scales) {
        curve.measures.push_back(kind == MeasureKind::Boxes
                                     ? expected_boxes(s, params.points, params.self_similar_dim)
                                     : expected_covered_length(s, params.points, params.self_similar_dim));
    }
    const fractal::LogLogFit fit = fractal::fit_loglog(curve.scales, curve.measures);
    curve.alpha = fit.alpha;
    curve.beta = fit.beta;
    return curve;
}

Estimate montecarlo_boxes(double s, double points, int trials, std::uint64_t seed, unsigned threads) {
    require_trials(s, points, trials);
    const auto n = static_cast<std::size_t>(std::floor(points));
    const auto bins = static_cast<std::size_t>(std::ceil(1.0 / s - 1e-9));
    std::vector<double> occupied(static_cast<std::size_t>(trials));
    parallel_for(occupied.size(), threads, [&](std::size_t t) {
        CounterRng rng(seed, t);
        std::vector<char> hit(bins, 0);
        std::size_t count = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto b = std::min(bins - 1, static_cast<std::size_t>(rng.uniform() / s));
            count += hit[b] == 0;
            hit[b] = 1;
        }
        occupied[t] = static_cast<double>(count);
    });
    return summarize(occupied);
}

Estimate montecarlo_length(double s, double points, int trials, std::uint64_t seed, unsigned threads,
                           Boundary boundary) {
    require_trials(s, points, trials);
    const auto n = static_cast<std::size_t>(std::floor(points));
    std::vector<double> covered(static_cast<std::size_t>(trials));
    parallel_for(covered.size(), threads, [&](std::size_t t) {
        CounterRng rng(seed, t);
        std::vector<double> centers(n);
        for (double& c : centers) c = rng.uniform();
        std::sort(centers.begin(), centers.end());
        // Each gap between neighboring centers is covered up to s.
        double total = 0.0;
        for (std::size_t i = 1; i < n; ++i) total += std::min(centers[i] - centers[i - 1], s);
        if (boundary == Boundary::Periodic) {
            total += std::min(centers.front() + 1.0 - centers.back(), s);
        } else {
            total += std::min(centers.front(), s / 2.0) + std::min(1.0 - centers.back(), s / 2.0);
        }
        covered[t] = total;
    });
    return summarize(covered);
}

}  // namespace fraclbp::statmodel
