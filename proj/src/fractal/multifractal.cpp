#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "fraclbp/fractal.hpp"
#include "integral.hpp"

namespace fraclbp::fractal {

std::vector<double> default_multifractal_qs() {
    std::vector<double> qs;
    for (int q = -10; q <= 10; q += 2) qs.push_back(q);
    return qs;
}

std::vector<int> default_multifractal_sizes() { return {2, 3, 5, 10, 25, 50, 100, 125, 250}; }

namespace {

std::string describe_q(double q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

// sum_i mu_i log mu_i for one grid, with mu computed in log space:
// log mu_i = q log p_i - log sum_j exp(q log p_j).
double weighted_entropy(std::span<const double> log_p, double q, std::vector<double>& scratch) {
    scratch.resize(log_p.size());
    double peak = -INFINITY;
    for (std::size_t i = 0; i < log_p.size(); ++i) {
        scratch[i] = q * log_p[i];
        if (!std::isfinite(scratch[i])) {
            fail(ErrorCode::NumericalOverflow, "multifractal: p^q is not representable at q = " + describe_q(q));
        }
        peak = std::max(peak, scratch[i]);
    }
    double partition = 0.0;
    for (double a : scratch) partition += std::exp(a - peak);
    const double log_partition = peak + std::log(partition);

    double total = 0.0;
    for (double a : scratch) {
        const double log_mu = a - log_partition;
        total += std::exp(log_mu) * log_mu;
    }
    if (!std::isfinite(log_partition) || !std::isfinite(total)) {
        fail(ErrorCode::NumericalOverflow, "multifractal: sum of p^q overflowed at q = " + describe_q(q));
    }
    return total;
}

}  // namespace

MultifractalSpectrum multifractal_spectrum(const BinaryImage& img, std::span<const double> qs,
                                           std::span<const int> sizes) {
    for (double q : qs) {
        if (!std::isfinite(q)) fail(ErrorCode::InvalidArgument, "multifractal: q must be finite");
    }
    for (int size : sizes) {
        if (size < 2) fail(ErrorCode::BadDelta, "multifractal: box size must be >= 2, got " + std::to_string(size));
    }
    const detail::IntegralImage sat(img);
    if (sat.total() == 0) fail(ErrorCode::EmptyImage, "multifractal spectrum needs at least one white pixel");
    const double log_total = std::log(static_cast<double>(sat.total()));

    // entropies[q][L]
    std::vector<std::vector<double>> entropies(qs.size(), std::vector<double>(sizes.size()));
    std::vector<double> log_p;
    std::vector<double> scratch;
    for (std::size_t l = 0; l < sizes.size(); ++l) {
        log_p.clear();
        detail::for_each_grid_cell(sat, sizes[l], [&](std::int64_t mass) {
            if (mass > 0) log_p.push_back(std::log(static_cast<double>(mass)) - log_total);
        });
        for (std::size_t k = 0; k < qs.size(); ++k) entropies[k][l] = weighted_entropy(log_p, qs[k], scratch);
    }

    std::vector<double> log_sizes(sizes.size());
    std::transform(sizes.begin(), sizes.end(), log_sizes.begin(), [](int s) { return std::log(static_cast<double>(s)); });

    MultifractalSpectrum spectrum;
    spectrum.qs.assign(qs.begin(), qs.end());
    spectrum.fvals.reserve(qs.size());
    for (std::size_t k = 0; k < qs.size(); ++k) spectrum.fvals.push_back(fit_line(log_sizes, entropies[k]).alpha);
    return spectrum;
}

}  // namespace fraclbp::fractal
