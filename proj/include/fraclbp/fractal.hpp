/**
 * @file fractal.hpp
 * @brief Fractal estimators on binary images: box counting, Bouligand-Minkowski
 *        (via an exact Euclidean distance transform), gliding-box lacunarity and
 *        the multifractal spectrum, plus the shared least-squares line fit.
 *
 * All logarithms are natural. Box grids are anchored at pixel (0,0) and the
 * last row/column of cells may be partial.
 */
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fraclbp/core.hpp"

namespace fraclbp::fractal {

/// Least-squares line y = alpha*x + beta on log-transformed samples.
struct LogLogFit {
    std::vector<double> xs;  ///< log of the scale values
    std::vector<double> ys;  ///< log of the measure values
    double alpha = 0.0;
    double beta = 0.0;
};

/// Fits log(ys) against log(xs). Requires >= 2 points, positive inputs and
/// at least two distinct xs.
LogLogFit fit_loglog(std::span<const double> xs, std::span<const double> ys);

/// Same fit on samples that are already in log space.
LogLogFit fit_line(std::span<const double> x, std::span<const double> y);

struct DimensionEstimate {
    double dim = 0.0;
    double beta = 0.0;
};

struct LineCoefficients {
    double alpha = 0.0;
    double beta = 0.0;
};

// --- box counting ----------------------------------------------------------

struct BoxCountCurve {
    std::vector<int> deltas;
    std::vector<std::int64_t> counts;
};

/// Powers of two from 2 up to half the smaller image side.
std::vector<int> default_box_deltas(int width, int height);

BoxCountCurve box_count(const BinaryImage& img, std::span<const int> deltas);

/// dim = -alpha of the fit of log N against log delta.
DimensionEstimate box_dimension(const BinaryImage& img, std::span<const int> deltas);

// --- Bouligand-Minkowski ---------------------------------------------------

/// Exact squared distance from every pixel to the nearest white pixel
/// (two-pass separable transform, integer arithmetic throughout).
DistanceRaster edt_squared(const BinaryImage& img);

struct DilationCurve {
    std::vector<std::int64_t> squared_radii;  ///< achievable lattice distances d
    std::vector<double> radii;                ///< sqrt(d)
    std::vector<std::int64_t> volumes;        ///< pixels with squared distance <= d
};

inline constexpr double kDefaultMaxRadius = 9.0;

/// Squared radii d in (0, max_radius^2] expressible as a sum of two squares.
std::vector<std::int64_t> lattice_squared_radii(double max_radius);

DilationCurve minkowski_curve(const BinaryImage& img, double max_radius = kDefaultMaxRadius);

/// dim = 2 - alpha of the fit of log V against log radius.
DimensionEstimate minkowski_dimension(const BinaryImage& img, double max_radius = kDefaultMaxRadius);

// --- lacunarity --------------------------------------------------------------

struct LacunarityCurve {
    std::vector<int> deltas;
    std::vector<double> lambdas;
};

/// {2, 3, ..., 14}.
std::vector<int> default_lacunarity_deltas();

/// Gliding box with stride 1 over every fully-inside position;
/// lambda = E[k^2] / E[k]^2 of the box masses k.
LacunarityCurve lacunarity_curve(const BinaryImage& img, std::span<const int> deltas);

LineCoefficients lacunarity_fit(const BinaryImage& img, std::span<const int> deltas);

// --- multifractal spectrum ------------------------------------------------

struct MultifractalSpectrum {
    std::vector<double> qs;
    std::vector<double> fvals;
};

/// {-10, -8, ..., 10}.
std::vector<double> default_multifractal_qs();
/// {2, 3, 5, 10, 25, 50, 100, 125, 250}.
std::vector<int> default_multifractal_sizes();

/// f(q) is the slope of sum_i mu_i log mu_i against log L, where
/// mu_i = p_i^q / sum_j p_j^q over the cells with nonzero mass.
MultifractalSpectrum multifractal_spectrum(const BinaryImage& img, std::span<const double> qs,
                                           std::span<const int> sizes);

}  // namespace fraclbp::fractal
