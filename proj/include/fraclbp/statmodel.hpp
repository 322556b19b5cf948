// Expected box counts and covered lengths for uniformly random point sets,
// with Monte Carlo counterparts.
#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "fraclbp/core.hpp"

namespace fraclbp::statmodel {

enum class MeasureKind { Boxes, Length };

std::string_view measure_kind_name(MeasureKind kind);
MeasureKind parse_measure_kind(std::string_view name);

enum class Boundary {
    Periodic,  // ignore interval endpoints
    Clipped,   // bars are cut at 0 and 1
};

struct ModelParams {
    double points = 100.0;          // expected number of white points
    double self_similar_dim = 1.0;  // in (0, 2]
    std::vector<double> scales;     // s values in (0, 1)
};

struct ModelCurve {
    std::vector<double> scales;
    std::vector<double> measures;
    double alpha = 0.0;
    double beta = 0.0;
};

// [1 - (1 - s^d)^n] / s^d
double expected_boxes(double s, double points, double dim);

// 1 - (1 - c*s^d)^n with c the d-ball volume, or c = 1 for d = 1 (a bar of
// length s). Boundary::Clipped integrates the exact edge coverage and needs
// d = 1.
double expected_covered_length(double s, double points, double dim, Boundary boundary = Boundary::Periodic);

// Coefficient c used by expected_covered_length.
double coverage_coefficient(double dim);

std::vector<double> default_scales();

// Fits log measure against log s.
ModelCurve model_alpha_beta(const ModelParams& params, MeasureKind kind);

struct Estimate {
    double mean = 0.0;
    double standard_error = 0.0;
};

// floor(points) uniform points in [0,1]; counts occupied bins of width s.
Estimate montecarlo_boxes(double s, double points, int trials, std::uint64_t seed = 0, unsigned threads = 0);

// floor(points) bars of length s with uniform centers; measures their union.
Estimate montecarlo_length(double s, double points, int trials, std::uint64_t seed = 0, unsigned threads = 0,
                           Boundary boundary = Boundary::Periodic);

}  // namespace fraclbp::statmodel
