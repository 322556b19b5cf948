/**
 * @file reference.hpp
 * @brief Brute-force oracles used by the test suites and `selftest`.
 *
 * These share no code with the fast estimators they check.
 */
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fraclbp/core.hpp"

namespace fraclbp::reference {

/// O(n^2) nearest-white-pixel scan.
DistanceRaster brute_force_edt(const BinaryImage& img);

/// Dilated-area counts obtained by stamping a disk of squared radius d on
/// every white pixel, one entry per requested d.
std::vector<std::int64_t> stamped_dilation_volumes(const BinaryImage& img, std::span<const std::int64_t> squared_radii);

/// Occupied delta x delta cells, scanning every pixel of every cell.
std::int64_t brute_force_box_count(const BinaryImage& img, int delta);

}  // namespace fraclbp::reference
