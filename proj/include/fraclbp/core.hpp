/**
 * @file core.hpp
 * @brief Error type and the row-major raster container shared by every module.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fraclbp {

enum class ErrorCode {
    FileNotFound,
    UnsupportedFormat,
    CorruptHeader,
    IoError,
    ImageTooSmall,
    LevelOutOfRange,
    InvalidArgument,
    DegenerateFit,
    EmptyImage,
    BadDelta,
    ZeroMass,
    NumericalOverflow,
    DomainError,
    DegenerateData,
    SingularCovariance,
    UnknownLabelSpace,
    InsufficientData,
    ConfigError,
    BatchFailed,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure in the library is reported as an Error carrying a code.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

/// Row-major 2-D grid. The tag parameter keeps semantically different
/// rasters with the same pixel type (gray vs binary) from mixing.
template <typename T, typename Tag = void>
class Raster {
public:
    using value_type = T;

    Raster() = default;
    Raster(int width, int height, T fill = T{})
        : width_(width), height_(height), data_(checked_size(width, height), fill) {}
    Raster(int width, int height, std::vector<T> data)
        : width_(width), height_(height), data_(std::move(data)) {
        if (data_.size() != checked_size(width, height)) {
            fail(ErrorCode::InvalidArgument, "raster data length does not match width*height");
        }
    }

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    T& at(int x, int y) { return data_[index(x, y)]; }
    const T& at(int x, int y) const { return data_[index(x, y)]; }

    std::span<T> row(int y) { return {data_.data() + index(0, y), static_cast<std::size_t>(width_)}; }
    std::span<const T> row(int y) const {
        return {data_.data() + index(0, y), static_cast<std::size_t>(width_)};
    }

    std::span<T> pixels() noexcept { return data_; }
    std::span<const T> pixels() const noexcept { return data_; }
    const std::vector<T>& data() const noexcept { return data_; }

    friend bool operator==(const Raster&, const Raster&) = default;

private:
    static std::size_t checked_size(int width, int height) {
        if (width < 0 || height < 0) {
            fail(ErrorCode::InvalidArgument, "raster dimensions must be non-negative");
        }
        return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    }
    std::size_t index(int x, int y) const noexcept {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(x);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<T> data_;
};

struct GrayTag;
struct BinaryTag;

/// 8-bit intensities in [0,255].
using GrayImage = Raster<std::uint8_t, GrayTag>;
/// Points of interest: 1 = white, 0 = background.
using BinaryImage = Raster<std::uint8_t, BinaryTag>;
/// Raw LBP codes.
using CodeRaster = Raster<std::uint32_t>;
/// Squared Euclidean distances (pixel units).
using DistanceRaster = Raster<std::int64_t>;

}  // namespace fraclbp
