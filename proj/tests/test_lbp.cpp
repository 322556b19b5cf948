#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "fraclbp/lbp.hpp"
#include "fraclbp/rng.hpp"

namespace fraclbp::lbp {
namespace {

GrayImage random_gray(int w, int h, std::uint64_t seed, int lo = 0, int hi = 255) {
    CounterRng rng(seed, 11);
    GrayImage img(w, h);
    for (auto& v : img.pixels()) v = static_cast<std::uint8_t>(lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(hi - lo + 1))));
    return img;
}

// Textbook four-weight bilinear sample; independent of the library's
// difference-form evaluation.
double bilinear_oracle(const GrayImage& img, double x, double y) {
    const double rx = std::round(x);
    const double ry = std::round(y);
    if (std::abs(x - rx) < 1e-9) x = rx;
    if (std::abs(y - ry) < 1e-9) y = ry;
    const int x0 = static_cast<int>(std::floor(x));
    const int y0 = static_cast<int>(std::floor(y));
    const double fx = x - x0;
    const double fy = y - y0;
    auto px = [&](int xx, int yy) {
        return (xx < img.width() && yy < img.height()) ? static_cast<double>(img.at(xx, yy)) : 0.0;
    };
    return (1 - fx) * (1 - fy) * px(x0, y0) + fx * (1 - fy) * (fx > 0 ? px(x0 + 1, y0) : 0.0) +
           (1 - fx) * fy * (fy > 0 ? px(x0, y0 + 1) : 0.0) + fx * fy * (fx > 0 && fy > 0 ? px(x0 + 1, y0 + 1) : 0.0);
}

std::uint32_t code_oracle(const GrayImage& img, int x, int y, int P, double R) {
    std::uint32_t code = 0;
    for (int p = 0; p < P; ++p) {
        const double theta = 2.0 * std::numbers::pi * p / P;
        const double g = bilinear_oracle(img, x + R * std::cos(theta), y - R * std::sin(theta));
        if (g >= img.at(x, y)) code |= 1u << p;
    }
    return code;
}

TEST(Lbp, ConstantImageGivesAllOnesCode) {
    const LbpMap map = lbp_map(GrayImage(9, 7, 128));
    for (int y = 0; y < 7; ++y) {
        for (int x = 0; x < 9; ++x) {
            const bool inside = x >= 1 && y >= 1 && x < 8 && y < 6;
            EXPECT_EQ(map.valid.at(x, y), inside ? 1 : 0);
            EXPECT_EQ(map.codes.at(x, y), inside ? 255u : 0u);
        }
    }
}

TEST(Lbp, EncodeSetsBitWhenNeighborNotBelowCenter) {
    const std::array<double, 8> neighbors{6, 1, 7, 2, 9, 3, 8, 0};
    EXPECT_EQ(encode(5.0, neighbors), 85u);
}

TEST(Lbp, ThreeByThreeWithInterpolatedDiagonals) {
    // Visit order E, NE, N, NW, W, SW, S, SE holds 6,1,7,2,9,3,8,0.
    // Diagonals are sampled at (+-0.707, +-0.707), so they are blends:
    // NE 3.62, NW 4.74, SW 5.45, SE 3.33 against center 5.
    const GrayImage img(3, 3, std::vector<std::uint8_t>{2, 7, 1,
                                                        9, 5, 6,
                                                        3, 8, 0});
    const LbpMap map = lbp_map(img, {8, 1.0});
    EXPECT_EQ(code_oracle(img, 1, 1, 8, 1.0), 117u);
    EXPECT_EQ(map.codes.at(1, 1), 117u);
}

TEST(Lbp, FourNeighborsAreLatticeSamples) {
    const GrayImage img(3, 3, std::vector<std::uint8_t>{0, 7, 0,
                                                        9, 5, 6,
                                                        0, 2, 0});
    const LbpMap map = lbp_map(img, {4, 1.0});
    // E=6 (bit0), N=7 (bit1), W=9 (bit2), S=2 (no bit3)
    EXPECT_EQ(map.codes.at(1, 1), 7u);

    const LbpMap rnd = lbp_map(random_gray(20, 20, 5), {4, 1.0});
    for (std::uint32_t c : rnd.codes.pixels()) EXPECT_LE(c, 15u);
}

TEST(Lbp, MatchesInterpolationOracleOnRandomImages) {
    const std::array<LbpParams, 4> configs{{{8, 1.0}, {8, 2.0}, {16, 2.0}, {12, 1.5}}};
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const GrayImage img = random_gray(23, 19, seed);
        for (const auto& params : configs) {
            const LbpMap map = lbp_map(img, params);
            const int b = params.border();
            for (int y = b; y < img.height() - b; ++y) {
                for (int x = b; x < img.width() - b; ++x) {
                    ASSERT_EQ(map.codes.at(x, y), code_oracle(img, x, y, params.neighbors, params.radius))
                        << "P=" << params.neighbors << " R=" << params.radius << " at " << x << "," << y;
                }
            }
        }
    }
}

TEST(Lbp, GrayShiftInvariance) {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const GrayImage img = random_gray(31, 27, seed, 0, 200);
        GrayImage shifted = img;
        for (auto& v : shifted.pixels()) v = static_cast<std::uint8_t>(v + 55);
        for (const LbpParams params : {LbpParams{8, 1.0}, LbpParams{16, 2.0}, LbpParams{8, 2.5}}) {
            EXPECT_EQ(lbp_map(img, params).codes, lbp_map(shifted, params).codes);
        }
    }
}

TEST(Lbp, RejectsBadInput) {
    EXPECT_THROW(lbp_map(GrayImage(2, 5, 1)), Error);
    try {
        lbp_map(GrayImage(4, 4, 1), {8, 2.0});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ImageTooSmall);
    }
    EXPECT_THROW(lbp_map(GrayImage(9, 9, 1), {3, 1.0}), Error);
    EXPECT_THROW(lbp_map(GrayImage(9, 9, 1), {25, 1.0}), Error);
    EXPECT_THROW(lbp_map(GrayImage(9, 9, 1), {8, 0.0}), Error);
}

TEST(ThresholdStack, LevelZeroOnAllValidMapIsAllOnes) {
    LbpMap map{CodeRaster(4, 3, std::vector<std::uint32_t>(12, 0u)), BinaryImage(4, 3, 1), 8};
    map.codes.at(2, 1) = 77;
    const std::array<std::uint32_t, 1> levels{0};
    const auto stack = threshold_stack(map, levels);
    ASSERT_EQ(stack.size(), 1u);
    EXPECT_EQ(stack[0], BinaryImage(4, 3, 1));
}

TEST(ThresholdStack, SuperlevelExamples) {
    LbpMap map{CodeRaster(3, 1, std::vector<std::uint32_t>{3, 7, 200}), BinaryImage(3, 1, 1), 8};
    const std::array<std::uint32_t, 1> levels{100};
    EXPECT_EQ(threshold_stack(map, levels)[0].data(), (std::vector<std::uint8_t>{0, 0, 1}));

    const LbpMap constant = lbp_map(GrayImage(10, 10, 128));
    const std::array<std::uint32_t, 3> three{64, 128, 192};
    const auto stack = threshold_stack(constant, three);
    ASSERT_EQ(stack.size(), 3u);
    EXPECT_EQ(stack[0], constant.valid);
    EXPECT_EQ(stack[1], stack[0]);
    EXPECT_EQ(stack[2], stack[0]);
}

TEST(ThresholdStack, NestedAndMaskedByValidity) {
    const LbpMap map = lbp_map(random_gray(40, 33, 9));
    const auto levels = default_levels(8);
    const auto stack = threshold_stack(map, levels);
    for (std::size_t k = 0; k < stack.size(); ++k) {
        for (std::size_t i = 0; i < stack[k].size(); ++i) {
            ASSERT_LE(stack[k].pixels()[i], map.valid.pixels()[i]);
            if (k > 0) ASSERT_LE(stack[k].pixels()[i], stack[k - 1].pixels()[i]);
        }
    }
}

TEST(ThresholdStack, RejectsBadLevels) {
    const LbpMap map = lbp_map(GrayImage(5, 5, 3));
    const std::array<std::uint32_t, 1> too_high{256};
    const std::array<std::uint32_t, 2> unordered{16, 16};
    for (auto levels : {std::span<const std::uint32_t>(too_high), std::span<const std::uint32_t>(unordered)}) {
        try {
            threshold_stack(map, levels);
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::LevelOutOfRange);
        }
    }
}

TEST(ThresholdStack, DefaultLevels) {
    const auto levels = default_levels(8);
    ASSERT_EQ(levels.size(), 31u);
    EXPECT_EQ(levels.front(), 8u);
    EXPECT_EQ(levels.back(), 248u);
    EXPECT_EQ(default_levels(4).size(), 15u);
}

}  // namespace
}  // namespace fraclbp::lbp
