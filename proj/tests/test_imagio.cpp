#include <gtest/gtest.h>
#include <png.h>

#include <filesystem>
#include <functional>
#include <fstream>

#include "fraclbp/imagio.hpp"
#include "fraclbp/rng.hpp"

namespace fraclbp::imagio {
namespace {

namespace fs = std::filesystem;

class ImagioTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("fraclbp_imagio_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    fs::path write_bytes(const std::string& name, const std::string& bytes) {
        const fs::path p = dir_ / name;
        std::ofstream(p, std::ios::binary) << bytes;
        return p;
    }

    fs::path write_rgb_png(const std::string& name, int w, int h, const std::vector<std::uint8_t>& rgb) {
        const fs::path p = dir_ / name;
        png_image image{};
        image.version = PNG_IMAGE_VERSION;
        image.width = static_cast<png_uint_32>(w);
        image.height = static_cast<png_uint_32>(h);
        image.format = PNG_FORMAT_RGB;
        EXPECT_NE(png_image_write_to_file(&image, p.c_str(), 0, rgb.data(), 0, nullptr), 0);
        return p;
    }

    fs::path dir_;
};

ErrorCode error_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an Error";
    return ErrorCode::InvalidArgument;
}

TEST_F(ImagioTest, AsciiPgmReadsExactValues) {
    const auto p = write_bytes("a.pgm", "P2\n# comment line\n2 2\n255\n0 10\n20 255\n");
    const GrayImage img = load_gray(p);
    EXPECT_EQ(img, GrayImage(2, 2, std::vector<std::uint8_t>{0, 10, 20, 255}));
}

TEST_F(ImagioTest, TruncatedBinaryPayloadIsCorruptHeader) {
    const auto p = write_bytes("t.pgm", std::string("P5\n4 4\n255\n") + std::string(10, '\x07'));
    EXPECT_EQ(error_of([&] { load_gray(p); }), ErrorCode::CorruptHeader);
}

TEST_F(ImagioTest, HeaderErrors) {
    EXPECT_EQ(error_of([&] { load_gray(dir_ / "missing.pgm"); }), ErrorCode::FileNotFound);
    EXPECT_EQ(error_of([&] { load_gray(write_bytes("x.ppm", "P6\n1 1\n255\n\x01\x02\x03")); }),
              ErrorCode::UnsupportedFormat);
    EXPECT_EQ(error_of([&] { load_gray(write_bytes("deep.pgm", "P2\n1 1\n65535\n7\n")); }),
              ErrorCode::UnsupportedFormat);
    EXPECT_EQ(error_of([&] { load_gray(write_bytes("nodims.pgm", "P2\n# only a comment\n")); }),
              ErrorCode::CorruptHeader);
    EXPECT_EQ(error_of([&] { load_gray(write_bytes("big.pgm", "P2\n1 1\n100\n101\n")); }),
              ErrorCode::CorruptHeader);
    EXPECT_EQ(error_of([&] { load_gray(write_bytes("junk.png", "\x89PNG\r\n\x1a\nnot really")); }),
              ErrorCode::CorruptHeader);
}

TEST_F(ImagioTest, RgbPngUsesRoundedLuminance) {
    // (0,0,250) sits exactly on a .5 boundary: 0.114 * 250 = 28.5.
    const auto p = write_rgb_png("c.png", 3, 1, {255, 255, 255, 0, 0, 250, 10, 20, 30});
    const GrayImage img = load_gray(p);
    ASSERT_EQ(img.width(), 3);
    EXPECT_EQ(img.at(0, 0), 255);
    EXPECT_EQ(img.at(1, 0), 29);
    EXPECT_EQ(img.at(2, 0), 18);
    EXPECT_EQ(luminance(255, 255, 255), 255);
    EXPECT_EQ(luminance(0, 0, 0), 0);
}

TEST_F(ImagioTest, PgmAndPngRoundTrip) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        CounterRng rng(seed, 0);
        const int w = 1 + static_cast<int>(rng.below(40));
        const int h = 1 + static_cast<int>(rng.below(40));
        GrayImage img(w, h);
        for (auto& v : img.pixels()) v = static_cast<std::uint8_t>(rng.below(256));

        save_pgm(img, dir_ / "b.pgm", PgmEncoding::Binary);
        save_pgm(img, dir_ / "a.pgm", PgmEncoding::Ascii);
        save_png(img, dir_ / "g.png");
        EXPECT_EQ(load_gray(dir_ / "b.pgm"), img);
        EXPECT_EQ(load_gray(dir_ / "a.pgm"), img);
        EXPECT_EQ(load_gray(dir_ / "g.png"), img);
    }
}

TEST(ToBinaryGeq, ThresholdExamples) {
    const Raster<int> values(3, 1, std::vector<int>{0, 5, 10});
    EXPECT_EQ(to_binary_geq(values, 0).data(), (std::vector<std::uint8_t>{1, 1, 1}));
    EXPECT_EQ(to_binary_geq(values, 6).data(), (std::vector<std::uint8_t>{0, 0, 1}));
    EXPECT_EQ(to_binary_geq(values, 11).data(), (std::vector<std::uint8_t>{0, 0, 0}));
}

TEST(ToBinaryGeq, MonotoneInThreshold) {
    CounterRng rng(3, 0);
    GrayImage img(17, 13);
    for (auto& v : img.pixels()) v = static_cast<std::uint8_t>(rng.below(256));
    for (int t1 = 0; t1 < 256; t1 += 15) {
        const BinaryImage a = to_binary_geq(img, static_cast<std::uint8_t>(t1));
        for (int t2 = t1; t2 < 256; t2 += 20) {
            const BinaryImage b = to_binary_geq(img, static_cast<std::uint8_t>(t2));
            for (std::size_t i = 0; i < a.size(); ++i) ASSERT_LE(b.pixels()[i], a.pixels()[i]);
        }
    }
}

}  // namespace
}  // namespace fraclbp::imagio
