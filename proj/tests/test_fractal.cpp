#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "fraclbp/fractal.hpp"
#include "fraclbp/imagio.hpp"
#include "fraclbp/reference.hpp"
#include "fraclbp/rng.hpp"
#include "fraclbp/synth.hpp"

namespace fraclbp::fractal {
namespace {

constexpr double kE = std::numbers::e;

ErrorCode error_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an Error";
    return ErrorCode::InvalidArgument;
}

// ---------------------------------------------------------------------------
// least-squares fit

TEST(FitLogLog, ExactLineInLogSpace) {
    const std::array<double, 3> xs{1.0, kE, kE * kE};
    const std::array<double, 3> ys{kE, std::pow(kE, 4), std::pow(kE, 7)};
    const LogLogFit fit = fit_loglog(xs, ys);
    EXPECT_NEAR(fit.alpha, 3.0, 1e-12);
    EXPECT_NEAR(fit.beta, 1.0, 1e-12);
    EXPECT_EQ(fit.xs.size(), 3u);
}

TEST(FitLogLog, ExactPowerLaw) {
    const std::array<double, 4> xs{1, 2, 4, 8};
    std::array<double, 4> ys{};
    for (std::size_t i = 0; i < 4; ++i) ys[i] = 2.0 * std::pow(xs[i], 1.5);
    const LogLogFit fit = fit_loglog(xs, ys);
    EXPECT_NEAR(fit.alpha, 1.5, 1e-12);
    EXPECT_NEAR(fit.beta, std::log(2.0), 1e-12);
}

TEST(FitLogLog, DegenerateInputs) {
    const std::array<double, 2> same{2, 2};
    const std::array<double, 2> ys{5, 9};
    EXPECT_EQ(error_of([&] { fit_loglog(same, ys); }), ErrorCode::DegenerateFit);
    const std::array<double, 1> one{3};
    EXPECT_EQ(error_of([&] { fit_loglog(one, one); }), ErrorCode::DegenerateFit);
    const std::array<double, 2> xs{1, 2};
    const std::array<double, 2> bad{1, 0};
    EXPECT_EQ(error_of([&] { fit_loglog(xs, bad); }), ErrorCode::DomainError);
}

TEST(FitLogLog, AgreesWithNormalEquations) {
    CounterRng rng(21, 0);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + rng.below(12);
        std::vector<double> x(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = 4.0 * rng.uniform() - 2.0;
            y[i] = 10.0 * rng.uniform() - 5.0;
        }
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < n; ++i) {
            sx += x[i];
            sy += y[i];
            sxx += x[i] * x[i];
            sxy += x[i] * y[i];
        }
        const double dn = static_cast<double>(n);
        const double alpha = (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
        const double beta = (sy - alpha * sx) / dn;
        const LogLogFit fit = fit_line(x, y);
        EXPECT_NEAR(fit.alpha, alpha, 1e-9 * (1 + std::abs(alpha)));
        EXPECT_NEAR(fit.beta, beta, 1e-9 * (1 + std::abs(beta)));
    }
}

// ---------------------------------------------------------------------------
// box counting

TEST(BoxCount, FilledSquare) {
    const std::array<int, 4> deltas{2, 4, 8, 16};
    const BoxCountCurve curve = box_count(synth::filled(64, 64), deltas);
    EXPECT_EQ(curve.counts, (std::vector<std::int64_t>{1024, 256, 64, 16}));
    const DimensionEstimate est = box_dimension(synth::filled(64, 64), deltas);
    EXPECT_NEAR(est.dim, 2.0, 1e-12);
    EXPECT_NEAR(est.beta, std::log(4096.0), 1e-12);
}

TEST(BoxCount, SingleRow) {
    const std::array<int, 4> deltas{2, 4, 8, 16};
    const BinaryImage line = synth::horizontal_line(64, 64, 0);
    EXPECT_EQ(box_count(line, deltas).counts, (std::vector<std::int64_t>{32, 16, 8, 4}));
    EXPECT_NEAR(box_dimension(line, deltas).dim, 1.0, 1e-12);
}

TEST(BoxCount, SierpinskiCarpetCountsAreExact) {
    const BinaryImage carpet = synth::sierpinski_carpet(5);
    ASSERT_EQ(carpet.width(), 243);
    const std::array<int, 4> deltas{3, 9, 27, 81};
    // 8^(5-k) occupied cells at delta = 3^k.
    EXPECT_EQ(box_count(carpet, deltas).counts, (std::vector<std::int64_t>{4096, 512, 64, 8}));
    EXPECT_NEAR(box_dimension(carpet, deltas).dim, std::log(8.0) / std::log(3.0), 1e-9);
}

TEST(BoxCount, MatchesBruteForceAndIsMonotone) {
    for (std::uint64_t s = 0; s < 40; ++s) {
        CounterRng rng(8, s);
        const int w = 4 + static_cast<int>(rng.below(60));
        const int h = 4 + static_cast<int>(rng.below(60));
        const BinaryImage img = synth::random_binary(w, h, 8, s);
        std::vector<int> deltas;
        for (int d = 2; d <= std::min(w, h); ++d) deltas.push_back(d);
        const BoxCountCurve curve = box_count(img, deltas);
        for (std::size_t i = 0; i < deltas.size(); ++i) {
            ASSERT_EQ(curve.counts[i], reference::brute_force_box_count(img, deltas[i]));
            ASSERT_GE(curve.counts[i], 1);
            if (i > 0) {
                ASSERT_LE(curve.counts[i], curve.counts[i - 1]);
            }
        }
        for (int d = 2; 2 * d <= std::min(w, h); d *= 2) {
            const std::int64_t n1 = reference::brute_force_box_count(img, d);
            const std::int64_t n2 = reference::brute_force_box_count(img, 2 * d);
            ASSERT_LE(n2, n1);
            ASSERT_GE(4 * n2, n1);
        }
    }
}

TEST(BoxCount, TranslationByWholeCellsIsInvariant) {
    const BinaryImage base = synth::random_binary(24, 20, 77, 1);
    const std::array<int, 3> deltas{2, 4, 8};
    BinaryImage padded(64, 64, 0);
    for (int y = 0; y < base.height(); ++y)
        for (int x = 0; x < base.width(); ++x) padded.at(x, y) = base.at(x, y);
    const auto reference_counts = box_count(padded, deltas).counts;
    for (int shift : {8, 16, 32}) {
        BinaryImage moved(64, 64, 0);
        for (int y = 0; y < base.height(); ++y)
            for (int x = 0; x < base.width(); ++x) moved.at(x + shift, y + shift) = base.at(x, y);
        EXPECT_EQ(box_count(moved, deltas).counts, reference_counts) << "shift " << shift;
    }
}

TEST(BoxCount, Errors) {
    const std::array<int, 2> deltas{2, 4};
    EXPECT_EQ(error_of([&] { box_count(BinaryImage(8, 8, 0), deltas); }), ErrorCode::EmptyImage);
    const std::array<int, 1> tiny{1};
    EXPECT_EQ(error_of([&] { box_count(synth::filled(8, 8), tiny); }), ErrorCode::BadDelta);
    const std::array<int, 1> huge{9};
    EXPECT_EQ(error_of([&] { box_count(synth::filled(8, 8), huge); }), ErrorCode::BadDelta);
}

TEST(BoxCount, DefaultDeltas) {
    EXPECT_EQ(default_box_deltas(96, 96), (std::vector<int>{2, 4, 8, 16, 32}));
    EXPECT_EQ(default_box_deltas(64, 200), (std::vector<int>{2, 4, 8, 16, 32}));
    EXPECT_EQ(default_box_deltas(63, 63), (std::vector<int>{2, 4, 8, 16}));
    EXPECT_TRUE(default_box_deltas(3, 3).empty());
}

// ---------------------------------------------------------------------------
// distance transform and dilation

TEST(Edt, SinglePixelCorner) {
    BinaryImage img(3, 3, 0);
    img.at(0, 0) = 1;
    const DistanceRaster d = edt_squared(img);
    EXPECT_EQ(d.data(), (std::vector<std::int64_t>{0, 1, 4, 1, 2, 5, 4, 5, 8}));
}

TEST(Edt, AllWhiteIsZero) {
    const DistanceRaster d = edt_squared(synth::filled(7, 5));
    for (auto v : d.pixels()) EXPECT_EQ(v, 0);
}

TEST(Edt, EmptyImageRejected) {
    EXPECT_EQ(error_of([] { edt_squared(BinaryImage(4, 4, 0)); }), ErrorCode::EmptyImage);
}

TEST(Edt, MatchesBruteForce) {
    for (std::uint64_t s = 0; s < 150; ++s) {
        CounterRng rng(5, s);
        const int w = 1 + static_cast<int>(rng.below(20));
        const int h = 1 + static_cast<int>(rng.below(20));
        const BinaryImage img = synth::random_binary(w, h, 5, s);
        ASSERT_EQ(edt_squared(img), reference::brute_force_edt(img)) << w << "x" << h;
    }
    // Sparse images stress the far-field parabolas.
    BinaryImage sparse(31, 17, 0);
    sparse.at(30, 0) = 1;
    sparse.at(3, 16) = 1;
    EXPECT_EQ(edt_squared(sparse), reference::brute_force_edt(sparse));
}

TEST(Minkowski, LatticeRadii) {
    const auto radii = lattice_squared_radii(9.0);
    EXPECT_EQ(radii.front(), 1);
    EXPECT_EQ(radii.back(), 81);
    for (std::int64_t d : {1, 2, 4, 5, 8, 9, 10, 13, 16, 25, 50, 65, 80, 81}) {
        EXPECT_NE(std::find(radii.begin(), radii.end(), d), radii.end()) << d;
    }
    for (std::int64_t d : {3, 6, 7, 11, 12, 14, 21, 77, 79}) {
        EXPECT_EQ(std::find(radii.begin(), radii.end(), d), radii.end()) << d;
    }
}

TEST(Minkowski, SinglePixelDisks) {
    BinaryImage img(41, 41, 0);
    img.at(20, 20) = 1;
    const DilationCurve curve = minkowski_curve(img, 9.0);
    auto volume_at = [&](std::int64_t d) {
        const auto it = std::find(curve.squared_radii.begin(), curve.squared_radii.end(), d);
        return curve.volumes[static_cast<std::size_t>(it - curve.squared_radii.begin())];
    };
    EXPECT_EQ(volume_at(1), 5);
    EXPECT_EQ(volume_at(2), 9);
    EXPECT_EQ(volume_at(4), 13);
    EXPECT_DOUBLE_EQ(curve.radii[0], 1.0);
}

TEST(Minkowski, AllWhiteVolumeIsArea) {
    const DilationCurve curve = minkowski_curve(synth::filled(12, 9), 9.0);
    for (auto v : curve.volumes) EXPECT_EQ(v, 108);
    const DimensionEstimate est = minkowski_dimension(synth::filled(12, 9), 9.0);
    EXPECT_DOUBLE_EQ(est.dim, 2.0);
}

TEST(Minkowski, MatchesDiskStamping) {
    for (std::uint64_t s = 0; s < 25; ++s) {
        const BinaryImage img = synth::random_binary(32, 32, 6, s);
        const DilationCurve curve = minkowski_curve(img, 9.0);
        ASSERT_EQ(curve.volumes, reference::stamped_dilation_volumes(img, curve.squared_radii));
        for (std::size_t i = 1; i < curve.volumes.size(); ++i) ASSERT_GE(curve.volumes[i], curve.volumes[i - 1]);
        ASSERT_GE(curve.volumes.front(), static_cast<std::int64_t>(imagio::count_white(img)));
    }
}

TEST(Minkowski, LineMatchesSegmentDilationOracle) {
    // A row spanning the full width dilates to W * (2 floor(r) + 1) pixels
    // while the band stays inside the image.
    const int width = 1024;
    const BinaryImage line = synth::horizontal_line(width, 64, 32);
    std::vector<double> radii, volumes;
    for (std::int64_t d = 1; d <= 81; ++d) {
        bool lattice = false;
        for (std::int64_t a = 0; a * a <= d; ++a) {
            const auto b = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(d - a * a))));
            lattice = lattice || a * a + b * b == d;
        }
        if (!lattice) continue;
        const double r = std::sqrt(static_cast<double>(d));
        radii.push_back(r);
        volumes.push_back(width * (2.0 * std::floor(r + 1e-12) + 1.0));
    }
    const double oracle = 2.0 - fit_loglog(radii, volumes).alpha;
    const double dim = minkowski_dimension(line).dim;
    EXPECT_NEAR(dim, oracle, 1e-9);
    EXPECT_NEAR(dim, 1.0, 0.15);
}

TEST(Minkowski, CarpetBetweenLineAndPlane) {
    const double carpet = minkowski_dimension(synth::sierpinski_carpet(5)).dim;
    const double line = minkowski_dimension(synth::horizontal_line(243, 243, 121)).dim;
    EXPECT_GE(carpet, 1.75);
    EXPECT_LE(carpet, 2.0);
    EXPECT_GT(carpet, line);
}

// ---------------------------------------------------------------------------
// lacunarity

TEST(Lacunarity, FilledImageIsExactlyOne) {
    const auto deltas = default_lacunarity_deltas();
    const LacunarityCurve curve = lacunarity_curve(synth::filled(40, 30), deltas);
    for (double l : curve.lambdas) EXPECT_EQ(l, 1.0);
    const LineCoefficients fit = lacunarity_fit(synth::filled(40, 30), deltas);
    EXPECT_EQ(fit.alpha, 0.0);
    EXPECT_EQ(fit.beta, 0.0);
}

TEST(Lacunarity, SinglePixelEnumeration) {
    BinaryImage img(4, 4, 0);
    img.at(1, 2) = 1;
    const std::array<int, 1> deltas{2};
    // 9 positions, 4 of which hold the pixel: E[k] = E[k^2] = 4/9.
    EXPECT_EQ(lacunarity_curve(img, deltas).lambdas[0], 2.25);
}

TEST(Lacunarity, MatchesDirectEnumeration) {
    for (std::uint64_t s = 0; s < 10; ++s) {
        const BinaryImage img = synth::random_binary(21, 17, 14, s);
        const auto deltas = default_lacunarity_deltas();
        const LacunarityCurve curve = lacunarity_curve(img, deltas);
        for (std::size_t i = 0; i < deltas.size(); ++i) {
            const int d = deltas[i];
            double m1 = 0, m2 = 0, n = 0;
            for (int y = 0; y + d <= img.height(); ++y) {
                for (int x = 0; x + d <= img.width(); ++x) {
                    double k = 0;
                    for (int yy = y; yy < y + d; ++yy)
                        for (int xx = x; xx < x + d; ++xx) k += img.at(xx, yy);
                    m1 += k;
                    m2 += k * k;
                    n += 1;
                }
            }
            EXPECT_NEAR(curve.lambdas[i], (m2 / n) / ((m1 / n) * (m1 / n)), 1e-12);
        }
    }
}

TEST(Lacunarity, BernoulliFieldFollowsBinomialMoments) {
    const double p = 0.5;
    const BinaryImage field = synth::bernoulli_field(512, 512, p, 2024);
    const std::array<int, 1> four{4};
    EXPECT_NEAR(lacunarity_curve(field, four).lambdas[0], 1.0 + (1.0 - p) / (p * 16.0), 0.01);

    // The log-log fit of the measured curve tracks the fit of the binomial
    // closed form 1 + (1-p)/(p d^2) over d = 2..14.
    const auto deltas = default_lacunarity_deltas();
    std::vector<double> xs(deltas.begin(), deltas.end());
    std::vector<double> model(deltas.size());
    for (std::size_t i = 0; i < deltas.size(); ++i) model[i] = 1.0 + (1.0 - p) / (p * xs[i] * xs[i]);
    const LogLogFit expected = fit_loglog(xs, model);
    const LineCoefficients fit = lacunarity_fit(field, deltas);
    EXPECT_NEAR(fit.alpha, expected.alpha, 0.01);
    EXPECT_NEAR(fit.beta, expected.beta, 0.01);

    // The excess lacunarity decays as d^-2.
    const LacunarityCurve curve = lacunarity_curve(field, deltas);
    std::vector<double> excess(curve.lambdas.size());
    for (std::size_t i = 0; i < excess.size(); ++i) excess[i] = curve.lambdas[i] - 1.0;
    EXPECT_NEAR(fit_loglog(xs, excess).alpha, -2.0, 0.3);
}

TEST(Lacunarity, Errors) {
    const std::array<int, 1> two{2};
    EXPECT_EQ(error_of([&] { lacunarity_curve(BinaryImage(5, 5, 0), two); }), ErrorCode::EmptyImage);
    const std::array<int, 1> big{6};
    EXPECT_EQ(error_of([&] { lacunarity_curve(synth::filled(5, 5), big); }), ErrorCode::BadDelta);
}

// ---------------------------------------------------------------------------
// multifractal spectrum

TEST(Multifractal, FilledImageIsMonofractalOfDimensionTwo) {
    const auto qs = default_multifractal_qs();
    const auto sizes = default_multifractal_sizes();
    // 1500 is a multiple of every default size, so all cells are full.
    const MultifractalSpectrum spec = multifractal_spectrum(synth::filled(1500, 1500), qs, sizes);
    ASSERT_EQ(spec.fvals.size(), qs.size());
    for (double f : spec.fvals) EXPECT_NEAR(f, 2.0, 0.05);
}

TEST(Multifractal, ZeroMomentEqualsBoxDimension) {
    const std::array<double, 1> zero{0.0};
    std::vector<BinaryImage> images{synth::sierpinski_carpet(5), synth::horizontal_line(300, 260, 7),
                                    synth::filled(128, 128)};
    for (std::uint64_t s = 0; s < 6; ++s) images.push_back(synth::random_binary(250, 250, 31, s));
    const std::vector<int> sizes{2, 3, 5, 10, 25, 50, 100, 125, 250};
    for (const auto& img : images) {
        std::vector<int> usable;
        for (int L : sizes)
            if (L <= std::min(img.width(), img.height())) usable.push_back(L);
        const double f0 = multifractal_spectrum(img, zero, usable).fvals[0];
        EXPECT_NEAR(f0, box_dimension(img, usable).dim, 1e-9);
    }
}

TEST(Multifractal, CarpetSpectrumIsFlat) {
    const std::array<int, 4> sizes{3, 9, 27, 81};
    const auto qs = default_multifractal_qs();
    const MultifractalSpectrum spec = multifractal_spectrum(synth::sierpinski_carpet(5), qs, sizes);
    const double target = std::log(8.0) / std::log(3.0);
    for (double f : spec.fvals) EXPECT_NEAR(f, target, 0.02);
}

TEST(Multifractal, ExtremeExponentReportsOverflow) {
    const std::array<int, 2> sizes{3, 9};
    const std::array<double, 2> qs{1.0, 1e308};
    try {
        multifractal_spectrum(synth::sierpinski_carpet(3), qs, sizes);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NumericalOverflow);
        EXPECT_NE(std::string(e.what()).find("1e+308"), std::string::npos) << e.what();
    }
}

TEST(Multifractal, Errors) {
    const std::array<int, 2> sizes{2, 4};
    const std::array<double, 1> qs{1.0};
    EXPECT_EQ(error_of([&] { multifractal_spectrum(BinaryImage(8, 8, 0), qs, sizes); }), ErrorCode::EmptyImage);
    const std::array<int, 2> bad{1, 4};
    EXPECT_EQ(error_of([&] { multifractal_spectrum(synth::filled(8, 8), qs, bad); }), ErrorCode::BadDelta);
}

TEST(Estimators, Deterministic) {
    const BinaryImage img = synth::random_binary(97, 83, 3, 3);
    const auto qs = default_multifractal_qs();
    const std::array<int, 4> sizes{2, 3, 5, 10};
    const auto a = multifractal_spectrum(img, qs, sizes);
    const auto b = multifractal_spectrum(img, qs, sizes);
    EXPECT_EQ(a.fvals, b.fvals);
    EXPECT_EQ(minkowski_curve(img).volumes, minkowski_curve(img).volumes);
    EXPECT_EQ(lacunarity_curve(img, default_lacunarity_deltas()).lambdas,
              lacunarity_curve(img, default_lacunarity_deltas()).lambdas);
}

}  // namespace
}  // namespace fraclbp::fractal
