#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "nanoeit/error.hpp"
#include "nanoeit/modes.hpp"
#include "oracles.hpp"

namespace nanoeit {
namespace {

const MaterialParams kMat = default_material();

SystemParams fig4b() { return SystemParams::single(0.05, {1.0, 1e-7}, 0.05, 20, 1.0); }
SystemParams fig5b() {
    return SystemParams::dual(0.05, {1.0, 1e-7}, 0.03, {1.5, 1e-7}, 0.05, 20, 1.0);
}
SystemParams fig6() {
    return SystemParams::dual(0.05, {1.0, 1e-7}, 0.03, {1.0, 1e-7}, 0.05, 20, 1.0);
}
SystemParams undamped(const SystemParams& s) {
    std::vector<OscillatorParams> r(s.resonators().begin(), s.resonators().end());
    for (auto& o : r) o.gamma = 0.0;
    return SystemParams({1.0, 0.0}, r, {s.couplings().begin(), s.couplings().end()}, s.n_spins(),
                        s.drive_gp());
}

TEST(Polynomial, Fig5bCubicCoefficients) {
    const MonicPolynomial p = characteristic_polynomial(fig5b());
    ASSERT_EQ(p.size(), 4u);
    EXPECT_NEAR(p[0], -2.1345, 1e-12);
    EXPECT_NEAR(p[1], 5.407, 1e-12);
    EXPECT_NEAR(p[2], -4.25, 1e-12);
    EXPECT_EQ(p[3], 1.0);
}

TEST(Polynomial, RootsMatchBisectionOracle) {
    const MonicPolynomial p = characteristic_polynomial(fig5b());
    const auto oracle = testing::bisect_roots([&](double x) { return evaluate(p, x); }, 0.0, 4.0, 4000);
    ASSERT_EQ(oracle.size(), 3u);
    const ModeSet m = eigenfrequencies(fig5b());
    ASSERT_EQ(m.squared_frequencies.size(), 3u);
    for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(m.squared_frequencies[k], oracle[k], 1e-12);
}

TEST(Polynomial, RejectsNonMonic) {
    EXPECT_THROW(polynomial_roots({1.0, 2.0}), Error);
}

TEST(Determinant, DecoupledIsProductOfXi) {
    const SystemParams s = SystemParams::dual(0.05, {1.0, 0.01}, 0.0, {1.5, 0.02}, 0.0, 20, 1.0);
    for (double w : {0.3, 1.0, 1.7}) {
        const cplx expect = xi(s.spin(), w) * xi(s.resonators()[0], w) * xi(s.resonators()[1], w);
        EXPECT_LT(std::abs(characteristic_determinant(s, w) - expect), 1e-14 * std::abs(expect));
    }
}

TEST(Determinant, MatchesCofactorExpansion) {
    testing::SystemSampler sampler(23);
    for (int i = 0; i < 200; ++i) {
        const double w = sampler.uniform(0.0, 3.0);
        const SystemParams s = fig5b();
        // Cofactor expansion of the matrix with diagonal xi_j and off-diagonal
        // -w0 sqrt(N) G_j (row 0) and -w_j sqrt(N) G_j (column 0).
        const double rn = std::sqrt(20.0);
        const cplx m[3][3] = {{xi(s.spin(), w), -rn * 0.03, -rn * 0.05},
                              {-1.0 * rn * 0.03, xi(s.resonators()[0], w), 0.0},
                              {-1.5 * rn * 0.05, 0.0, xi(s.resonators()[1], w)}};
        const cplx expect = testing::det3(m);
        EXPECT_LT(std::abs(characteristic_determinant(s, w) - expect), 1e-12 * (1.0 + std::abs(expect)));
    }
}

TEST(Determinant, VanishesAtUndampedRoots) {
    const SystemParams s = undamped(fig5b());
    const ModeSet m = eigenfrequencies(s);
    for (double w : m.frequencies) EXPECT_LT(std::abs(characteristic_determinant(s, w)), 1e-12 * 4.25);
}

TEST(Determinant, EqualsPolynomialWhenUndamped) {
    const SystemParams s = undamped(fig5b());
    const MonicPolynomial p = characteristic_polynomial(s);
    for (int i = 0; i <= 100; ++i) {
        const double w = 0.03 * i;
        const cplx d = characteristic_determinant(s, w);
        EXPECT_NEAR(d.real(), evaluate(p, w * w), 1e-12 * (1.0 + std::abs(d)));
        EXPECT_EQ(d.imag(), 0.0);
        EXPECT_NEAR(testing::undamped_det(s, w * w), evaluate(p, w * w), 1e-12 * (1.0 + std::abs(d)));
    }
}

TEST(Eigenfrequencies, DecoupledGivesBareFrequencies) {
    const ModeSet one = eigenfrequencies(SystemParams::single(0.05, {1.3, 0.0}, 0.0, 20, 1.0));
    ASSERT_EQ(one.frequencies.size(), 2u);
    EXPECT_NEAR(one.frequencies[0], 1.0, 1e-12);
    EXPECT_NEAR(one.frequencies[1], 1.3, 1e-12);
    const ModeSet two =
        eigenfrequencies(SystemParams::dual(0.05, {1.7, 0.0}, 0.0, {0.6, 0.0}, 0.0, 20, 1.0));
    ASSERT_EQ(two.frequencies.size(), 3u);
    EXPECT_NEAR(two.frequencies[0], 0.6, 1e-12);
    EXPECT_NEAR(two.frequencies[1], 1.0, 1e-12);
    EXPECT_NEAR(two.frequencies[2], 1.7, 1e-12);
    EXPECT_TRUE(two.stable);
    EXPECT_FALSE(two.dark_mode.has_value());
}

TEST(Eigenfrequencies, SingleQuadraticRoots) {
    const ModeSet m = eigenfrequencies(fig4b());
    ASSERT_EQ(m.frequencies.size(), 2u);
    EXPECT_NEAR(m.frequencies[0], std::sqrt(1.0 - std::sqrt(0.05)), 1e-12);
    EXPECT_NEAR(m.frequencies[1], std::sqrt(1.0 + std::sqrt(0.05)), 1e-12);
}

TEST(Eigenfrequencies, Fig5b) {
    const ModeSet m = eigenfrequencies(fig5b());
    ASSERT_EQ(m.frequencies.size(), 3u);
    EXPECT_NEAR(m.frequencies[0], 0.915, 1e-3);
    EXPECT_NEAR(m.frequencies[1], 1.051, 1e-3);
    EXPECT_NEAR(m.frequencies[2], 1.519, 1e-3);
    double sum = 0.0;
    for (double w : m.frequencies) sum += w * w;
    EXPECT_NEAR(sum, 4.25, 1e-10);
    EXPECT_LT(std::abs(m.trace_residual), 1e-10);
    EXPECT_TRUE(m.stable);
}

TEST(Eigenfrequencies, DegenerateDarkMode) {
    const ModeSet m = eigenfrequencies(fig6());
    ASSERT_EQ(m.frequencies.size(), 2u);
    EXPECT_NEAR(m.frequencies[0], std::sqrt(1.0 - std::sqrt(0.068)), 1e-9);
    EXPECT_NEAR(m.frequencies[1], std::sqrt(1.0 + std::sqrt(0.068)), 1e-9);
    ASSERT_TRUE(m.dark_mode.has_value());
    EXPECT_NEAR(*m.dark_mode, 1.0, 1e-9);
}

TEST(Eigenfrequencies, UnstableIsReportedNotThrown) {
    const SystemParams s({1.0, 0.0}, {{1.0, 0.0}}, {0.5}, 20, 1.0, StabilityPolicy::allow_unstable);
    ModeSet m;
    ASSERT_NO_THROW(m = eigenfrequencies(s));
    EXPECT_FALSE(m.stable);
    EXPECT_LT(m.squared_frequencies.front(), 0.0);
}

TEST(Eigenfrequencies, StabilityFlagMatchesClosedForm) {
    testing::SystemSampler sampler(31);
    for (int i = 0; i < 200; ++i) {
        const double w1 = sampler.uniform(0.3, 2.0);
        const double w2 = sampler.uniform(0.3, 2.0);
        const double g1 = sampler.uniform(0.0, 0.4);
        const double g2 = sampler.uniform(0.0, 0.4);
        const int n = 10;
        const SystemParams s({1.0, 0.0}, {{w1, 0.0}, {w2, 0.0}}, {g1, g2}, n, 1.0,
                             StabilityPolicy::allow_unstable);
        const double load = n * (g1 * g1 / w1 + g2 * g2 / w2);
        if (std::abs(load - 1.0) < 1e-6) continue;
        EXPECT_EQ(eigenfrequencies(s).stable, load < 1.0);
        EXPECT_EQ(s.is_stable(), load < 1.0);
    }
}

TEST(Eigenfrequencies, SplittingGrowsWithCoupling) {
    double previous = 0.0;
    for (int i = 1; i <= 20; ++i) {
        const double g = 0.01 * i;
        const ModeSet m = eigenfrequencies(SystemParams::single(0.0, {1.0, 0.0}, g, 20, 1.0));
        const double split = m.squared_frequencies[1] - m.squared_frequencies[0];
        EXPECT_NEAR(split, 2.0 * std::sqrt(20.0) * g, 1e-10);
        EXPECT_GT(split, previous);
        previous = split;
    }
}

TEST(Peaks, DecoupledSinglePeak) {
    const SystemParams s = SystemParams::single(0.05, {1.0, 1e-7}, 0.0, 20, 1.0);
    const FrequencyGrid grid{0.5, 1.5, 2001};
    const auto peaks = find_peaks(scan_spectrum(s, kMat, grid));
    ASSERT_EQ(peaks.size(), 1u);
    EXPECT_NEAR(peaks[0].omega, 1.0, 1.0 / 2000);
    EXPECT_TRUE(find_windows(scan_spectrum(s, kMat, grid), peaks).empty());
}

TEST(Peaks, Fig4bTwoPeaksOneWindow) {
    const Spectrum sp = scan_spectrum(fig4b(), kMat, FrequencyGrid{});
    const auto peaks = find_peaks(sp);
    ASSERT_EQ(peaks.size(), 2u);
    EXPECT_NEAR(peaks[0].omega, 0.8811, 0.02);
    EXPECT_NEAR(peaks[1].omega, 1.1062, 0.02);
    const auto windows = find_windows(sp, peaks);
    ASSERT_EQ(windows.size(), 1u);
    EXPECT_TRUE(windows[0].normal_dispersion());
    EXPECT_GT(windows[0].omega, peaks[0].omega);
    EXPECT_LT(windows[0].omega, peaks[1].omega);
}

TEST(Peaks, Fig5bThreePeaksTwoWindows) {
    const Spectrum sp = scan_spectrum(fig5b(), kMat, FrequencyGrid{});
    const auto peaks = find_peaks(sp);
    const ModeSet modes = eigenfrequencies(fig5b());
    ASSERT_EQ(peaks.size(), 3u);
    for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(peaks[k].omega, modes.frequencies[k], 0.03);
    const auto windows = find_windows(sp, peaks);
    ASSERT_EQ(windows.size(), 2u);
    for (std::size_t k = 0; k < 2; ++k) {
        EXPECT_TRUE(windows[k].normal_dispersion());
        EXPECT_GT(windows[k].omega, peaks[k].omega);
        EXPECT_LT(windows[k].omega, peaks[k + 1].omega);
        EXPECT_DOUBLE_EQ(windows[k].left.omega, peaks[k].omega);
    }
    // Golden-section minimum sits at or below every sample in the interval.
    for (const auto& w : windows) {
        for (const auto& p : sp.points) {
            if (p.omega > w.left.omega && p.omega < w.right.omega) {
                EXPECT_LE(w.depth, p.chi.imag() * (1.0 + 1e-9));
            }
        }
    }
}

TEST(Peaks, SampleOnlySpectrumMatchesRefinedOne) {
    Spectrum sp = scan_spectrum(fig5b(), kMat, FrequencyGrid{});
    const auto peaks = find_peaks(sp);
    const auto refined = find_windows(sp, peaks);
    sp.source.reset();
    const auto sampled = find_windows(sp, peaks);
    ASSERT_EQ(sampled.size(), refined.size());
    for (std::size_t k = 0; k < sampled.size(); ++k) {
        EXPECT_NEAR(sampled[k].omega, refined[k].omega, 5e-4);
        EXPECT_GT(sampled[k].slope, 0.0);
    }
}

TEST(Peaks, PeaksNearEigenfrequenciesOnRandomSets) {
    testing::SystemSampler sampler(41);
    for (int i = 0; i < 30; ++i) {
        const double g = sampler.uniform(0.03, 0.08);
        const double gamma0 = sampler.uniform(1e-3, 1e-2);
        const SystemParams s = SystemParams::single(gamma0, {1.0, 1e-5}, g, 20, 1.0);
        const auto peaks = find_peaks(scan_spectrum(s, kMat, FrequencyGrid{0.5, 1.6, 4001}));
        const ModeSet m = eigenfrequencies(s);
        for (const auto& p : peaks) {
            double best = 1e9;
            for (double f : m.frequencies) best = std::min(best, std::abs(p.omega - f));
            EXPECT_LT(best, 3.0 * gamma0);
        }
    }
}

TEST(Peaks, PreconditionsAndEmptyWindows) {
    Spectrum tiny;
    tiny.points.resize(2);
    EXPECT_THROW(find_peaks(tiny), Error);
    const Spectrum sp = scan_spectrum(fig4b(), kMat, FrequencyGrid{0.5, 2.0, 11});
    EXPECT_TRUE(find_windows(sp, {}).empty());
    Spectrum unordered = sp;
    std::swap(unordered.points[1], unordered.points[2]);
    EXPECT_THROW(find_peaks(unordered), Error);
}

}  // namespace
}  // namespace nanoeit
