// Randomized invariants over stable parameter sets with every damping > 0.

#include <gtest/gtest.h>

#include <cmath>

#include "nanoeit/modes.hpp"
#include "nanoeit/response.hpp"
#include "oracles.hpp"

namespace nanoeit {
namespace {

constexpr int kSets = 120;
const MaterialParams kMat = default_material();

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

std::vector<SystemParams> random_sets(std::uint64_t seed) {
    testing::SystemSampler sampler(seed);
    std::vector<SystemParams> out;
    for (int i = 0; i < kSets; ++i) out.push_back(i % 2 ? sampler.dual() : sampler.single());
    return out;
}

TEST(Properties, ConjugateSymmetry) {
    testing::SystemSampler freq(101);
    for (const auto& s : random_sets(1)) {
        const Susceptibility chi_of(s, kMat);
        for (int i = 0; i < 20; ++i) {
            const double w = freq.uniform(0.01, 3.0);
            const cplx a = chi_of(w);
            EXPECT_LT(std::abs(chi_of(-w) - std::conj(a)), 1e-12 * std::abs(a));
        }
    }
}

TEST(Properties, Passivity) {
    for (const auto& s : random_sets(2)) {
        const Spectrum sp = scan_spectrum(s, kMat, FrequencyGrid{1e-3, 3.0, 2001});
        for (const auto& p : sp.points) ASSERT_GT(p.chi.imag(), 0.0) << p.omega;
    }
}

TEST(Properties, CouplingSignInvariance) {
    testing::SystemSampler freq(102);
    for (const auto& s : random_sets(3)) {
        std::vector<double> flipped(s.couplings().begin(), s.couplings().end());
        flipped[0] = -flipped[0];
        const SystemParams t = s.with_couplings(flipped);
        for (int i = 0; i < 20; ++i) {
            const double w = freq.uniform(0.01, 3.0);
            EXPECT_EQ(chi(s, kMat, w), chi(t, kMat, w));
        }
        EXPECT_EQ(eigenfrequencies(s).squared_frequencies, eigenfrequencies(t).squared_frequencies);
    }
}

TEST(Properties, ClosedFormMatchesLinearSolve) {
    testing::SystemSampler freq(103);
    for (const auto& s : random_sets(4)) {
        for (int i = 0; i < 20; ++i) {
            const double w = freq.uniform(0.01, 3.0);
            EXPECT_LT(rel(lineshape(s, w), testing::spin_amplitude_cramer(s, w)), 1e-10);
        }
    }
}

TEST(Properties, Interlacing) {
    testing::SystemSampler sampler(5);
    for (int i = 0; i < kSets; ++i) {
        const SystemParams s = sampler.dual();
        const ModeSet m = eigenfrequencies(s);
        ASSERT_EQ(m.squared_frequencies.size(), 3u);
        const double a = std::pow(s.resonators()[0].omega, 2);
        const double b = std::pow(s.resonators()[1].omega, 2);
        const auto& x = m.squared_frequencies;
        EXPECT_LT(x[0], std::min(a, b));
        EXPECT_LE(std::min(a, b), x[1]);
        EXPECT_LE(x[1], std::max(a, b));
        EXPECT_LT(std::max(a, b), x[2]);
        EXPECT_GE(x[0], 0.0);
    }
}

TEST(Properties, TraceIdentity) {
    for (const auto& s : random_sets(6)) {
        const ModeSet m = eigenfrequencies(s);
        double bare = 1.0;
        for (const auto& r : s.resonators()) bare += r.omega * r.omega;
        EXPECT_LT(std::abs(m.trace_residual), 1e-10 * bare);
    }
}

TEST(Properties, ReductionChain) {
    testing::SystemSampler sampler(7);
    for (int i = 0; i < kSets; ++i) {
        const SystemParams single = sampler.single();
        const OscillatorParams extra{sampler.uniform(0.5, 2.0), sampler.uniform(1e-4, 0.1)};
        const SystemParams padded = SystemParams::dual(single.spin().gamma, single.resonators()[0],
                                                       single.couplings()[0], extra, 0.0,
                                                       single.n_spins(), single.drive_gp());
        const SystemParams degenerate = sampler.dual(false);
        for (int k = 0; k < 10; ++k) {
            const double w = sampler.uniform(0.01, 3.0);
            EXPECT_LT(rel(lineshape_double(padded, w), lineshape_single(single, w)), 1e-9);
            EXPECT_LT(rel(lineshape_double_degenerate(degenerate, w), lineshape_double(degenerate, w)),
                      1e-9);
        }
    }
}

TEST(Properties, DerivativeMatchesFiniteDifference) {
    testing::SystemSampler freq(104);
    for (const auto& s : random_sets(8)) {
        const Susceptibility c(s, kMat);
        const double w = freq.uniform(0.3, 2.5);
        const cplx fd = testing::central_difference([&](double x) { return c(x); }, w, 1e-6);
        EXPECT_LT(rel(c.derivative(w), fd), 1e-5);
    }
}

}  // namespace
}  // namespace nanoeit
