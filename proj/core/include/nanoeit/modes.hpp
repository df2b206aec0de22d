#pragma once

// Normal-mode analysis of the coupled-oscillator model and feature detection
// (absorption peaks, transparency windows) on sampled spectra.

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "nanoeit/model.hpp"
#include "nanoeit/response.hpp"

namespace nanoeit {

/// Coefficients in ascending powers; the leading coefficient is 1.
using MonicPolynomial = std::vector<double>;

/// Roots of a monic polynomial from the eigenvalues of its companion matrix,
/// each polished by a few Newton steps.
std::vector<std::complex<double>> polynomial_roots(const MonicPolynomial& poly);

double evaluate(const MonicPolynomial& poly, double x);

/// Undamped characteristic polynomial in x = Omega²:
///   single: (x - w0²)(x - w1²) - N w0 w1 G1²
///   dual:   (x - w0²)(x - w1²)(x - w2²) - N w0 [w1 G1² (x - w2²) + w2 G2² (x - w1²)]
MonicPolynomial characteristic_polynomial(const SystemParams& system);

/// Damped determinant D(Omega) with xi_j on the diagonal. For one resonator
/// this is xi0 xi1 - N w0 w1 G1².
cplx characteristic_determinant(const SystemParams& system, double omega);

struct ModeSet {
    std::vector<double> frequencies;          // ascending, bright modes
    std::vector<double> squared_frequencies;  // every root in x, ascending
    bool stable = true;
    std::optional<double> dark_mode;          // decoupled mode when omega_1 == omega_2
    double trace_residual = 0.0;              // Σ x_k - (w0² + Σ w_j²)
};

/// Roots within this distance in x are reported as one multiple root.
/// A double root from the companion matrix is only good to ~sqrt(eps).
inline constexpr double kRootMergeTolerance = 1e-7;

ModeSet eigenfrequencies(const SystemParams& system);

struct PeakInfo {
    double omega = 0.0;
    double height = 0.0;  // Im chi
};

struct WindowInfo {
    PeakInfo left;
    PeakInfo right;
    double omega = 0.0;  // location of the Im chi minimum
    double depth = 0.0;  // Im chi at the minimum
    double slope = 0.0;  // d Re chi / d Omega at the minimum

    bool normal_dispersion() const { return slope > 0.0; }
};

/// Interior local maxima of Im chi, refined by a parabola through the three
/// bracketing samples.
std::vector<PeakInfo> find_peaks(const Spectrum& spectrum);

/// One window per adjacent pair of peaks. When the spectrum carries its
/// source parameters the minimum is refined by golden-section search and the
/// slope is the analytic derivative; otherwise both come from the samples.
std::vector<WindowInfo> find_windows(const Spectrum& spectrum, std::span<const PeakInfo> peaks);

/// Tolerance of the golden-section refinement of window minima.
inline constexpr double kWindowTolerance = 1e-6;

}  // namespace nanoeit
