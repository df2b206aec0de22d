#pragma once

// Closed-form steady-state response of the driven spin mode.
//
// With xi_j(W) = i W gamma_j - omega_j² + W², the spin amplitude is
//   single: Z0 = w0 sqrt(N) Gp xi1 / (xi0 xi1 - N w0 w1 G1²)
//   dual:   Z0 = w0 sqrt(N) Gp xi1 xi2 / D,
//           D  = xi0 xi1 xi2 - N w0 (w1 G1² xi2 + w2 G2² xi1)
// and the susceptibility is chi = -kappa Z0 / sqrt(N) (see model.hpp).

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "nanoeit/model.hpp"

namespace nanoeit {

using cplx = std::complex<double>;

inline constexpr double kDegeneracyTolerance = 1e-9;

cplx xi(const OscillatorParams& osc, double omega);

cplx lineshape_single(const SystemParams& system, double omega);
cplx lineshape_double(const SystemParams& system, double omega);

/// Reduced form for omega_1 = omega_2 (and gamma_1 = gamma_2) where the two
/// resonators act through a single effective coupling N w0 (w1 G1² + w2 G2²).
cplx lineshape_double_degenerate(const SystemParams& system, double omega,
                                 double tolerance = kDegeneracyTolerance);

/// Dispatches on the resonator count.
cplx lineshape(const SystemParams& system, double omega);

/// d(lineshape)/d(Omega), exact.
cplx lineshape_derivative(const SystemParams& system, double omega);

cplx chi(const SystemParams& system, const MaterialParams& material, double omega);
cplx dchi_domega(const SystemParams& system, const MaterialParams& material, double omega);

/// Principal branch of sqrt(1 + chi); a negative real radicand maps to +i.
cplx refractive_index(cplx chi_value);

/// v_g / c = Re[1 / (n + Omega dn/dOmega)] from chi and its derivative.
double group_velocity_ratio(cplx chi_value, cplx dchi_value, double omega);

double group_velocity(const SystemParams& system, const MaterialParams& material, double omega);

struct SpectrumPoint {
    double omega = 0.0;
    cplx chi;
    cplx n;
    double vg_over_c = 0.0;
};

/// The parameters a spectrum was computed from, kept so consumers can
/// re-evaluate the response between grid points.
struct SpectrumSource {
    SystemParams system;
    MaterialParams material;
};

struct Spectrum {
    std::vector<SpectrumPoint> points;
    std::optional<SpectrumSource> source;
};

/// Susceptibility bound to one parameter set with the prefactor cached.
class Susceptibility {
public:
    Susceptibility(SystemParams system, MaterialParams material);

    cplx operator()(double omega) const;
    cplx derivative(double omega) const;
    SpectrumPoint point(double omega) const;

    const SystemParams& system() const { return system_; }
    const MaterialParams& material() const { return material_; }
    double prefactor() const { return kappa_; }

private:
    SystemParams system_;
    MaterialParams material_;
    double kappa_;
};

struct FrequencyGrid {
    double omega_min = 0.5;
    double omega_max = 2.0;
    int points = 3001;

    std::vector<double> values() const;
};

Spectrum scan_spectrum(const SystemParams& system, const MaterialParams& material,
                       const FrequencyGrid& grid);
Spectrum scan_spectrum(const SystemParams& system, const MaterialParams& material,
                       std::span<const double> omegas);

}  // namespace nanoeit
