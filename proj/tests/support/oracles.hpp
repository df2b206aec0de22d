#pragma once

// Test-side reference implementations. None of these call into the code
// under test except to read parameter values.

#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "nanoeit/model.hpp"

namespace nanoeit::testing {

using cplx = std::complex<double>;

/// x-component of a point dipole (moment m along x at `source`) at `at`.
double dipole_bx(double moment, const Vec3& source, const Vec3& at);

/// -dB_x/dz_tip at the ensemble (origin), by extrapolated central difference.
double gradient_by_difference(const TipGeometry& tip, double step);

/// m2·B1(r2): the library's dipole-dipole expression, built from the field of tip 1.
double pair_energy(const TipGeometry& first, const TipGeometry& second, double dz1, double dz2);

/// kappa straight from SI constants, without MaterialParams helpers.
double kappa_si(double g_factor, int n_spins, double volume_m3, double drive_rad_s);

/// 3x3 complex determinant by cofactor expansion along the first row.
cplx det3(const cplx m[3][3]);

/// Steady-state Z0 from the linear system M Z = b by Cramer's rule, where
/// M has diagonal xi_j, M[0][j] = -w0 sqrt(N) G_j, M[j][0] = -w_j sqrt(N) G_j.
cplx spin_amplitude_cramer(const SystemParams& system, double omega);

/// Undamped determinant from the same matrix at gamma = 0.
double undamped_det(const SystemParams& system, double x);

/// Roots of f on [lo, hi] by sign-change scan plus bisection to `tolerance`.
std::vector<double> bisect_roots(const std::function<double(double)>& f, double lo, double hi,
                                 int samples, double tolerance = 1e-14);

cplx central_difference(const std::function<cplx(double)>& f, double x, double h);

/// Reproducible random stable parameter sets with every damping > 0.
class SystemSampler {
public:
    explicit SystemSampler(std::uint64_t seed) : rng_(seed) {}

    SystemParams single();
    SystemParams dual(bool distinct = true);
    double uniform(double lo, double hi);

private:
    std::mt19937_64 rng_;
};

}  // namespace nanoeit::testing
