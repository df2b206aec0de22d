#pragma once

// Independent ground truth for the closed forms:
//  * time-domain integration of the classical amplitude equations
//      Z0'' = -g0 Z0' - w0² Z0 - w0 sqrt(N) Σ G_j Z_j - 2 w0 sqrt(N) Gp cos(W t)
//      Zj'' = -gj Zj' - wj² Zj - wj sqrt(N) G_j Z0
//    integrated in phase-space form (Z, P = Z'/w) with fixed-step RK4;
//  * dense diagonalization of the finite-N spin/boson Hamiltonian
//      H / (hbar w0) = Σ_j wj a_j† a_j + (w0/2) Σ_k s_k^z + Σ_j (G_j/2)(a_j + a_j†) Σ_k s_k^x.

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "nanoeit/model.hpp"

namespace nanoeit {

struct LangevinRun {
    double omega = 1.0;        // drive frequency
    double t_end = 0.0;
    double dt = 0.0;
    double record_from = 0.0;  // earlier samples are integrated but not stored
    std::vector<double> initial;  // (Z0, P0, Z1, P1[, Z2, P2]); empty means rest
};

/// Fixed-step record of the phase-space vector.
class Trajectory {
public:
    Trajectory(double dt, double t0, std::size_t width, double relaxation_time);

    double dt() const { return dt_; }
    double start_time() const { return t0_; }
    std::size_t width() const { return width_; }
    std::size_t size() const { return states_.size() / width_; }
    double time(std::size_t i) const { return t0_ + static_cast<double>(i) * dt_; }
    std::span<const double> state(std::size_t i) const;
    double spin_coordinate(std::size_t i) const { return states_[i * width_]; }

    /// 1 / (smallest positive damping rate); 0 when undamped.
    double relaxation_time() const { return relaxation_time_; }

    void push(std::span<const double> state);

private:
    double dt_;
    double t0_;
    std::size_t width_;
    double relaxation_time_;
    std::vector<double> states_;
};

/// Throws Precondition when dt exceeds 2π/(20 W_max) or t_end < 10/min(gamma),
/// Instability when any coordinate exceeds 1e12.
Trajectory integrate_langevin(const SystemParams& system, const LangevinRun& run);

/// Oscillator energy Σ wj (Pj² + Zj²)/2 + sqrt(N) Σ G_j Z0 Zj of one state.
double oscillator_energy(const SystemParams& system, std::span<const double> state);

/// Largest dt <= max_dt that puts a whole number of steps in one drive period.
double commensurate_step(double omega, double max_dt);

/// Coefficient of exp(-iWt) in Z0(t): (1/T) ∫ Z0(t) exp(iWt) dt over the last
/// whole number of drive periods, by the trapezoidal rule. The window must
/// start after 8 relaxation times and span at least `min_periods` periods.
std::complex<double> steady_state_amplitude(const Trajectory& trajectory, double omega,
                                            int min_periods = 5);

struct TimeDomainOptions {
    int steps_per_period = 400;
    double settle_relaxation_times = 12.0;
    int window_periods = 200;
};

/// Integrate from rest and project out the steady-state spin amplitude, with
/// the step and duration chosen from the drive frequency and damping rates.
std::complex<double> time_domain_amplitude(const SystemParams& system, double omega,
                                           const TimeDomainOptions& options = {});

enum class SpinBasis {
    full,       // 2^N tensor-product space
    symmetric,  // the N + 1 dimensional J = N/2 Dicke multiplet
};

struct ExactModel {
    int n_spins = 2;
    std::vector<double> resonator_omega;
    std::vector<double> couplings;
    int boson_cutoff = 7;  // highest Fock state kept per resonator
    SpinBasis basis = SpinBasis::full;

    static ExactModel from_system(const SystemParams& system, int boson_cutoff = 7,
                                  SpinBasis basis = SpinBasis::full);

    std::size_t dimension() const;
};

inline constexpr int kMaxExactSpins = 8;
inline constexpr std::size_t kMaxDenseDimension = 4096;

/// Ascending eigenvalues of the truncated Hamiltonian (units of hbar w0).
std::vector<double> exact_spectrum(const ExactModel& model);

/// Dense Hamiltonian; exposed for structural checks.
std::vector<double> exact_hamiltonian(const ExactModel& model);

/// Largest relative deviation between the exact excitation energies in the
/// given excitation manifold and the matching sums of bosonized normal-mode
/// frequencies. Level 1 compares single excitations with the normal modes;
/// level 2 compares two-quantum states with pairwise sums. Uses the symmetric
/// spin sector, where the bosonized description lives.
double bosonization_error(const ExactModel& model, int excitation_level = 1);

}  // namespace nanoeit
