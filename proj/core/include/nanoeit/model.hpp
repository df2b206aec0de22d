#pragma once

// Parameter types for the spin-ensemble / nano-mechanical resonator system
// and the conversion from SI tip geometry to the dimensionless model.
//
// Everything downstream of this header works in units of the bare spin
// frequency omega_0 (omega_0 = 1). SI quantities only appear here.

#include <span>
#include <vector>

#include "nanoeit/constants.hpp"

namespace nanoeit {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm() const;
    friend bool operator==(const Vec3&, const Vec3&) = default;
};

/// Magnetized cantilever tip. The moment points along +x; `position` is the
/// equilibrium location of the tip relative to the ensemble centre and must
/// lie in the yz-plane.
struct TipGeometry {
    double moment = 0.0;     // A·m²
    Vec3 position;           // m
    double mass = 0.0;       // kg
    double mech_freq = 0.0;  // rad/s
};

struct StaticFieldParams {
    double b0 = 0.0;  // T, applied along -z
    double g_factor = kDefaultGFactor;
    PhysicalConstants constants;

    /// Zeeman coupling g0 = g_s mu_B B0 / 2 (J).
    double zeeman_coupling() const;
};

/// A and the field gradient G of the tip field at the ensemble, B_x(z) ≈ A - G z.
struct TipField {
    double offset = 0.0;    // T
    double gradient = 0.0;  // T/m
};

struct OscillatorParams {
    double omega = 1.0;  // units of omega_0
    double gamma = 0.0;  // units of omega_0

    friend bool operator==(const OscillatorParams&, const OscillatorParams&) = default;
};

enum class StabilityPolicy { reject_unstable, allow_unstable };

/// Dimensionless 2- or 3-oscillator model: the bosonized spin mode plus one or
/// two resonators coupled to it with strengths G_j (omega_0 units).
class SystemParams {
public:
    SystemParams(OscillatorParams spin, std::vector<OscillatorParams> resonators,
                 std::vector<double> couplings, int n_spins, double drive_gp,
                 StabilityPolicy policy = StabilityPolicy::reject_unstable);

    static SystemParams single(double spin_gamma, OscillatorParams resonator, double coupling,
                               int n_spins, double drive_gp);
    static SystemParams dual(double spin_gamma, OscillatorParams first, double first_coupling,
                             OscillatorParams second, double second_coupling, int n_spins,
                             double drive_gp);

    const OscillatorParams& spin() const { return spin_; }
    std::span<const OscillatorParams> resonators() const { return resonators_; }
    std::span<const double> couplings() const { return couplings_; }
    int n_spins() const { return n_spins_; }
    double drive_gp() const { return drive_gp_; }
    std::size_t resonator_count() const { return resonators_.size(); }
    bool is_dual() const { return resonators_.size() == 2; }

    /// True when the undamped characteristic polynomial has no negative root
    /// in Omega². Equivalent to N Σ_j G_j² / omega_j <= omega_0.
    bool is_stable() const;

    /// Copy with every damping rate raised to at least `floor`.
    SystemParams with_damping_floor(double floor) const;
    SystemParams with_n_spins(int n_spins) const;
    SystemParams with_couplings(std::vector<double> couplings) const;

    friend bool operator==(const SystemParams&, const SystemParams&) = default;

private:
    OscillatorParams spin_;
    std::vector<OscillatorParams> resonators_;
    std::vector<double> couplings_;
    int n_spins_ = 1;
    double drive_gp_ = 0.0;
    StabilityPolicy policy_ = StabilityPolicy::reject_unstable;
};

/// Physical scale needed only for the absolute size of the susceptibility.
struct MaterialParams {
    double volume = 0.0;  // m³
    double omega_scale = kDefaultOmegaScale;
    double g_factor = kDefaultGFactor;
    PhysicalConstants constants;

    friend bool operator==(const MaterialParams&, const MaterialParams&) = default;
};

/// Default ensemble: a sphere of radius 10 nm.
MaterialParams default_material();

/// Dimensionless couplings and frequencies derived from SI tip geometry.
struct DimensionlessCouplings {
    double omega_scale = 0.0;  // omega_0 in rad/s
    std::vector<double> resonator_omega;
    std::vector<double> couplings;

    /// Assemble a full SystemParams; dampings and drive are not geometric.
    SystemParams system(double spin_gamma, std::span<const double> resonator_gamma, int n_spins,
                        double drive_gp) const;
};

/// Offset field and gradient of a point-dipole tip at the ensemble centre.
/// Throws DegenerateGeometry when the tip sits on the ensemble.
TipField tip_field_params(const TipGeometry& tip, const StaticFieldParams& fields);

/// Tip-tip dipole energy (J) with each tip displaced along z by dz1, dz2.
double dipole_dipole_energy(const TipGeometry& first, const TipGeometry& second, double dz1,
                            double dz2, const PhysicalConstants& constants = {});

DimensionlessCouplings to_dimensionless(std::span<const TipGeometry> tips,
                                        const StaticFieldParams& fields);

/// kappa = mu0 (g_s mu_B)² N / (2 V hbar G_p), with G_p in rad/s. The
/// susceptibility is chi = -kappa Z0(Omega) / sqrt(N).
double susceptibility_prefactor(const MaterialParams& material, const SystemParams& system);

}  // namespace nanoeit
