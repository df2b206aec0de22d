#include "nanoeit/model.hpp"

#include <cmath>
#include <numbers>
#include <algorithm>

#include "nanoeit/error.hpp"

namespace nanoeit {

double Vec3::norm() const { return std::sqrt(x * x + y * y + z * z); }

double StaticFieldParams::zeeman_coupling() const {
    return g_factor * constants.bohr_magneton * b0 / 2.0;
}

namespace {

void check_oscillator(const OscillatorParams& osc, const char* what) {
    if (!(std::isfinite(osc.omega) && osc.omega > 0.0)) {
        fail(ErrorKind::InvalidArgument, std::string(what) + ": omega must be finite and > 0");
    }
    if (!(std::isfinite(osc.gamma) && osc.gamma >= 0.0)) {
        fail(ErrorKind::InvalidArgument, std::string(what) + ": gamma must be finite and >= 0");
    }
}

void check_tip(const TipGeometry& tip) {
    if (tip.position.x != 0.0) {
        fail(ErrorKind::InvalidArgument, "tip position must lie in the yz-plane");
    }
    if (!std::isfinite(tip.moment) || !std::isfinite(tip.position.norm())) {
        fail(ErrorKind::InvalidArgument, "tip geometry must be finite");
    }
    if (tip.position.norm() == 0.0) {
        fail(ErrorKind::DegenerateGeometry, "tip coincides with the spin ensemble");
    }
}

double mu0_over_4pi(const PhysicalConstants& c) {
    return c.vacuum_permeability / (4.0 * std::numbers::pi);
}

}  // namespace

SystemParams::SystemParams(OscillatorParams spin, std::vector<OscillatorParams> resonators,
                           std::vector<double> couplings, int n_spins, double drive_gp,
                           StabilityPolicy policy)
    : spin_(spin),
      resonators_(std::move(resonators)),
      couplings_(std::move(couplings)),
      n_spins_(n_spins),
      drive_gp_(drive_gp),
      policy_(policy) {
    check_oscillator(spin_, "spin mode");
    if (spin_.omega != 1.0) {
        fail(ErrorKind::InvalidArgument, "spin frequency is the unit of frequency and must be 1");
    }
    if (resonators_.empty() || resonators_.size() > 2) {
        fail(ErrorKind::InvalidArgument, "expected one or two resonators");
    }
    if (couplings_.size() != resonators_.size()) {
        fail(ErrorKind::InvalidArgument, "one coupling per resonator is required");
    }
    for (const auto& r : resonators_) check_oscillator(r, "resonator");
    for (double g : couplings_) {
        if (!std::isfinite(g)) fail(ErrorKind::InvalidArgument, "couplings must be finite");
    }
    if (n_spins_ < 1) fail(ErrorKind::InvalidArgument, "n_spins must be >= 1");
    if (!(std::isfinite(drive_gp_) && drive_gp_ >= 0.0)) {
        fail(ErrorKind::InvalidArgument, "drive_gp must be finite and >= 0");
    }
    if (policy_ == StabilityPolicy::reject_unstable && !is_stable()) {
        fail(ErrorKind::Instability,
             "unstable parameter set: undamped normal mode with negative Omega^2");
    }
}

SystemParams SystemParams::single(double spin_gamma, OscillatorParams resonator, double coupling,
                                  int n_spins, double drive_gp) {
    return SystemParams({1.0, spin_gamma}, {resonator}, {coupling}, n_spins, drive_gp);
}

SystemParams SystemParams::dual(double spin_gamma, OscillatorParams first, double first_coupling,
                                OscillatorParams second, double second_coupling, int n_spins,
                                double drive_gp) {
    return SystemParams({1.0, spin_gamma}, {first, second}, {first_coupling, second_coupling},
                        n_spins, drive_gp);
}

bool SystemParams::is_stable() const {
    // The lowest root of x - w0² - Σ c_j/(x - w_j²), c_j = N w0 w_j G_j², is
    // negative exactly when the secular function is positive at x = 0.
    double load = 0.0;
    for (std::size_t j = 0; j < resonators_.size(); ++j) {
        load += n_spins_ * couplings_[j] * couplings_[j] / resonators_[j].omega;
    }
    return load <= spin_.omega;
}

SystemParams SystemParams::with_damping_floor(double floor) const {
    OscillatorParams spin = spin_;
    spin.gamma = std::max(spin.gamma, floor);
    auto resonators = resonators_;
    for (auto& r : resonators) r.gamma = std::max(r.gamma, floor);
    return SystemParams(spin, std::move(resonators), couplings_, n_spins_, drive_gp_, policy_);
}

SystemParams SystemParams::with_n_spins(int n_spins) const {
    return SystemParams(spin_, resonators_, couplings_, n_spins, drive_gp_, policy_);
}

SystemParams SystemParams::with_couplings(std::vector<double> couplings) const {
    return SystemParams(spin_, resonators_, std::move(couplings), n_spins_, drive_gp_, policy_);
}

MaterialParams default_material() {
    MaterialParams m;
    m.volume = 4.0 * std::numbers::pi / 3.0 * 1.0e3 * 1.0e-27;
    return m;
}

SystemParams DimensionlessCouplings::system(double spin_gamma,
                                            std::span<const double> resonator_gamma, int n_spins,
                                            double drive_gp) const {
    if (resonator_gamma.size() != resonator_omega.size()) {
        fail(ErrorKind::InvalidArgument, "one damping rate per resonator is required");
    }
    std::vector<OscillatorParams> resonators;
    for (std::size_t j = 0; j < resonator_omega.size(); ++j) {
        resonators.push_back({resonator_omega[j], resonator_gamma[j]});
    }
    return SystemParams({1.0, spin_gamma}, std::move(resonators), couplings, n_spins, drive_gp);
}

TipField tip_field_params(const TipGeometry& tip, const StaticFieldParams& fields) {
    check_tip(tip);
    const double r = tip.position.norm();
    const double k = mu0_over_4pi(fields.constants) * tip.moment;
    // z-component of the tip-to-spin vector; the spins sit at the origin.
    const double rz = -tip.position.z;
    return {-k / (r * r * r), 3.0 * rz * k / std::pow(r, 5)};
}

double dipole_dipole_energy(const TipGeometry& first, const TipGeometry& second, double dz1,
                            double dz2, const PhysicalConstants& constants) {
    const Vec3 p1{first.position.x, first.position.y, first.position.z + dz1};
    const Vec3 p2{second.position.x, second.position.y, second.position.z + dz2};
    const Vec3 d{p2.x - p1.x, p2.y - p1.y, p2.z - p1.z};
    const double r = d.norm();
    if (!(r > 0.0)) fail(ErrorKind::DegenerateGeometry, "coincident tips");
    // Both moments lie along x, so m·e12 only involves the x-component of e12.
    const double ex = d.x / r;
    const double m1m2 = first.moment * second.moment;
    return mu0_over_4pi(constants) * (3.0 * m1m2 * ex * ex - m1m2) / (r * r * r);
}

DimensionlessCouplings to_dimensionless(std::span<const TipGeometry> tips,
                                        const StaticFieldParams& fields) {
    if (tips.empty() || tips.size() > 2) {
        fail(ErrorKind::InvalidArgument, "expected one or two tips");
    }
    if (!(fields.g_factor > 0.0)) fail(ErrorKind::InvalidArgument, "g_factor must be > 0");
    if (!(fields.b0 > 0.0)) {
        fail(ErrorKind::InvalidArgument, "B0 must be > 0: zero spin frequency leaves no unit");
    }
    const double hbar = fields.constants.hbar;
    DimensionlessCouplings out;
    out.omega_scale = 2.0 * fields.zeeman_coupling() / hbar;
    for (const auto& tip : tips) {
        if (!(tip.mass > 0.0) || !(tip.mech_freq > 0.0)) {
            fail(ErrorKind::InvalidArgument, "tip mass and mechanical frequency must be > 0");
        }
        const TipField field = tip_field_params(tip, fields);
        const double g = fields.g_factor * fields.constants.bohr_magneton * field.gradient / 2.0;
        const double coupling = g * std::sqrt(2.0 * hbar / (tip.mass * tip.mech_freq)) / hbar;
        out.resonator_omega.push_back(tip.mech_freq / out.omega_scale);
        out.couplings.push_back(coupling / out.omega_scale);
    }
    return out;
}

double susceptibility_prefactor(const MaterialParams& material, const SystemParams& system) {
    if (!(material.volume > 0.0) || !(material.omega_scale > 0.0)) {
        fail(ErrorKind::InvalidArgument, "volume and omega_scale must be > 0");
    }
    if (!(material.g_factor > 0.0)) fail(ErrorKind::InvalidArgument, "g_factor must be > 0");
    if (system.drive_gp() == 0.0) {
        fail(ErrorKind::Singularity, "susceptibility prefactor undefined for zero drive");
    }
    const auto& c = material.constants;
    const double moment = material.g_factor * c.bohr_magneton;
    const double drive = system.drive_gp() * material.omega_scale;
    return c.vacuum_permeability * moment * moment * system.n_spins() /
           (2.0 * material.volume * c.hbar * drive);
}

}  // namespace nanoeit
