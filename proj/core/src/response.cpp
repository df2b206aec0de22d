#include "nanoeit/response.hpp"

#include <cmath>

#include "nanoeit/error.hpp"

namespace nanoeit {

namespace {

// Value and first derivative in Omega, carried through the rational forms so
// the derivative is exact rather than differenced.
struct Jet {
    cplx v;
    cplx d;
};

Jet operator*(Jet a, Jet b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
Jet operator-(Jet a, Jet b) { return {a.v - b.v, a.d - b.d}; }
Jet operator+(Jet a, Jet b) { return {a.v + b.v, a.d + b.d}; }
Jet operator*(double s, Jet a) { return {s * a.v, s * a.d}; }

Jet ratio(Jet num, Jet den) {
    if (den.v == cplx{}) fail(ErrorKind::Singularity, "response denominator vanishes");
    const cplx q = num.v / den.v;
    return {q, (num.d - q * den.d) / den.v};
}

Jet xi_jet(const OscillatorParams& osc, double omega) {
    return {cplx{omega * omega - osc.omega * osc.omega, omega * osc.gamma},
            cplx{2.0 * omega, osc.gamma}};
}

void require_finite(double omega) {
    if (!std::isfinite(omega)) fail(ErrorKind::Precondition, "frequency must be finite");
}

// N w0 w_j G_j²
double coupling_weight(const SystemParams& s, std::size_t j) {
    const double g = s.couplings()[j];
    return s.n_spins() * s.spin().omega * s.resonators()[j].omega * g * g;
}

double drive_amplitude(const SystemParams& s) {
    return s.spin().omega * std::sqrt(static_cast<double>(s.n_spins())) * s.drive_gp();
}

Jet single_jet(const SystemParams& s, double omega) {
    if (s.resonator_count() != 1) {
        fail(ErrorKind::Precondition, "single-resonator lineshape needs exactly one resonator");
    }
    require_finite(omega);
    const Jet x0 = xi_jet(s.spin(), omega);
    const Jet x1 = xi_jet(s.resonators()[0], omega);
    const Jet den = x0 * x1 - Jet{coupling_weight(s, 0), 0.0};
    return drive_amplitude(s) * ratio(x1, den);
}

Jet double_jet(const SystemParams& s, double omega) {
    if (s.resonator_count() != 2) {
        fail(ErrorKind::Precondition, "double-resonator lineshape needs exactly two resonators");
    }
    require_finite(omega);
    const Jet x0 = xi_jet(s.spin(), omega);
    const Jet x1 = xi_jet(s.resonators()[0], omega);
    const Jet x2 = xi_jet(s.resonators()[1], omega);
    const Jet num = x1 * x2;
    const Jet den = x0 * num - (coupling_weight(s, 0) * x2 + coupling_weight(s, 1) * x1);
    return drive_amplitude(s) * ratio(num, den);
}

Jet degenerate_jet(const SystemParams& s, double omega, double tolerance) {
    if (s.resonator_count() != 2) {
        fail(ErrorKind::Precondition, "degenerate lineshape needs exactly two resonators");
    }
    const auto& r = s.resonators();
    if (std::abs(r[0].omega - r[1].omega) >= tolerance ||
        std::abs(r[0].gamma - r[1].gamma) >= tolerance) {
        fail(ErrorKind::Precondition, "degenerate lineshape needs identical resonators");
    }
    require_finite(omega);
    const Jet x0 = xi_jet(s.spin(), omega);
    const Jet x = xi_jet(r[0], omega);
    const Jet den = x0 * x - Jet{coupling_weight(s, 0) + coupling_weight(s, 1), 0.0};
    return drive_amplitude(s) * ratio(x, den);
}

Jet lineshape_jet(const SystemParams& s, double omega) {
    return s.is_dual() ? double_jet(s, omega) : single_jet(s, omega);
}

}  // namespace

cplx xi(const OscillatorParams& osc, double omega) { return xi_jet(osc, omega).v; }

cplx lineshape_single(const SystemParams& system, double omega) {
    return single_jet(system, omega).v;
}

cplx lineshape_double(const SystemParams& system, double omega) {
    return double_jet(system, omega).v;
}

cplx lineshape_double_degenerate(const SystemParams& system, double omega, double tolerance) {
    return degenerate_jet(system, omega, tolerance).v;
}

cplx lineshape(const SystemParams& system, double omega) {
    return lineshape_jet(system, omega).v;
}

cplx lineshape_derivative(const SystemParams& system, double omega) {
    return lineshape_jet(system, omega).d;
}

cplx chi(const SystemParams& system, const MaterialParams& material, double omega) {
    return Susceptibility(system, material)(omega);
}

cplx dchi_domega(const SystemParams& system, const MaterialParams& material, double omega) {
    return Susceptibility(system, material).derivative(omega);
}

cplx refractive_index(cplx chi_value) {
    if (!std::isfinite(chi_value.real()) || !std::isfinite(chi_value.imag())) {
        fail(ErrorKind::Precondition, "susceptibility must be finite");
    }
    const cplx radicand = 1.0 + chi_value;
    if (radicand == cplx{}) fail(ErrorKind::Singularity, "refractive index at branch point");
    if (radicand.imag() == 0.0 && radicand.real() < 0.0) {
        return {0.0, std::sqrt(-radicand.real())};
    }
    return std::sqrt(radicand);
}

double group_velocity_ratio(cplx chi_value, cplx dchi_value, double omega) {
    const cplx n = refractive_index(chi_value);
    const cplx group_index = n + omega * dchi_value / (2.0 * n);
    if (group_index == cplx{}) fail(ErrorKind::Singularity, "divergent group index");
    return (1.0 / group_index).real();
}

double group_velocity(const SystemParams& system, const MaterialParams& material, double omega) {
    if (!(omega > 0.0)) fail(ErrorKind::Precondition, "group velocity needs Omega > 0");
    const Susceptibility s(system, material);
    return group_velocity_ratio(s(omega), s.derivative(omega), omega);
}

Susceptibility::Susceptibility(SystemParams system, MaterialParams material)
    : system_(std::move(system)),
      material_(std::move(material)),
      kappa_(susceptibility_prefactor(material_, system_)) {}

cplx Susceptibility::operator()(double omega) const {
    return -kappa_ / std::sqrt(static_cast<double>(system_.n_spins())) * lineshape(system_, omega);
}

cplx Susceptibility::derivative(double omega) const {
    return -kappa_ / std::sqrt(static_cast<double>(system_.n_spins())) *
           lineshape_derivative(system_, omega);
}

SpectrumPoint Susceptibility::point(double omega) const {
    const Jet z = lineshape_jet(system_, omega);
    const double scale = -kappa_ / std::sqrt(static_cast<double>(system_.n_spins()));
    SpectrumPoint p;
    p.omega = omega;
    p.chi = scale * z.v;
    p.n = refractive_index(p.chi);
    p.vg_over_c = group_velocity_ratio(p.chi, scale * z.d, omega);
    return p;
}

std::vector<double> FrequencyGrid::values() const {
    if (!(std::isfinite(omega_min) && std::isfinite(omega_max) && omega_min < omega_max)) {
        fail(ErrorKind::InvalidArgument, "frequency grid needs omega_min < omega_max");
    }
    if (points < 3) fail(ErrorKind::InvalidArgument, "frequency grid needs at least 3 points");
    std::vector<double> out(static_cast<std::size_t>(points));
    const double step = (omega_max - omega_min) / (points - 1);
    for (int i = 0; i < points; ++i) out[i] = omega_min + i * step;
    out.back() = omega_max;
    return out;
}

Spectrum scan_spectrum(const SystemParams& system, const MaterialParams& material,
                       const FrequencyGrid& grid) {
    const auto omegas = grid.values();
    return scan_spectrum(system, material, omegas);
}

Spectrum scan_spectrum(const SystemParams& system, const MaterialParams& material,
                       std::span<const double> omegas) {
    const Susceptibility response(system, material);
    Spectrum out;
    out.points.reserve(omegas.size());
    double previous = 0.0;
    for (double omega : omegas) {
        if (!(omega > previous)) {
            fail(ErrorKind::Precondition, "scan frequencies must be positive and increasing");
        }
        out.points.push_back(response.point(omega));
        previous = omega;
    }
    out.source = SpectrumSource{system, material};
    return out;
}

}  // namespace nanoeit
