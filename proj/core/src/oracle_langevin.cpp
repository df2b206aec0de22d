#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "nanoeit/error.hpp"
#include "nanoeit/modes.hpp"
#include "nanoeit/oracle.hpp"

namespace nanoeit {

namespace {

constexpr double kDivergenceBound = 1e12;

double min_positive_damping(const SystemParams& system) {
    double g = std::numeric_limits<double>::infinity();
    if (system.spin().gamma > 0.0) g = system.spin().gamma;
    for (const auto& r : system.resonators()) {
        if (r.gamma > 0.0) g = std::min(g, r.gamma);
    }
    return g;
}

double highest_frequency(const SystemParams& system, double drive) {
    const ModeSet modes = eigenfrequencies(system);
    if (!modes.stable) fail(ErrorKind::Instability, "unstable system cannot reach a steady state");
    double w = std::max(drive, system.spin().omega);
    for (const auto& r : system.resonators()) w = std::max(w, r.omega);
    for (double x : modes.squared_frequencies) w = std::max(w, std::sqrt(std::max(x, 0.0)));
    return w;
}

// Phase-space right-hand side, laid out as (Z0, P0, Z1, P1[, Z2, P2]).
class LangevinRhs {
public:
    LangevinRhs(const SystemParams& system, double omega) : omega_(omega) {
        const double root_n = std::sqrt(static_cast<double>(system.n_spins()));
        osc_.push_back(system.spin());
        for (const auto& r : system.resonators()) osc_.push_back(r);
        for (double g : system.couplings()) coupling_.push_back(root_n * g);
        drive_ = 2.0 * root_n * system.drive_gp();
    }

    void operator()(double t, const double* s, double* ds) const {
        double z0_force = -osc_[0].omega * s[0] - drive_ * std::cos(omega_ * t);
        for (std::size_t j = 1; j < osc_.size(); ++j) {
            const double z = s[2 * j];
            const double p = s[2 * j + 1];
            z0_force -= coupling_[j - 1] * z;
            ds[2 * j] = osc_[j].omega * p;
            ds[2 * j + 1] = -osc_[j].gamma * p - osc_[j].omega * z - coupling_[j - 1] * s[0];
        }
        ds[0] = osc_[0].omega * s[1];
        ds[1] = -osc_[0].gamma * s[1] + z0_force;
    }

private:
    std::vector<OscillatorParams> osc_;
    std::vector<double> coupling_;
    double drive_ = 0.0;
    double omega_;
};

}  // namespace

Trajectory::Trajectory(double dt, double t0, std::size_t width, double relaxation_time)
    : dt_(dt), t0_(t0), width_(width), relaxation_time_(relaxation_time) {}

std::span<const double> Trajectory::state(std::size_t i) const {
    return {states_.data() + i * width_, width_};
}

void Trajectory::push(std::span<const double> state) {
    if (state.size() != width_) fail(ErrorKind::InvalidArgument, "state width mismatch");
    states_.insert(states_.end(), state.begin(), state.end());
}

Trajectory integrate_langevin(const SystemParams& system, const LangevinRun& run) {
    if (!(run.dt > 0.0) || !(run.t_end > 0.0) || !std::isfinite(run.omega) || run.omega < 0.0) {
        fail(ErrorKind::Precondition, "integration needs dt > 0, t_end > 0 and a finite drive");
    }
    const double w_max = highest_frequency(system, run.omega);
    if (run.dt > 2.0 * std::numbers::pi / (20.0 * w_max)) {
        fail(ErrorKind::Precondition, "time step too coarse for the fastest frequency");
    }
    const double gamma_min = min_positive_damping(system);
    const bool damped = std::isfinite(gamma_min);
    if (damped && run.t_end < 10.0 / gamma_min) {
        fail(ErrorKind::Precondition, "t_end shorter than 10 relaxation times");
    }

    const std::size_t width = 2 * (1 + system.resonator_count());
    std::vector<double> s(width, 0.0);
    if (!run.initial.empty()) {
        if (run.initial.size() != width) fail(ErrorKind::InvalidArgument, "initial state width");
        s = run.initial;
    }

    const auto steps = static_cast<std::size_t>(std::llround(run.t_end / run.dt));
    const auto first = static_cast<std::size_t>(
        std::max(0.0, std::ceil(run.record_from / run.dt - 1e-9)));
    Trajectory traj(run.dt, static_cast<double>(first) * run.dt, width,
                    damped ? 1.0 / gamma_min : 0.0);

    const LangevinRhs rhs(system, run.omega);
    std::vector<double> k1(width), k2(width), k3(width), k4(width), tmp(width);
    const double h = run.dt;
    for (std::size_t step = 0;; ++step) {
        if (step >= first) traj.push(s);
        if (step == steps) break;
        const double t = static_cast<double>(step) * h;
        rhs(t, s.data(), k1.data());
        for (std::size_t i = 0; i < width; ++i) tmp[i] = s[i] + 0.5 * h * k1[i];
        rhs(t + 0.5 * h, tmp.data(), k2.data());
        for (std::size_t i = 0; i < width; ++i) tmp[i] = s[i] + 0.5 * h * k2[i];
        rhs(t + 0.5 * h, tmp.data(), k3.data());
        for (std::size_t i = 0; i < width; ++i) tmp[i] = s[i] + h * k3[i];
        rhs(t + h, tmp.data(), k4.data());
        for (std::size_t i = 0; i < width; ++i) {
            s[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            if (!(std::abs(s[i]) <= kDivergenceBound)) {
                fail(ErrorKind::Instability, "trajectory diverged");
            }
        }
    }
    return traj;
}

double oscillator_energy(const SystemParams& system, std::span<const double> state) {
    const double root_n = std::sqrt(static_cast<double>(system.n_spins()));
    double e = 0.5 * system.spin().omega * (state[0] * state[0] + state[1] * state[1]);
    for (std::size_t j = 0; j < system.resonator_count(); ++j) {
        const double z = state[2 * j + 2];
        const double p = state[2 * j + 3];
        e += 0.5 * system.resonators()[j].omega * (z * z + p * p);
        e += root_n * system.couplings()[j] * state[0] * z;
    }
    return e;
}

double commensurate_step(double omega, double max_dt) {
    if (!(omega > 0.0) || !(max_dt > 0.0)) {
        fail(ErrorKind::Precondition, "commensurate step needs omega > 0 and max_dt > 0");
    }
    const double period = 2.0 * std::numbers::pi / omega;
    return period / std::ceil(period / max_dt);
}

std::complex<double> steady_state_amplitude(const Trajectory& trajectory, double omega,
                                            int min_periods) {
    if (!(omega > 0.0)) fail(ErrorKind::Precondition, "projection needs omega > 0");
    const double dt = trajectory.dt();
    const double period = 2.0 * std::numbers::pi / omega;
    const double per_period = period / dt;
    const double rounded = std::round(per_period);
    if (rounded < 2.0 || std::abs(per_period - rounded) > 1e-6 * per_period) {
        fail(ErrorKind::Precondition, "time step does not divide the drive period");
    }
    const auto m = static_cast<std::size_t>(rounded);

    const double settle = 8.0 * trajectory.relaxation_time();
    const double lead = std::max(0.0, std::ceil((settle - trajectory.start_time()) / dt - 1e-9));
    const auto first_usable = static_cast<std::size_t>(lead);
    if (trajectory.size() < first_usable + 1) {
        fail(ErrorKind::Precondition, "trajectory ends before the transient has decayed");
    }
    const std::size_t periods = (trajectory.size() - 1 - first_usable) / m;
    if (periods < static_cast<std::size_t>(std::max(min_periods, 1))) {
        fail(ErrorKind::Precondition, "projection window shorter than the required periods");
    }
    const std::size_t end = trajectory.size() - 1;
    const std::size_t begin = end - periods * m;

    std::complex<double> acc = 0.0;
    for (std::size_t i = begin; i <= end; ++i) {
        const double weight = (i == begin || i == end) ? 0.5 : 1.0;
        acc += weight * trajectory.spin_coordinate(i) * std::polar(1.0, omega * trajectory.time(i));
    }
    return acc / static_cast<double>(periods * m);
}

std::complex<double> time_domain_amplitude(const SystemParams& system, double omega,
                                           const TimeDomainOptions& options) {
    const double gamma_min = min_positive_damping(system);
    if (!std::isfinite(gamma_min)) {
        fail(ErrorKind::Precondition, "a steady state needs at least one positive damping rate");
    }
    if (options.steps_per_period < 2 || options.window_periods < 1) {
        fail(ErrorKind::InvalidArgument, "time-domain options out of range");
    }
    const double period = 2.0 * std::numbers::pi / omega;
    const double limit = 2.0 * std::numbers::pi / (20.0 * highest_frequency(system, omega));
    const double dt = commensurate_step(omega, std::min(period / options.steps_per_period, limit));
    const auto per_period = static_cast<std::size_t>(std::llround(period / dt));

    const double settle = std::max(options.settle_relaxation_times, 10.0) / gamma_min;
    const auto settle_steps = static_cast<std::size_t>(std::ceil(settle / dt));
    const std::size_t total = settle_steps + per_period * options.window_periods;

    LangevinRun run;
    run.omega = omega;
    run.dt = dt;
    run.t_end = static_cast<double>(total) * dt;
    run.record_from = static_cast<double>(settle_steps) * dt;
    return steady_state_amplitude(integrate_langevin(system, run), omega, 5);
}

}  // namespace nanoeit
