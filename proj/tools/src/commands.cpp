#include "nanoeit/cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <system_error>

#include "nanoeit/error.hpp"
#include "nanoeit/modes.hpp"
#include "nanoeit/oracle.hpp"

namespace nanoeit::cli {

namespace {

using ojson = nlohmann::ordered_json;

constexpr const char* kCsvHeader = "omega,re_chi,im_chi,re_n,im_n,vg_over_c\n";
constexpr const char* kSummaryHeader =
    "kind,omega,im_chi,left_omega,right_omega,re_chi_slope,vg_over_c\n";

struct Features {
    std::vector<PeakInfo> peaks;
    std::vector<WindowInfo> windows;
};

Features features(const Spectrum& spectrum) {
    Features f;
    f.peaks = find_peaks(spectrum);
    f.windows = find_windows(spectrum, f.peaks);
    return f;
}

void write_csv(const Spectrum& spectrum, std::ostream& out) {
    out << kCsvHeader;
    for (const auto& p : spectrum.points) {
        out << format_double(p.omega) << ',' << format_double(p.chi.real()) << ','
            << format_double(p.chi.imag()) << ',' << format_double(p.n.real()) << ','
            << format_double(p.n.imag()) << ',' << format_double(p.vg_over_c) << '\n';
    }
}

void write_summary_csv(const Features& f, const Susceptibility& response, std::ostream& out) {
    out << kSummaryHeader;
    for (const auto& p : f.peaks) {
        out << "peak," << format_double(p.omega) << ',' << format_double(p.height) << ",,,,"
            << format_double(response.point(p.omega).vg_over_c) << '\n';
    }
    for (const auto& w : f.windows) {
        out << "window," << format_double(w.omega) << ',' << format_double(w.depth) << ','
            << format_double(w.left.omega) << ',' << format_double(w.right.omega) << ','
            << format_double(w.slope) << ',' << format_double(response.point(w.omega).vg_over_c)
            << '\n';
    }
}

ojson spectrum_json(const RunConfig& config, const Spectrum& spectrum, const Features& f,
                    const Susceptibility& response) {
    ojson doc;
    doc["digest"] = digest(config);
    doc["config"] = to_json(config);
    ojson points = ojson::array();
    for (const auto& p : spectrum.points) {
        points.push_back({{"omega", p.omega},
                          {"re_chi", p.chi.real()},
                          {"im_chi", p.chi.imag()},
                          {"re_n", p.n.real()},
                          {"im_n", p.n.imag()},
                          {"vg_over_c", p.vg_over_c}});
    }
    doc["points"] = std::move(points);
    ojson peaks = ojson::array();
    for (const auto& p : f.peaks) {
        peaks.push_back({{"omega", p.omega},
                         {"im_chi", p.height},
                         {"vg_over_c", response.point(p.omega).vg_over_c}});
    }
    doc["peaks"] = std::move(peaks);
    ojson windows = ojson::array();
    for (const auto& w : f.windows) {
        windows.push_back({{"omega", w.omega},
                           {"im_chi", w.depth},
                           {"left_omega", w.left.omega},
                           {"right_omega", w.right.omega},
                           {"re_chi_slope", w.slope},
                           {"vg_over_c", response.point(w.omega).vg_over_c}});
    }
    doc["windows"] = std::move(windows);
    return doc;
}

ojson check_entry(std::string name, double residual, double threshold) {
    ojson e;
    e["name"] = std::move(name);
    e["passed"] = residual <= threshold;
    e["residual"] = residual;
    e["threshold"] = threshold;
    return e;
}

double relative(cplx a, cplx reference) { return std::abs(a - reference) / std::abs(reference); }

void timedomain_checks(const RunConfig& config, const ValidationTolerances& tol, ojson& checks) {
    const SystemParams system = system_params(config).with_damping_floor(kValidationDampingFloor);
    const Spectrum spectrum = scan_spectrum(system, material_params(config), frequency_grid(config));
    const Features f = features(spectrum);
    std::vector<double> probes;
    for (const auto& p : f.peaks) probes.push_back(p.omega);
    for (const auto& w : f.windows) probes.push_back(w.omega);
    if (probes.empty()) probes.push_back(0.5 * (config.omega_min + config.omega_max));
    std::sort(probes.begin(), probes.end());

    TimeDomainOptions base;
    base.steps_per_period = tol.base_steps_per_period;
    TimeDomainOptions half = base;
    half.steps_per_period = 2 * base.steps_per_period;
    for (double omega : probes) {
        const cplx closed = lineshape(system, omega);
        const cplx coarse = time_domain_amplitude(system, omega, base);
        const cplx fine = time_domain_amplitude(system, omega, half);
        ojson a = check_entry("timedomain.closed_form", relative(coarse, closed), tol.closed_form);
        a["omega"] = omega;
        checks.push_back(std::move(a));
        ojson b = check_entry("timedomain.step_halving", relative(coarse, fine), tol.step_halving);
        b["omega"] = omega;
        checks.push_back(std::move(b));
    }
}

// Lowest one- and two-quantum gaps of the symmetric-sector Hamiltonian.
std::vector<double> low_gaps(ExactModel model, int cutoff) {
    model.boson_cutoff = cutoff;
    model.basis = SpinBasis::symmetric;
    const std::vector<double> e = exact_spectrum(model);
    const std::size_t m = model.resonator_omega.size() + 1;
    const std::size_t count = std::min(e.size() - 1, m + m * (m + 1) / 2);
    std::vector<double> gaps;
    for (std::size_t k = 1; k <= count; ++k) gaps.push_back(e[k] - e[0]);
    return gaps;
}

void bosonization_checks(const RunConfig& config, const ValidationTolerances& tol, ojson& checks) {
    const SystemParams system = system_params(config);
    const double n_ref = config.n_spins;
    std::vector<double> errors;
    ExactModel largest;
    for (int n = tol.min_spins; n <= tol.max_spins; ++n) {
        std::vector<double> g;
        for (double x : system.couplings()) g.push_back(x * std::sqrt(n_ref / n));
        ExactModel model = ExactModel::from_system(system.with_couplings(g).with_n_spins(n),
                                                   tol.boson_cutoff, SpinBasis::symmetric);
        errors.push_back(bosonization_error(model, 1));
        ojson e;
        e["name"] = "bosonization.error";
        e["n_spins"] = n;
        e["residual"] = errors.back();
        checks.push_back(std::move(e));
        largest = model;
    }

    double worst_rise = 0.0;
    for (std::size_t i = 1; i < errors.size(); ++i) {
        worst_rise = std::max(worst_rise, errors[i] - errors[i - 1]);
    }
    ojson mono = check_entry("bosonization.monotone", worst_rise, 0.0);
    checks.push_back(std::move(mono));

    const auto a = low_gaps(largest, tol.boson_cutoff);
    const auto b = low_gaps(largest, tol.boson_cutoff + 1);
    double diff = 0.0;
    for (std::size_t k = 0; k < std::min(a.size(), b.size()); ++k) {
        diff = std::max(diff, std::abs(a[k] - b[k]));
    }
    ojson conv = check_entry("bosonization.cutoff_convergence", diff, tol.cutoff);
    conv["n_spins"] = largest.n_spins;
    checks.push_back(std::move(conv));
}

}  // namespace

std::string format_double(double value) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc{}) fail(ErrorKind::InvalidArgument, "unformattable value");
    return {buf, ptr};
}

ExitCode run_spectrum(const RunConfig& config, OutputFormat format, std::ostream& out,
                      std::ostream* summary) {
    const Susceptibility response(system_params(config), material_params(config));
    const Spectrum spectrum =
        scan_spectrum(response.system(), response.material(), frequency_grid(config));
    const Features f = features(spectrum);
    if (format == OutputFormat::json) {
        out << spectrum_json(config, spectrum, f, response).dump(1) << '\n';
    } else {
        write_csv(spectrum, out);
        if (summary) write_summary_csv(f, response, *summary);
    }
    return ExitCode::ok;
}

ExitCode run_modes(const RunConfig& config, std::ostream& out) {
    const SystemParams system = system_params(config, StabilityPolicy::allow_unstable);
    const ModeSet modes = eigenfrequencies(system);
    ojson doc;
    doc["digest"] = digest(config);
    doc["mode"] = config.mode;
    doc["stable"] = modes.stable;
    doc["frequencies"] = modes.frequencies;
    doc["squared_frequencies"] = modes.squared_frequencies;
    doc["dark_mode"] = modes.dark_mode ? ojson(*modes.dark_mode) : ojson(nullptr);
    if (modes.dark_mode) {
        doc["dark_mode_note"] =
            "degenerate resonators: the antisymmetric resonator combination decouples from the "
            "spin mode and is absent from the probe response";
    } else {
        doc["dark_mode_note"] = "no dark mode";
    }
    doc["trace_residual"] = modes.trace_residual;
    out << doc.dump(1) << '\n';
    return ExitCode::ok;
}

ExitCode run_validate(const RunConfig& config, ValidationCheck check, std::ostream& out,
                      const ValidationTolerances& tolerances) {
    ojson checks = ojson::array();
    if (check != ValidationCheck::bosonization) timedomain_checks(config, tolerances, checks);
    if (check != ValidationCheck::timedomain) bosonization_checks(config, tolerances, checks);

    bool passed = true;
    for (const auto& c : checks) {
        if (c.contains("passed") && !c["passed"].get<bool>()) passed = false;
    }
    ojson doc;
    doc["digest"] = digest(config);
    doc["check"] = check == ValidationCheck::timedomain     ? "timedomain"
                   : check == ValidationCheck::bosonization ? "bosonization"
                                                            : "all";
    doc["checks"] = std::move(checks);
    doc["passed"] = passed;
    out << doc.dump(1) << '\n';
    return passed ? ExitCode::ok : ExitCode::validation_failed;
}

ExitCode exit_code_for(const std::exception& error) {
    if (dynamic_cast<const ConfigError*>(&error)) return ExitCode::config;
    if (dynamic_cast<const nlohmann::json::exception*>(&error)) return ExitCode::config;
    if (const auto* e = dynamic_cast<const Error*>(&error)) {
        return e->kind() == ErrorKind::InvalidArgument ? ExitCode::config : ExitCode::numeric;
    }
    return ExitCode::numeric;
}

}  // namespace nanoeit::cli
