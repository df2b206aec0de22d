#pragma once

// Subcommand bodies, kept separate from argument parsing so tests can drive
// them with in-memory streams. Each returns the process exit code and throws
// only for errors that map through exit_code_for().

#include <exception>
#include <ostream>
#include <string>

#include "nanoeit/cli/config.hpp"

namespace nanoeit::cli {

enum class OutputFormat { csv, json };
enum class ValidationCheck { timedomain, bosonization, all };

/// Shortest decimal that round-trips to the same double.
std::string format_double(double value);

/// Grid rows to `out`. CSV puts the peak/window summary on `summary` when
/// given; JSON embeds it.
ExitCode run_spectrum(const RunConfig& config, OutputFormat format, std::ostream& out,
                      std::ostream* summary = nullptr);

/// Normal modes as JSON. An unstable parameter set is reported, not rejected.
ExitCode run_modes(const RunConfig& config, std::ostream& out);

/// Damping floor applied before the time-domain comparison.
inline constexpr double kValidationDampingFloor = 1e-4;

struct ValidationTolerances {
    double closed_form = 1e-3;    // time domain vs closed form, relative
    double step_halving = 1e-4;   // base vs half step, relative
    double cutoff = 1e-6;         // exact gaps, cutoff c vs c + 1
    int base_steps_per_period = 400;
    int boson_cutoff = 7;
    int min_spins = 2;
    int max_spins = 6;
};

/// JSON report with one entry per checked invariant; exit 0 iff all pass.
ExitCode run_validate(const RunConfig& config, ValidationCheck check, std::ostream& out,
                      const ValidationTolerances& tolerances = {});

/// Exit code for an exception escaping a command.
ExitCode exit_code_for(const std::exception& error);

}  // namespace nanoeit::cli
