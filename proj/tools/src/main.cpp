#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>

#include "nanoeit/cli/commands.hpp"
#include "nanoeit/cli/config.hpp"

namespace {

using namespace nanoeit::cli;

struct Source {
    std::string config_path;
    std::string preset_name;
    std::vector<std::string> overrides;
};

void add_source(CLI::App& cmd, Source& src) {
    auto* file = cmd.add_option("-c,--config", src.config_path, "JSON config file, '-' for stdin");
    auto* pre = cmd.add_option("-p,--preset", src.preset_name, "embedded figure preset");
    file->excludes(pre);
    cmd.add_option("-s,--set", src.overrides, "override a field, e.g. scan.points=5001");
}

RunConfig resolve(const Source& src) {
    nlohmann::json doc;
    if (!src.preset_name.empty()) {
        doc = preset(src.preset_name);
    } else if (src.config_path == "-") {
        const std::string text{std::istreambuf_iterator<char>(std::cin), {}};
        try {
            doc = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw ConfigError(std::string("invalid JSON: ") + e.what());
        }
    } else {
        std::ifstream in(src.config_path, std::ios::binary);
        if (!in) throw ConfigError("cannot read config file " + src.config_path);
        const std::string text{std::istreambuf_iterator<char>(in), {}};
        try {
            doc = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw ConfigError(std::string("invalid JSON: ") + e.what());
        }
    }
    for (const auto& o : src.overrides) apply_override(doc, o);
    return config_from_json(doc);
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot open " + path + " for writing");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spin-ensemble / nano-mechanical resonator transparency spectra"};
    app.require_subcommand(1);

    Source src;
    std::string format = "csv";
    std::string output;
    std::string summary;
    std::string check = "all";

    auto* spectrum = app.add_subcommand("spectrum", "scan chi, n and v_g/c over the grid");
    add_source(*spectrum, src);
    spectrum->add_option("-f,--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    spectrum->add_option("-o,--output", output, "data file (default stdout)");
    spectrum->add_option("--summary", summary,
                         "CSV peak/window summary (default <output>.summary.csv)");

    auto* modes = app.add_subcommand("modes", "normal-mode frequencies and stability");
    add_source(*modes, src);

    auto* validate = app.add_subcommand("validate", "compare closed forms with the oracles");
    add_source(*validate, src);
    validate->add_option("--check", check, "timedomain, bosonization or all")
        ->check(CLI::IsMember({"timedomain", "bosonization", "all"}));

    auto* show = app.add_subcommand("config", "print the resolved canonical config");
    add_source(*show, src);

    app.add_subcommand("presets", "list embedded presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return static_cast<int>(ExitCode::usage);
    }

    CLI::App* cmd = app.get_subcommands().front();
    if (cmd->get_name() == "presets") {
        for (const auto& name : preset_names()) std::cout << name << '\n';
        return 0;
    }
    if (src.config_path.empty() == src.preset_name.empty()) {
        std::cerr << "error: exactly one of --config or --preset is required\n";
        return static_cast<int>(ExitCode::usage);
    }

    try {
        const RunConfig config = resolve(src);
        ExitCode code = ExitCode::ok;
        if (cmd == spectrum) {
            const OutputFormat fmt = format == "json" ? OutputFormat::json : OutputFormat::csv;
            std::optional<std::ofstream> data_file;
            std::optional<std::ofstream> summary_file;
            if (!output.empty()) data_file = open_output(output);
            if (fmt == OutputFormat::csv) {
                if (summary.empty() && !output.empty()) summary = output + ".summary.csv";
                if (!summary.empty()) summary_file = open_output(summary);
            }
            code = run_spectrum(config, fmt, data_file ? *data_file : std::cout,
                                summary_file ? &*summary_file : nullptr);
        } else if (cmd == modes) {
            code = run_modes(config, std::cout);
        } else if (cmd == validate) {
            const ValidationCheck which = check == "timedomain"     ? ValidationCheck::timedomain
                                          : check == "bosonization" ? ValidationCheck::bosonization
                                                                    : ValidationCheck::all;
            code = run_validate(config, which, std::cout);
        } else {
            std::cout << to_json(config).dump(1) << '\n';
        }
        std::cout.flush();
        return static_cast<int>(code);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return static_cast<int>(exit_code_for(e));
    }
}
