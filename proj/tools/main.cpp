#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "yamabe/analysis.hpp"
#include "yamabe/errors.hpp"
#include "yamabe/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitIncomplete = 2;
constexpr int kExitInternal = 3;

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw yamabe::ConfigError("cannot open output file: " + out_path);
    out << text;
}

yamabe::cli::AnalysisConfig load_config(const std::string& path, int threads_override) {
    auto config = yamabe::cli::load_config_file(path);
    if (threads_override >= 0) config.threads = threads_override;
    return config;
}

int run(int argc, char** argv) {
    CLI::App app{"exact degeneracy-instant analysis for product Yamabe operator families"};
    app.set_version_flag("--version", std::string("yamabe ") + yamabe::kVersion);
    app.require_subcommand(1);

    std::string config_path, out_path, format = "csv";
    std::string catalog;
    std::vector<long long> catalog_args;
    int threads = -1;

    auto* analyze = app.add_subcommand("analyze", "full analysis for a config file");
    analyze->add_option("config", config_path, "JSON config file")->required();
    analyze->add_option("--out", out_path, "write the report here instead of stdout");
    analyze->add_option("--threads", threads, "worker threads (0 = auto)");

    auto* spectrum = app.add_subcommand("spectrum", "print a catalog spectrum");
    spectrum->add_option("catalog", catalog, "sphere | interval | hemisphere")->required();
    spectrum->add_option("args", catalog_args, "catalog parameters (sphere: n k_max; others: k_max)");
    spectrum->add_option("--out", out_path, "write the spectrum file here instead of stdout");

    auto* profile = app.add_subcommand("profile", "Morse-index staircase over the window");
    profile->add_option("config", config_path, "JSON config file")->required();
    profile->add_option("--out", out_path, "write the data here instead of stdout");
    profile->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    profile->add_option("--threads", threads, "worker threads (0 = auto)");

    auto* witness = app.add_subcommand("witness", "discrete crossing scan and residual checks");
    witness->add_option("config", config_path, "JSON config file")->required();
    witness->add_option("--out", out_path, "write the report here instead of stdout");
    witness->add_option("--threads", threads, "worker threads (0 = auto)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    if (analyze->parsed()) {
        const auto report = yamabe::cli::run_analyze(load_config(config_path, threads));
        write_output(report.dump(2) + "\n", out_path);
    } else if (spectrum->parsed()) {
        write_output(yamabe::cli::run_spectrum(catalog, catalog_args), out_path);
    } else if (profile->parsed()) {
        const auto config = load_config(config_path, threads);
        if (format == "csv") {
            write_output(yamabe::cli::run_profile_csv(config), out_path);
        } else {
            write_output(yamabe::cli::run_profile_json(config).dump(2) + "\n", out_path);
        }
    } else if (witness->parsed()) {
        const auto report = yamabe::cli::run_witness(load_config(config_path, threads));
        write_output(report.dump(2) + "\n", out_path);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const yamabe::TruncationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIncomplete;
    } catch (const yamabe::DegeneratePairError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIncomplete;
    } catch (const yamabe::InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const yamabe::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
