#pragma once

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

#include "yamabe/product.hpp"
#include "yamabe/witness.hpp"

namespace yamabe::cli {

/// Reports are a single ordered-JSON document; key order is fixed by
/// construction and rationals are rendered canonically, so identical
/// config + version means byte-identical output.
using Report = nlohmann::ordered_json;

struct FactorSource {
    std::string catalog;             // "sphere" | "interval" | "hemisphere", or empty
    std::vector<long long> params;   // catalog parameters
    std::filesystem::path file;      // spectrum file when catalog is empty
};

struct WitnessOptions {
    bool enabled = false;
    int grid1 = 64;
    int grid2 = 65;
    int samples = 200;
    int tracked_eigenvalues = 6;
    double refine_rel_width = 1e-6;
    bool probe = false;
    double probe_epsilon = 1e-2;
};

struct AnalysisConfig {
    FactorSource factor1;
    FactorSource factor2;
    Window window;
    int sequence_count = 0;  // 0 disables the sequences section
    WitnessOptions witness;
    int threads = 1;  // 0 = auto

    Report echo;  // the parsed document, embedded into reports verbatim
};

AnalysisConfig parse_config(const Report& doc, const std::filesystem::path& base_dir = {});
AnalysisConfig load_config_file(const std::filesystem::path& path);

FactorSpectrum resolve_factor(const FactorSource& source);
FactorSpectrum catalog_spectrum(const std::string& name, const std::vector<long long>& args);

/// Full analysis: pair-degeneracy verdict, instants with classifications and
/// signatures, Morse profile, sequences, and the witness section if enabled.
Report run_analyze(const AnalysisConfig& config);

/// Catalog spectrum in the spectrum file format.
std::string run_spectrum(const std::string& catalog, const std::vector<long long>& args);

/// Staircase rows: s_lo, s_hi, morse_index with exact rational bounds.
std::string run_profile_csv(const AnalysisConfig& config);
Report run_profile_json(const AnalysisConfig& config);

/// Crossing scan + residual checks, with analytic-vs-numeric deviations.
Report run_witness(const AnalysisConfig& config);

}  // namespace yamabe::cli
