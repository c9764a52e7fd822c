#include "yamabe/analysis.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "yamabe/equivariant.hpp"
#include "yamabe/errors.hpp"
#include "yamabe/morse.hpp"
#include "yamabe/version.hpp"

namespace yamabe::cli {

namespace {

const Report& require_key(const Report& doc, const std::string& key, const std::string& where) {
    const auto it = doc.find(key);
    if (it == doc.end()) throw ConfigError("config: missing '" + key + "' in " + where);
    return *it;
}

Rational rational_field(const Report& node, const std::string& where) {
    if (node.is_number_integer()) return Rational(node.get<long long>());
    if (node.is_string()) {
        if (auto r = Rational::parse(node.get<std::string>())) return *r;
    }
    throw ConfigError("config: " + where + " must be an integer or a \"p/q\" string");
}

long long int_field(const Report& node, const std::string& where) {
    if (!node.is_number_integer()) throw ConfigError("config: " + where + " must be an integer");
    return node.get<long long>();
}

FactorSource parse_factor(const Report& node, const std::string& where,
                          const std::filesystem::path& base_dir) {
    if (!node.is_object()) throw ConfigError("config: " + where + " must be an object");
    FactorSource source;
    if (node.contains("file")) {
        std::filesystem::path p = node.at("file").get<std::string>();
        if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
        if (!std::filesystem::exists(p)) {
            throw ConfigError("config: " + where + ": spectrum file not found: " + p.string());
        }
        source.file = p;
        return source;
    }
    source.catalog = require_key(node, "catalog", where).get<std::string>();
    if (source.catalog == "sphere") {
        source.params.push_back(int_field(require_key(node, "n", where), where + ".n"));
    } else if (source.catalog != "interval" && source.catalog != "hemisphere") {
        throw ConfigError("config: " + where + ": unknown catalog '" + source.catalog + "'");
    }
    source.params.push_back(int_field(require_key(node, "k_max", where), where + ".k_max"));
    return source;
}

}  // namespace

FactorSpectrum catalog_spectrum(const std::string& name, const std::vector<long long>& args) {
    const auto arg = [&](std::size_t k) -> int {
        if (k >= args.size()) throw ConfigError("catalog '" + name + "': missing argument");
        return static_cast<int>(args[k]);
    };
    if (name == "sphere") {
        if (args.size() != 2) throw ConfigError("catalog 'sphere' takes <n> <k_max>");
        return sphere_spectrum(arg(0), arg(1));
    }
    if (name == "interval") {
        if (args.size() != 1) throw ConfigError("catalog 'interval' takes <k_max>");
        return interval_neumann_spectrum(arg(0));
    }
    if (name == "hemisphere") {
        if (args.size() != 1) throw ConfigError("catalog 'hemisphere' takes <k_max>");
        return hemisphere_neumann_spectrum(arg(0));
    }
    throw ConfigError("unknown catalog '" + name + "'");
}

FactorSpectrum resolve_factor(const FactorSource& source) {
    if (!source.file.empty()) return load_spectrum_file(source.file);
    return catalog_spectrum(source.catalog, source.params);
}

AnalysisConfig parse_config(const Report& doc, const std::filesystem::path& base_dir) {
    if (!doc.is_object()) throw ConfigError("config: top level must be an object");
    AnalysisConfig config;
    config.echo = doc;
    config.factor1 = parse_factor(require_key(doc, "factor1", "config"), "factor1", base_dir);
    config.factor2 = parse_factor(require_key(doc, "factor2", "config"), "factor2", base_dir);

    const auto& window = require_key(doc, "window", "config");
    if (!window.is_array() || window.size() != 2) {
        throw ConfigError("config: window must be [lo, hi]");
    }
    config.window.lo = rational_field(window[0], "window[0]");
    config.window.hi = rational_field(window[1], "window[1]");
    if (config.window.lo.sign() <= 0 || !(config.window.lo < config.window.hi)) {
        throw ConfigError("config: window must satisfy 0 < lo < hi");
    }

    if (doc.contains("sequence_count")) {
        config.sequence_count = static_cast<int>(int_field(doc.at("sequence_count"), "sequence_count"));
        if (config.sequence_count < 0) throw ConfigError("config: sequence_count must be >= 0");
    }
    if (doc.contains("threads")) {
        config.threads = static_cast<int>(int_field(doc.at("threads"), "threads"));
        if (config.threads < 0) throw ConfigError("config: threads must be >= 0");
    }
    if (doc.contains("witness")) {
        const auto& w = doc.at("witness");
        if (!w.is_object()) throw ConfigError("config: witness must be an object");
        config.witness.enabled = w.value("enabled", true);
        config.witness.grid1 = static_cast<int>(w.value("grid1", 64));
        config.witness.grid2 = static_cast<int>(w.value("grid2", 65));
        config.witness.samples = static_cast<int>(w.value("samples", 200));
        config.witness.tracked_eigenvalues = static_cast<int>(w.value("tracked_eigenvalues", 6));
        config.witness.refine_rel_width = w.value("refine_rel_width", 1e-6);
        config.witness.probe = w.value("probe", false);
        config.witness.probe_epsilon = w.value("probe_epsilon", 1e-2);
    }
    return config;
}

AnalysisConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    Report doc;
    try {
        doc = Report::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config: invalid JSON in " + path.string() + ": " + e.what());
    }
    return parse_config(doc, path.parent_path());
}

namespace {

Report spectrum_summary(const FactorSpectrum& f) {
    Report node;
    node["name"] = f.name();
    node["dimension"] = f.dimension();
    node["scalar_curvature"] = f.scalar_curvature().str();
    node["boundary"] = to_string(f.boundary());
    node["entries_listed"] = f.size();
    node["truncation_bound"] = f.truncation_bound().str();
    if (f.harmonically_free().has_value()) {
        node["harmonically_free"] = *f.harmonically_free();
    } else {
        node["harmonically_free"] = nullptr;
    }
    return node;
}

Report signature_json(const RepresentationSignature& sig) {
    Report arr = Report::array();
    for (const auto& term : sig.terms) {
        arr.push_back(Report::array({term.factor1_label, term.coefficient}));
    }
    return arr;
}

Report instant_json(const ProductModel& model, const DegeneracyInstant& instant) {
    Report node;
    node["s"] = instant.s_star.str();
    Report branches = Report::array();
    for (const auto& b : instant.vanishing) {
        Report branch;
        branch["i"] = b.i;
        branch["j"] = b.j;
        branch["A"] = b.A.str();
        branch["B"] = b.B.str();
        branch["multiplicity"] = b.multiplicity;
        branches.push_back(std::move(branch));
    }
    node["vanishing"] = std::move(branches);

    const auto classification = classify(model, instant);
    Report cls;
    cls["kind"] = to_string(classification.kind);
    cls["jump"] = classification.jump;
    cls["incoming"] = signature_json(classification.incoming);
    cls["outgoing"] = signature_json(classification.outgoing);
    cls["signatures_equal"] = classification.signatures_equal;
    node["classification"] = std::move(cls);
    return node;
}

Report profile_json(const MorseProfile& profile) {
    Report node;
    node["window"] = Report::array({profile.window.lo.str(), profile.window.hi.str()});
    Report breakpoints = Report::array();
    for (const auto& b : profile.breakpoints) breakpoints.push_back(b.str());
    node["breakpoints"] = std::move(breakpoints);
    node["values"] = profile.values;
    return node;
}

// Exact circle x interval model carrying the injected constants: the grids
// discretize exactly this spectrum (k^2 doubled / k^2 simple), so its instants
// are the right reference for the discrete crossings.
ProductModel synthetic_reference_model(int m, const Rational& c1, const Rational& c2,
                                       const Window& window) {
    const auto k_for_cap = [](Rational cap) {
        if (cap.sign() < 0) cap = Rational(0);
        int k = static_cast<int>(std::ceil(std::sqrt(cap.to_double()))) + 2;
        while (Rational(BigInt(k) * k) < cap) ++k;
        return k;
    };
    const int k1 = k_for_cap(c1 + c2 / window.lo);
    const int k2 = k_for_cap(c2 + c1 * window.hi);
    const Rational m_minus_1(m - 1);
    FactorSpectrum f1("synthetic-circle", m - 1, c1 * m_minus_1, BoundaryCondition::Closed,
                      sphere_spectrum(1, k1).entries(), Rational(BigInt(k1) * k1));
    FactorSpectrum f2("synthetic-interval", 1, c2 * m_minus_1, BoundaryCondition::NeumannBoundary,
                      interval_neumann_spectrum(k2).entries(), Rational(BigInt(k2) * k2));
    return ProductModel(std::move(f1), std::move(f2));
}

Report witness_section(const AnalysisConfig& config, const ProductModel& model) {
    const auto& opts = config.witness;
    const auto g1 = witness::Grid1D::periodic(opts.grid1);
    const auto g2 = witness::Grid1D::neumann_interval(opts.grid2);
    const double c1 = model.c1().to_double();
    const double c2 = model.c2().to_double();
    const double lo = config.window.lo.to_double();
    const double hi = config.window.hi.to_double();

    std::vector<DegeneracyInstant> reference;
    bool reference_degenerate = false;
    try {
        reference = degeneracy_instants(
            synthetic_reference_model(model.m(), model.c1(), model.c2(), config.window),
            config.window);
    } catch (const DegeneratePairError&) {
        reference_degenerate = true;
    }

    Report node;
    node["grid1"] = opts.grid1;
    node["grid2"] = opts.grid2;
    node["samples"] = opts.samples;
    node["c1"] = c1;
    node["c2"] = c2;
    node["reference_degenerate"] = reference_degenerate;
    Report ref = Report::array();
    for (const auto& inst : reference) ref.push_back(inst.s_star.str());
    node["reference_instants"] = std::move(ref);

    // Residual check: the constant is an exact root when K = R, at any s.
    {
        const double s_mid = std::sqrt(lo * hi);
        const double shift = c1 + c2 / s_mid;
        const witness::YamabeParams params(model.m(), (model.m() - 1) * shift,
                                           (model.m() - 1) * shift);
        const auto laplacian = witness::assemble_product_js(g1, g2, s_mid, 0.0);
        const Eigen::VectorXd ones = Eigen::VectorXd::Ones(laplacian.dimension());
        node["constant_residual"] =
            witness::yamabe_residual(ones, params, laplacian, g1.spacing * g2.spacing);
        node["constant_residual_s"] = s_mid;
    }

    witness::CrossingScanOptions scan_opts;
    scan_opts.tracked_eigenvalues = opts.tracked_eigenvalues;
    scan_opts.refine_rel_width = opts.refine_rel_width;
    scan_opts.threads = config.threads;
    const auto crossings = witness::crossing_scan(g1, g2, c1, c2, lo, hi, opts.samples, scan_opts);

    Report rows = Report::array();
    for (const auto& crossing : crossings) {
        Report row;
        row["s"] = crossing.s;
        row["eigen_index"] = crossing.eigen_index;
        const DegeneracyInstant* nearest = nullptr;
        double nearest_dev = 0.0;
        for (const auto& inst : reference) {
            const double dev = std::abs(crossing.s - inst.s_star.to_double()) / inst.s_star.to_double();
            if (!nearest || dev < nearest_dev) {
                nearest = &inst;
                nearest_dev = dev;
            }
        }
        if (nearest && nearest_dev <= 0.05) {
            row["matched_instant"] = nearest->s_star.str();
            row["relative_deviation"] = nearest_dev;
        } else {
            row["matched_instant"] = nullptr;
            row["relative_deviation"] = nullptr;
        }
        rows.push_back(std::move(row));
    }
    node["crossings"] = std::move(rows);

    if (opts.probe && !crossings.empty()) {
        witness::NewtonProbeOptions probe_opts;
        probe_opts.epsilon = opts.probe_epsilon;
        const auto probe =
            witness::newton_branch_probe(g1, g2, c1, c2, model.m(), crossings.front().s, probe_opts);
        Report p;
        p["s_star_estimate"] = crossings.front().s;
        p["converged"] = probe.converged;
        p["iterations"] = probe.iterations;
        p["final_residual"] = probe.final_residual;
        p["nonconstancy"] = probe.nonconstancy;
        p["label"] = probe.label;
        node["probe"] = std::move(p);
    }
    return node;
}

Report report_header() {
    Report tool;
    tool["name"] = "yamabe";
    tool["version"] = kVersion;
    return tool;
}

Report model_summary(const ProductModel& model, const PairDegeneracy& degeneracy) {
    Report node;
    node["m"] = model.m();
    node["c1"] = model.c1().str();
    node["c2"] = model.c2().str();
    node["factor1"] = spectrum_summary(model.factor1());
    node["factor2"] = spectrum_summary(model.factor2());
    node["pair_degenerate"] = degeneracy.degenerate;
    return node;
}

}  // namespace

Report run_analyze(const AnalysisConfig& config) {
    const ProductModel model(resolve_factor(config.factor1), resolve_factor(config.factor2));
    const auto degeneracy = is_pair_degenerate(model);
    if (degeneracy.degenerate) {
        throw DegeneratePairError(
            "the pair of metrics is degenerate: c1 = " + model.c1().str() + " (factor1 label " +
            std::to_string(degeneracy.witness->first) + ") and c2 = " + model.c2().str() +
            " (factor2 label " + std::to_string(degeneracy.witness->second) +
            ") are both eigenvalues, so the operator family is singular for every s");
    }

    Report report;
    report["tool"] = report_header();
    report["model"] = model_summary(model, degeneracy);

    const auto instants = degeneracy_instants(model, config.window);
    Report instants_json = Report::array();
    for (const auto& inst : instants) instants_json.push_back(instant_json(model, inst));
    report["instants"] = std::move(instants_json);

    if (config.sequence_count > 0) {
        const auto sequences = instant_sequences(model, config.sequence_count);
        Report seq;
        Report tz = Report::array(), ti = Report::array();
        for (const auto& s : sequences.toward_zero) tz.push_back(s.str());
        for (const auto& s : sequences.toward_infinity) ti.push_back(s.str());
        seq["toward_zero"] = std::move(tz);
        seq["toward_infinity"] = std::move(ti);
        report["sequences"] = std::move(seq);
    }

    report["morse_profile"] = profile_json(morse_profile(model, config.window));

    if (config.witness.enabled) {
        report["witness"] = witness_section(config, model);
    }
    report["config"] = config.echo;
    return report;
}

std::string run_spectrum(const std::string& catalog, const std::vector<long long>& args) {
    return serialize_spectrum(catalog_spectrum(catalog, args));
}

std::string run_profile_csv(const AnalysisConfig& config) {
    const ProductModel model(resolve_factor(config.factor1), resolve_factor(config.factor2));
    const auto profile = morse_profile(model, config.window);

    std::ostringstream out;
    out << "s_lo,s_hi,morse_index\n";
    std::vector<Rational> points{profile.window.lo};
    points.insert(points.end(), profile.breakpoints.begin(), profile.breakpoints.end());
    points.push_back(profile.window.hi);
    for (std::size_t k = 0; k + 1 < points.size(); ++k) {
        out << points[k] << ',' << points[k + 1] << ',' << profile.values[k] << '\n';
    }
    return out.str();
}

Report run_profile_json(const AnalysisConfig& config) {
    const ProductModel model(resolve_factor(config.factor1), resolve_factor(config.factor2));
    Report report;
    report["tool"] = report_header();
    report["morse_profile"] = profile_json(morse_profile(model, config.window));
    report["config"] = config.echo;
    return report;
}

Report run_witness(const AnalysisConfig& config) {
    const ProductModel model(resolve_factor(config.factor1), resolve_factor(config.factor2));
    const auto degeneracy = is_pair_degenerate(model);
    if (degeneracy.degenerate) {
        throw DegeneratePairError("the pair of metrics is degenerate; no witness scan is meaningful");
    }

    Report report;
    report["tool"] = report_header();
    report["model"] = model_summary(model, degeneracy);
    report["witness"] = witness_section(config, model);
    report["config"] = config.echo;
    return report;
}

}  // namespace yamabe::cli
