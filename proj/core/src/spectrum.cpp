#include "yamabe/spectrum.hpp"

#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "yamabe/errors.hpp"

namespace yamabe {

std::string to_string(BoundaryCondition bc) {
    return bc == BoundaryCondition::Closed ? "closed" : "neumann";
}

FactorSpectrum::FactorSpectrum(std::string name, int dimension, Rational scalar_curvature,
                               BoundaryCondition boundary, std::vector<SpectrumEntry> entries,
                               Rational truncation_bound, std::optional<bool> harmonically_free)
    : name_(std::move(name)),
      dimension_(dimension),
      scalar_curvature_(std::move(scalar_curvature)),
      boundary_(boundary),
      entries_(std::move(entries)),
      truncation_bound_(std::move(truncation_bound)),
      harmonically_free_(harmonically_free) {
    if (dimension_ <= 0) throw ConfigError("dimension must be positive");
    if (entries_.empty()) throw ConfigError("spectrum has no entries");
    if (!entries_.front().eigenvalue.is_zero()) throw ConfigError("lambda_0 = 0 required");
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        const auto& e = entries_[k];
        if (e.label != static_cast<int>(k)) {
            throw ConfigError("labels must be consecutive starting at 0 (got " +
                              std::to_string(e.label) + " at position " + std::to_string(k) + ")");
        }
        if (e.eigenvalue.sign() < 0) throw ConfigError("eigenvalues must be non-negative");
        if (e.multiplicity <= 0) throw ConfigError("multiplicity must be positive");
        if (k > 0 && !(entries_[k - 1].eigenvalue < e.eigenvalue)) {
            throw ConfigError("eigenvalues not strictly increasing");
        }
    }
    if (truncation_bound_ < entries_.back().eigenvalue) {
        throw ConfigError("truncation_bound below largest listed eigenvalue");
    }
}

const SpectrumEntry& FactorSpectrum::entry(int label) const {
    if (label < 0 || label >= size()) {
        throw ConfigError("label " + std::to_string(label) + " out of range for spectrum '" +
                          name_ + "' with " + std::to_string(size()) + " entries");
    }
    return entries_[static_cast<std::size_t>(label)];
}

bool FactorSpectrum::contains_eigenvalue(const Rational& value) const {
    for (const auto& e : entries_) {
        if (e.eigenvalue == value) return true;
        if (e.eigenvalue > value) return false;
    }
    return false;
}

namespace {

// C(a, b) with the convention C(a,b) = 0 for a < b or a < 0.
BigInt binomial(long long a, long long b) {
    if (a < 0 || b < 0 || a < b) return 0;
    b = std::min(b, a - b);
    BigInt result = 1;
    for (long long t = 1; t <= b; ++t) {
        result *= a - b + t;
        result /= t;
    }
    return result;
}

long long to_multiplicity(const BigInt& value, const std::string& context) {
    if (value <= 0 || value > std::numeric_limits<long long>::max()) {
        throw ConfigError("multiplicity out of range for " + context);
    }
    return value.convert_to<long long>();
}

}  // namespace

FactorSpectrum sphere_spectrum(int n, int k_max) {
    if (n < 1) throw ConfigError("sphere dimension must be >= 1");
    if (k_max < 0) throw ConfigError("k_max must be >= 0");
    std::vector<SpectrumEntry> entries;
    entries.reserve(static_cast<std::size_t>(k_max) + 1);
    for (int k = 0; k <= k_max; ++k) {
        const BigInt mult = binomial(n + k, n) - binomial(n + k - 2, n);
        entries.push_back({k, Rational(BigInt(k) * (k + n - 1)),
                           to_multiplicity(mult, "sphere eigenspace k=" + std::to_string(k))});
    }
    const Rational bound(BigInt(k_max) * (k_max + n - 1));
    return FactorSpectrum("S^" + std::to_string(n), n, Rational(BigInt(n) * (n - 1)),
                          BoundaryCondition::Closed, std::move(entries), bound, n >= 2);
}

FactorSpectrum interval_neumann_spectrum(int k_max) {
    if (k_max < 0) throw ConfigError("k_max must be >= 0");
    std::vector<SpectrumEntry> entries;
    entries.reserve(static_cast<std::size_t>(k_max) + 1);
    for (int k = 0; k <= k_max; ++k) {
        entries.push_back({k, Rational(BigInt(k) * k), 1});
    }
    return FactorSpectrum("interval", 1, 0, BoundaryCondition::NeumannBoundary,
                          std::move(entries), Rational(BigInt(k_max) * k_max));
}

FactorSpectrum hemisphere_neumann_spectrum(int k_max) {
    if (k_max < 0) throw ConfigError("k_max must be >= 0");
    std::vector<SpectrumEntry> entries;
    entries.reserve(static_cast<std::size_t>(k_max) + 1);
    for (int l = 0; l <= k_max; ++l) {
        entries.push_back({l, Rational(BigInt(l) * (l + 1)), l + 1});
    }
    return FactorSpectrum("hemisphere", 2, 2, BoundaryCondition::NeumannBoundary,
                          std::move(entries), Rational(BigInt(k_max) * (k_max + 1)));
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

Rational parse_rational_field(std::string_view text, int line, const std::string& field) {
    auto value = Rational::parse(trim(text));
    if (!value) throw ParseError(line, "field '" + field + "': expected <p> or <p>/<q>, got '" +
                                           std::string(text) + "'");
    return *value;
}

long long parse_int_field(std::string_view text, int line, const std::string& field) {
    const Rational r = parse_rational_field(text, line, field);
    if (!r.is_integer()) throw ParseError(line, "field '" + field + "': expected an integer");
    const BigInt n = r.numerator();
    if (n < std::numeric_limits<long long>::min() || n > std::numeric_limits<long long>::max()) {
        throw ParseError(line, "field '" + field + "': integer out of range");
    }
    return n.convert_to<long long>();
}

}  // namespace

FactorSpectrum load_spectrum(std::istream& source) {
    std::map<std::string, std::string> headers;
    std::vector<SpectrumEntry> entries;
    bool in_entries = false;

    std::string raw;
    int line_no = 0;
    while (std::getline(source, raw)) {
        ++line_no;
        std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#') continue;

        const auto eq = line.find('=');
        if (!in_entries && eq != std::string_view::npos &&
            line.substr(0, eq).find(' ') == std::string_view::npos) {
            const std::string key{trim(line.substr(0, eq))};
            const std::string value{trim(line.substr(eq + 1))};
            if (headers.count(key)) throw ParseError(line_no, "duplicate header '" + key + "'");
            headers[key] = value;
            continue;
        }

        in_entries = true;
        std::istringstream fields{std::string(line)};
        std::string label_text, eigen_text, mult_text, extra;
        if (!(fields >> label_text >> eigen_text >> mult_text) || (fields >> extra)) {
            throw ParseError(line_no, "expected '<label> <eigenvalue> <multiplicity>'");
        }
        SpectrumEntry e;
        const long long label = parse_int_field(label_text, line_no, "label");
        if (label < 0 || label > std::numeric_limits<int>::max()) {
            throw ParseError(line_no, "field 'label': out of range");
        }
        e.label = static_cast<int>(label);
        e.eigenvalue = parse_rational_field(eigen_text, line_no, "eigenvalue");
        e.multiplicity = parse_int_field(mult_text, line_no, "multiplicity");
        entries.push_back(std::move(e));
    }

    for (const char* key : {"name", "dimension", "scalar_curvature", "boundary",
                            "truncation_bound", "harmonically_free"}) {
        if (!headers.count(key)) throw ParseError(line_no, std::string("missing header '") + key + "'");
    }

    BoundaryCondition bc;
    if (headers["boundary"] == "closed") {
        bc = BoundaryCondition::Closed;
    } else if (headers["boundary"] == "neumann") {
        bc = BoundaryCondition::NeumannBoundary;
    } else {
        throw ParseError(line_no, "field 'boundary': expected closed|neumann");
    }

    std::optional<bool> hf;
    if (headers["harmonically_free"] == "true") {
        hf = true;
    } else if (headers["harmonically_free"] == "false") {
        hf = false;
    } else if (headers["harmonically_free"] != "unknown") {
        throw ParseError(line_no, "field 'harmonically_free': expected true|false|unknown");
    }

    const long long dim = parse_int_field(headers["dimension"], line_no, "dimension");
    if (dim <= 0 || dim > std::numeric_limits<int>::max()) {
        throw ParseError(line_no, "field 'dimension': must be a positive integer");
    }

    return FactorSpectrum(headers["name"], static_cast<int>(dim),
                          parse_rational_field(headers["scalar_curvature"], line_no, "scalar_curvature"),
                          bc, std::move(entries),
                          parse_rational_field(headers["truncation_bound"], line_no, "truncation_bound"),
                          hf);
}

FactorSpectrum load_spectrum_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open spectrum file: " + path.string());
    return load_spectrum(in);
}

void serialize_spectrum(const FactorSpectrum& spectrum, std::ostream& out) {
    out << "name=" << spectrum.name() << '\n';
    out << "dimension=" << spectrum.dimension() << '\n';
    out << "scalar_curvature=" << spectrum.scalar_curvature() << '\n';
    out << "boundary=" << to_string(spectrum.boundary()) << '\n';
    out << "truncation_bound=" << spectrum.truncation_bound() << '\n';
    out << "harmonically_free=";
    if (spectrum.harmonically_free().has_value()) {
        out << (*spectrum.harmonically_free() ? "true" : "false");
    } else {
        out << "unknown";
    }
    out << '\n';
    for (const auto& e : spectrum.entries()) {
        out << e.label << ' ' << e.eigenvalue << ' ' << e.multiplicity << '\n';
    }
}

std::string serialize_spectrum(const FactorSpectrum& spectrum) {
    std::ostringstream out;
    serialize_spectrum(spectrum, out);
    return out.str();
}

}  // namespace yamabe
