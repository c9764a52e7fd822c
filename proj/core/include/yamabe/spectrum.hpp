#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "yamabe/rational.hpp"

namespace yamabe {

enum class BoundaryCondition { Closed, NeumannBoundary };

std::string to_string(BoundaryCondition bc);

struct SpectrumEntry {
    int label = 0;             // consecutive 0,1,2,...
    Rational eigenvalue;       // >= 0, strictly increasing with label
    long long multiplicity = 1;  // > 0

    friend bool operator==(const SpectrumEntry&, const SpectrumEntry&) = default;
};

/// One factor manifold's Laplace spectrum, exact and explicitly truncated:
/// truncation_bound is the largest eigenvalue up to which the listed entries
/// are guaranteed complete, so downstream enumeration can certify that no
/// instant was silently missed.
class FactorSpectrum {
public:
    FactorSpectrum(std::string name, int dimension, Rational scalar_curvature,
                   BoundaryCondition boundary, std::vector<SpectrumEntry> entries,
                   Rational truncation_bound,
                   std::optional<bool> harmonically_free = std::nullopt);

    const std::string& name() const { return name_; }
    int dimension() const { return dimension_; }
    const Rational& scalar_curvature() const { return scalar_curvature_; }
    BoundaryCondition boundary() const { return boundary_; }
    const std::vector<SpectrumEntry>& entries() const { return entries_; }
    const Rational& truncation_bound() const { return truncation_bound_; }
    std::optional<bool> harmonically_free() const { return harmonically_free_; }

    int size() const { return static_cast<int>(entries_.size()); }
    const SpectrumEntry& entry(int label) const;  // range-checked
    const Rational& eigenvalue(int label) const { return entry(label).eigenvalue; }
    long long multiplicity(int label) const { return entry(label).multiplicity; }

    /// True when `value` occurs among the listed eigenvalues.
    bool contains_eigenvalue(const Rational& value) const;

private:
    std::string name_;
    int dimension_;
    Rational scalar_curvature_;
    BoundaryCondition boundary_;
    std::vector<SpectrumEntry> entries_;
    Rational truncation_bound_;
    std::optional<bool> harmonically_free_;
};

/// Round n-sphere of radius 1: eigenvalues k(k+n-1) for k = 0..k_max with
/// multiplicity C(n+k,n) - C(n+k-2,n), scalar curvature n(n-1).
/// The standard rotation action is harmonically free for n >= 2; the circle's
/// eigenspace representations are pairwise equivalent, so n = 1 is flagged false.
FactorSpectrum sphere_spectrum(int n, int k_max);

/// Interval [0, pi] with Neumann ends: eigenvalues k^2, all simple.
FactorSpectrum interval_neumann_spectrum(int k_max);

/// Hemisphere of the unit 2-sphere with Neumann equator: eigenvalues l(l+1)
/// with multiplicity l+1 (the spherical harmonics even under equatorial
/// reflection, i.e. l-m even).
FactorSpectrum hemisphere_neumann_spectrum(int k_max);

/// Parses the line-oriented spectrum file format and validates every
/// FactorSpectrum invariant; errors carry line/field diagnostics.
FactorSpectrum load_spectrum(std::istream& source);
FactorSpectrum load_spectrum_file(const std::filesystem::path& path);

void serialize_spectrum(const FactorSpectrum& spectrum, std::ostream& out);
std::string serialize_spectrum(const FactorSpectrum& spectrum);

}  // namespace yamabe
