#pragma once

#include <string>
#include <vector>

#include "yamabe/morse.hpp"
#include "yamabe/product.hpp"

namespace yamabe {

/// Formal sum of factor1 eigenspace labels with positive integer coefficients:
/// the label i enters with n_i = sum of factor2 multiplicities mu_j over the
/// vanishing branches (i, j) on one side of the instant. Distinct labels carry
/// distinct group representations when the closed factor's action is
/// harmonically free, so two signatures with disjoint support certify
/// non-equivalent negative-eigenspace representations.
struct SignatureTerm {
    int factor1_label = 0;
    long long coefficient = 1;

    friend bool operator==(const SignatureTerm&, const SignatureTerm&) = default;
};

struct RepresentationSignature {
    std::vector<SignatureTerm> terms;  // sorted by label, labels distinct

    bool empty() const { return terms.empty(); }
    friend bool operator==(const RepresentationSignature&, const RepresentationSignature&) = default;
};

/// Sum of n_i * mu_i over the signature, i.e. the total multiplicity of the
/// vanishing branches it came from.
long long total_dimension(const RepresentationSignature& sig, const FactorSpectrum& factor1);

struct SignaturePair {
    RepresentationSignature incoming;  // branches with B < 0: in V^- below s*, gone above
    RepresentationSignature outgoing;  // branches with B > 0: absent below, in V^- above
};

SignaturePair signatures_at(const ProductModel& model, const DegeneracyInstant& instant);

enum class InstantKind {
    IndexJumpBifurcation,    // jump != 0: dimensions alone force bifurcation
    EquivariantBifurcation,  // jump = 0 but the closed factor's action is harmonically free
    NeutralUndecided,        // jump = 0 and no harmonic-freeness assumption available
};

std::string to_string(InstantKind kind);

struct InstantClassification {
    InstantKind kind = InstantKind::NeutralUndecided;
    long long jump = 0;
    RepresentationSignature incoming;
    RepresentationSignature outgoing;
    bool signatures_equal = false;  // incoming == outgoing as multisets of terms
};

InstantClassification classify(const ProductModel& model, const DegeneracyInstant& instant);

/// Purely dimensional necessary condition for pairwise non-equivalent
/// eigenspace representations: all listed multiplicities pairwise distinct.
/// Reports only; never sets the harmonically_free flag.
struct HfNecessaryReport {
    bool multiplicities_pairwise_distinct = true;
    std::vector<std::pair<int, int>> duplicate_label_pairs;  // labels sharing a multiplicity
};

HfNecessaryReport hf_necessary_check(const FactorSpectrum& spectrum);

}  // namespace yamabe
