#include "yamabe/equivariant.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "yamabe/errors.hpp"

namespace yamabe {

long long total_dimension(const RepresentationSignature& sig, const FactorSpectrum& factor1) {
    long long total = 0;
    for (const auto& term : sig.terms) {
        total += term.coefficient * factor1.multiplicity(term.factor1_label);
    }
    return total;
}

SignaturePair signatures_at(const ProductModel& model, const DegeneracyInstant& instant) {
    std::set<int> is, js;
    for (const auto& b : instant.vanishing) {
        if (!is.insert(b.i).second || !js.insert(b.j).second) {
            throw InternalError("vanishing group at s* = " + instant.s_star.str() +
                                " repeats a factor label across sides");
        }
    }

    std::map<int, long long> incoming, outgoing;
    for (const auto& b : instant.vanishing) {
        const int sign = b.B.sign();
        if (sign == 0) throw InternalError("vanishing branch with B = 0");
        auto& side = sign < 0 ? incoming : outgoing;
        side[b.i] += model.factor2().multiplicity(b.j);
    }

    const auto to_signature = [](const std::map<int, long long>& side) {
        RepresentationSignature sig;
        sig.terms.reserve(side.size());
        for (const auto& [label, coeff] : side) sig.terms.push_back({label, coeff});
        return sig;
    };
    return {to_signature(incoming), to_signature(outgoing)};
}

std::string to_string(InstantKind kind) {
    switch (kind) {
        case InstantKind::IndexJumpBifurcation: return "index_jump_bifurcation";
        case InstantKind::EquivariantBifurcation: return "equivariant_bifurcation";
        case InstantKind::NeutralUndecided: return "neutral_undecided";
    }
    throw InternalError("unknown instant kind");
}

InstantClassification classify(const ProductModel& model, const DegeneracyInstant& instant) {
    InstantClassification result;
    result.jump = index_jump(model, instant);
    auto [incoming, outgoing] = signatures_at(model, instant);
    result.signatures_equal = incoming == outgoing;
    result.incoming = std::move(incoming);
    result.outgoing = std::move(outgoing);

    if (result.incoming.empty() && result.outgoing.empty()) {
        throw InternalError("no vanishing branch at s* = " + instant.s_star.str());
    }

    if (result.jump != 0) {
        result.kind = InstantKind::IndexJumpBifurcation;
    } else if (model.factor1().harmonically_free().value_or(false)) {
        // Distinct factor1 eigenspaces with not-all-zero coefficients carry
        // non-equivalent representations under a harmonically free action, so
        // the negative eigenspaces before and after s* differ as G-spaces.
        result.kind = InstantKind::EquivariantBifurcation;
    } else {
        result.kind = InstantKind::NeutralUndecided;
    }
    return result;
}

HfNecessaryReport hf_necessary_check(const FactorSpectrum& spectrum) {
    if (spectrum.boundary() != BoundaryCondition::Closed) {
        throw ConfigError("hf_necessary_check applies to closed spectra");
    }
    HfNecessaryReport report;
    std::map<long long, int> first_label_with_mult;
    for (const auto& e : spectrum.entries()) {
        auto [it, inserted] = first_label_with_mult.try_emplace(e.multiplicity, e.label);
        if (!inserted) {
            report.multiplicities_pairwise_distinct = false;
            report.duplicate_label_pairs.emplace_back(it->second, e.label);
        }
    }
    return report;
}

}  // namespace yamabe
