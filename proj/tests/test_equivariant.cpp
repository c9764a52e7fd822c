#include <doctest.h>

#include "yamabe/equivariant.hpp"
#include "yamabe/errors.hpp"

using namespace yamabe;

namespace {

ProductModel s2_hemisphere(int k_max = 8) {
    return build_model(sphere_spectrum(2, k_max), hemisphere_neumann_spectrum(k_max));
}

ProductModel neutral_fixture(std::optional<bool> hf) {
    std::vector<SpectrumEntry> closed{{0, Rational(0), 1}, {1, Rational(2), 1}};
    std::vector<SpectrumEntry> neumann{{0, Rational(0), 1}, {1, Rational(2), 1}};
    return build_model(
        FactorSpectrum("neutral-closed", 2, 3, BoundaryCondition::Closed, closed, 100, hf),
        FactorSpectrum("neutral-neumann", 2, 3, BoundaryCondition::NeumannBoundary, neumann, 100));
}

DegeneracyInstant instant_at(const ProductModel& model, const Rational& s) {
    for (auto& inst : degeneracy_instants(model, {s / 2, s * 2})) {
        if (inst.s_star == s) return inst;
    }
    throw std::runtime_error("test setup: no instant at " + s.str());
}

}  // namespace

TEST_CASE("signatures at one-sided instants") {
    const auto model = s2_hemisphere();

    const auto at_half = signatures_at(model, instant_at(model, Rational(1, 2)));
    REQUIRE(at_half.incoming.terms.size() == 1);
    CHECK(at_half.incoming.terms[0] == SignatureTerm{1, 1});
    CHECK(at_half.outgoing.empty());

    const auto at_two = signatures_at(model, instant_at(model, Rational(2)));
    CHECK(at_two.incoming.empty());
    REQUIRE(at_two.outgoing.terms.size() == 1);
    CHECK(at_two.outgoing.terms[0] == SignatureTerm{0, 2});
}

TEST_CASE("signatures at the neutral instant") {
    const auto model = neutral_fixture(false);
    const auto pair = signatures_at(model, instant_at(model, Rational(1)));
    REQUIRE(pair.incoming.terms.size() == 1);
    REQUIRE(pair.outgoing.terms.size() == 1);
    CHECK(pair.incoming.terms[0] == SignatureTerm{1, 1});
    CHECK(pair.outgoing.terms[0] == SignatureTerm{0, 1});
    CHECK(pair.incoming != pair.outgoing);
}

TEST_CASE("total dimension tracks the vanishing multiplicities") {
    const auto model = s2_hemisphere();
    for (const auto& inst : degeneracy_instants(model, {Rational(1, 20), Rational(20)})) {
        const auto pair = signatures_at(model, inst);
        CHECK(total_dimension(pair.incoming, model.factor1()) +
                  total_dimension(pair.outgoing, model.factor1()) ==
              inst.vanishing_multiplicity());
    }
}

TEST_CASE("dimension difference of the signatures equals the index jump") {
    for (const auto& model : {s2_hemisphere(), neutral_fixture(false)}) {
        for (const auto& inst : degeneracy_instants(model, {Rational(1, 10), Rational(10)})) {
            const auto pair = signatures_at(model, inst);
            CHECK(total_dimension(pair.outgoing, model.factor1()) -
                      total_dimension(pair.incoming, model.factor1()) ==
                  index_jump(model, inst));
        }
    }
}

TEST_CASE("classification: a nonzero jump decides by dimensions") {
    const auto model = s2_hemisphere();
    const auto cls = classify(model, instant_at(model, Rational(1, 2)));
    CHECK(cls.kind == InstantKind::IndexJumpBifurcation);
    CHECK(cls.jump == -3);
    CHECK_FALSE(cls.signatures_equal);
}

TEST_CASE("classification at the neutral instant follows the harmonically-free flag") {
    {
        const auto cls = classify(neutral_fixture(true), instant_at(neutral_fixture(true), 1));
        CHECK(cls.kind == InstantKind::EquivariantBifurcation);
        CHECK(cls.jump == 0);
    }
    {
        const auto cls = classify(neutral_fixture(false), instant_at(neutral_fixture(false), 1));
        CHECK(cls.kind == InstantKind::NeutralUndecided);
        CHECK(cls.jump == 0);
        CHECK_FALSE(cls.signatures_equal);  // {(1,1)} vs {(0,1)}
    }
    {
        // Unknown flag: no criterion applies.
        const auto cls =
            classify(neutral_fixture(std::nullopt), instant_at(neutral_fixture(std::nullopt), 1));
        CHECK(cls.kind == InstantKind::NeutralUndecided);
    }
}

TEST_CASE("under a harmonically free factor nothing stays undecided") {
    const auto models = {s2_hemisphere(), neutral_fixture(true)};
    for (const auto& model : models) {
        if (model.factor1().harmonically_free() != true) continue;
        for (const auto& inst : degeneracy_instants(model, {Rational(1, 10), Rational(10)})) {
            CHECK(classify(model, inst).kind != InstantKind::NeutralUndecided);
        }
    }
}

TEST_CASE("signatures are never both empty") {
    for (const auto& model : {s2_hemisphere(), neutral_fixture(false)}) {
        for (const auto& inst : degeneracy_instants(model, {Rational(1, 10), Rational(10)})) {
            const auto pair = signatures_at(model, inst);
            CHECK((!pair.incoming.empty() || !pair.outgoing.empty()));
        }
    }
}

TEST_CASE("classification is reproducible from identical model data") {
    const auto a = classify(s2_hemisphere(), instant_at(s2_hemisphere(), Rational(2)));
    const auto b = classify(s2_hemisphere(), instant_at(s2_hemisphere(), Rational(2)));
    CHECK(a.kind == b.kind);
    CHECK(a.jump == b.jump);
    CHECK(a.incoming == b.incoming);
    CHECK(a.outgoing == b.outgoing);
}

TEST_CASE("hf_necessary_check") {
    const auto pass = hf_necessary_check(sphere_spectrum(2, 5));
    CHECK(pass.multiplicities_pairwise_distinct);
    CHECK(pass.duplicate_label_pairs.empty());

    const auto fail = hf_necessary_check(sphere_spectrum(1, 5));
    CHECK_FALSE(fail.multiplicities_pairwise_distinct);
    REQUIRE(!fail.duplicate_label_pairs.empty());
    CHECK(fail.duplicate_label_pairs.front() == std::pair<int, int>{1, 2});

    CHECK(hf_necessary_check(sphere_spectrum(3, 0)).multiplicities_pairwise_distinct);

    CHECK_THROWS_AS(hf_necessary_check(hemisphere_neumann_spectrum(3)), ConfigError);
}
