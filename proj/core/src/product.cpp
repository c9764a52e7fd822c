#include "yamabe/product.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "yamabe/errors.hpp"

namespace yamabe {

ProductModel::ProductModel(FactorSpectrum factor1, FactorSpectrum factor2)
    : factor1_(std::move(factor1)), factor2_(std::move(factor2)) {
    if (factor1_.boundary() != BoundaryCondition::Closed) {
        throw ConfigError("factor1 must be closed");
    }
    if (factor2_.boundary() != BoundaryCondition::NeumannBoundary) {
        throw ConfigError("factor2 must have Neumann boundary");
    }
    m_ = factor1_.dimension() + factor2_.dimension();
    if (m_ < 3) throw ConfigError("m >= 3 required");
    const Rational m_minus_1(m_ - 1);
    c1_ = factor1_.scalar_curvature() / m_minus_1;
    c2_ = factor2_.scalar_curvature() / m_minus_1;
}

ProductModel build_model(FactorSpectrum f1, FactorSpectrum f2) {
    return ProductModel(std::move(f1), std::move(f2));
}

Rational AffineEigenvalue::sigma_at(const Rational& s) const {
    if (s.sign() <= 0) throw ConfigError("sigma is only defined for s > 0");
    return A + B / s;
}

int AffineEigenvalue::sigma_sign_at(const Rational& s) const {
    if (s.sign() <= 0) throw ConfigError("sigma is only defined for s > 0");
    return (A * s + B).sign();
}

AffineEigenvalue build_affine(const ProductModel& model, int i, int j) {
    if (i == 0 && j == 0) {
        throw ConfigError("branch (0,0) is the excluded constant direction");
    }
    const auto& e1 = model.factor1().entry(i);
    const auto& e2 = model.factor2().entry(j);
    return AffineEigenvalue{i, j, e1.eigenvalue - model.c1(), e2.eigenvalue - model.c2(),
                            e1.multiplicity * e2.multiplicity};
}

PairDegeneracy is_pair_degenerate(const ProductModel& model) {
    const auto scan = [](const FactorSpectrum& f, const Rational& c,
                         const std::string& which) -> std::optional<int> {
        if (c > f.truncation_bound()) {
            throw TruncationError(which + " (" + f.name() + ")", c.str());
        }
        // Smallest label with rho >= c; degeneracy needs equality there.
        for (const auto& e : f.entries()) {
            if (e.eigenvalue >= c) return e.eigenvalue == c ? std::optional<int>(e.label) : std::nullopt;
        }
        return std::nullopt;
    };
    const auto i_star = scan(model.factor1(), model.c1(), "factor1");
    const auto j_star = scan(model.factor2(), model.c2(), "factor2");
    if (i_star && j_star) return {true, std::make_pair(*i_star, *j_star)};
    return {false, std::nullopt};
}

std::optional<Rational> zero_of(const AffineEigenvalue& branch) {
    const int sa = branch.A.sign();
    const int sb = branch.B.sign();
    if (sa == 0 && sb == 0) {
        throw DegeneratePairError("branch (" + std::to_string(branch.i) + "," +
                                  std::to_string(branch.j) +
                                  ") vanishes identically: the pair of metrics is degenerate");
    }
    if (sa * sb >= 0) return std::nullopt;  // same sign, or exactly one of A, B zero
    return -branch.B / branch.A;
}

long long DegeneracyInstant::vanishing_multiplicity() const {
    long long total = 0;
    for (const auto& b : vanishing) total += b.multiplicity;
    return total;
}

namespace {

void require_cap(const FactorSpectrum& f, const Rational& cap, const std::string& which) {
    if (cap > f.truncation_bound()) {
        throw TruncationError(which + " (" + f.name() + ")", cap.str());
    }
}

DegeneracyInstant make_instant(Rational s_star, std::vector<AffineEigenvalue> group) {
    std::set<int> is, js;
    for (const auto& b : group) {
        if (!is.insert(b.i).second || !js.insert(b.j).second) {
            throw InternalError("vanishing group at s* = " + s_star.str() +
                                " repeats a factor label; impossible for a non-degenerate pair");
        }
    }
    return DegeneracyInstant{std::move(s_star), std::move(group)};
}

void require_non_degenerate(const ProductModel& model) {
    if (is_pair_degenerate(model).degenerate) {
        throw DegeneratePairError(
            "the pair of metrics is degenerate (c1 and c2 are both eigenvalues); "
            "the operator family is singular for every s");
    }
}

}  // namespace

std::vector<DegeneracyInstant> degeneracy_instants(const ProductModel& model, const Window& window) {
    if (window.lo.sign() <= 0 || !(window.lo < window.hi)) {
        throw ConfigError("window must satisfy 0 < lo < hi");
    }
    require_non_degenerate(model);

    // Any branch vanishing inside the window obeys both caps (see zero_of:
    // s* = -B/A with A, B of opposite signs forces rho_i <= c1 + c2/lo and
    // rho_j <= c2 + c1*hi), so scanning up to the caps is provably complete.
    const Rational cap1 = model.c1() + model.c2() / window.lo;
    const Rational cap2 = model.c2() + model.c1() * window.hi;
    require_cap(model.factor1(), cap1, "factor1");
    require_cap(model.factor2(), cap2, "factor2");

    std::map<Rational, std::vector<AffineEigenvalue>> groups;
    for (const auto& e1 : model.factor1().entries()) {
        if (e1.eigenvalue > cap1) break;
        for (const auto& e2 : model.factor2().entries()) {
            if (e2.eigenvalue > cap2) break;
            if (e1.label == 0 && e2.label == 0) continue;
            const auto branch = build_affine(model, e1.label, e2.label);
            const auto z = zero_of(branch);
            if (z && window.lo <= *z && *z <= window.hi) {
                groups[*z].push_back(branch);
            }
        }
    }

    std::vector<DegeneracyInstant> instants;
    instants.reserve(groups.size());
    for (auto& [s_star, group] : groups) {
        instants.push_back(make_instant(s_star, std::move(group)));
    }
    return instants;
}

InstantSequences instant_sequences(const ProductModel& model, int count) {
    if (count <= 0) throw ConfigError("count must be positive");
    require_non_degenerate(model);
    InstantSequences out;

    // toward 0: zeros of branches with A > 0, B < 0, i.e. rho_i > c1, rho_j < c2.
    if (model.c2().sign() > 0) {
        require_cap(model.factor2(), model.c2(), "factor2");  // completeness below c2
        std::set<Rational, std::greater<>> zeros;
        for (const auto& e1 : model.factor1().entries()) {
            if (!(e1.eigenvalue > model.c1())) continue;
            for (const auto& e2 : model.factor2().entries()) {
                if (!(e2.eigenvalue < model.c2())) break;
                zeros.insert((model.c2() - e2.eigenvalue) / (e1.eigenvalue - model.c1()));
            }
        }
        if (static_cast<int>(zeros.size()) < count) {
            throw TruncationError("factor1 (" + model.factor1().name() + ")",
                                  "enough eigenvalues for " + std::to_string(count) +
                                      " toward-zero instants");
        }
        auto it = zeros.begin();
        for (int k = 0; k < count; ++k) out.toward_zero.push_back(*it++);
        // All zeros >= the count-th one require rho_i <= c1 + c2/s_c; that cap
        // within the truncation bound certifies the list.
        require_cap(model.factor1(), model.c1() + model.c2() / out.toward_zero.back(), "factor1");
    }

    // toward infinity: zeros of branches with A < 0, B > 0.
    if (model.c1().sign() > 0) {
        require_cap(model.factor1(), model.c1(), "factor1");
        std::set<Rational> zeros;
        for (const auto& e1 : model.factor1().entries()) {
            if (!(e1.eigenvalue < model.c1())) break;
            for (const auto& e2 : model.factor2().entries()) {
                if (!(e2.eigenvalue > model.c2())) continue;
                zeros.insert((e2.eigenvalue - model.c2()) / (model.c1() - e1.eigenvalue));
            }
        }
        if (static_cast<int>(zeros.size()) < count) {
            throw TruncationError("factor2 (" + model.factor2().name() + ")",
                                  "enough eigenvalues for " + std::to_string(count) +
                                      " toward-infinity instants");
        }
        auto it = zeros.begin();
        for (int k = 0; k < count; ++k) out.toward_infinity.push_back(*it++);
        require_cap(model.factor2(), model.c2() + model.c1() * out.toward_infinity.back(), "factor2");
    }

    return out;
}

}  // namespace yamabe
