#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "yamabe/rational.hpp"
#include "yamabe/spectrum.hpp"

namespace yamabe {

/// Product of a closed factor and a Neumann-boundary factor, with the exact
/// curvature constants c1 = R1/(m-1), c2 = R2/(m-1). Every eigenvalue branch
/// of the operator family is sigma(s) = (rho_i - c1) + (rho_j - c2)/s.
class ProductModel {
public:
    ProductModel(FactorSpectrum factor1, FactorSpectrum factor2);

    const FactorSpectrum& factor1() const { return factor1_; }
    const FactorSpectrum& factor2() const { return factor2_; }
    int m() const { return m_; }
    const Rational& c1() const { return c1_; }
    const Rational& c2() const { return c2_; }

private:
    FactorSpectrum factor1_;  // Closed
    FactorSpectrum factor2_;  // NeumannBoundary
    int m_;                   // dim1 + dim2 >= 3
    Rational c1_, c2_;
};

ProductModel build_model(FactorSpectrum f1, FactorSpectrum f2);

/// One eigenvalue branch sigma(s) = A + B/s with A = rho_i - c1, B = rho_j - c2
/// and multiplicity mu_i * mu_j. The pair (0,0) is excluded: the constant
/// direction is not in the operator's domain.
struct AffineEigenvalue {
    int i = 0;
    int j = 0;
    Rational A;
    Rational B;
    long long multiplicity = 1;

    Rational sigma_at(const Rational& s) const;
    /// sign of sigma(s) for s > 0, computed exactly as sign(A*s + B).
    int sigma_sign_at(const Rational& s) const;

    friend bool operator==(const AffineEigenvalue&, const AffineEigenvalue&) = default;
};

AffineEigenvalue build_affine(const ProductModel& model, int i, int j);

struct PairDegeneracy {
    bool degenerate = false;
    std::optional<std::pair<int, int>> witness;  // labels (i*, j*) when degenerate
};

/// The pair is degenerate iff c1 occurs in factor1's spectrum AND c2 occurs in
/// factor2's. If c1 or c2 lies beyond a truncation bound, the scan cannot
/// certify the verdict and a TruncationError is raised instead.
PairDegeneracy is_pair_degenerate(const ProductModel& model);

/// Exact zero -B/A when A and B have opposite signs; nullopt when the branch
/// never vanishes on s > 0. A = B = 0 signals a degenerate pair and throws.
std::optional<Rational> zero_of(const AffineEigenvalue& branch);

/// An s* > 0 where at least one branch vanishes, with the full vanishing
/// group. Within the group all factor1 labels differ and all factor2 labels
/// differ (checked at construction).
struct DegeneracyInstant {
    Rational s_star;
    std::vector<AffineEigenvalue> vanishing;

    long long vanishing_multiplicity() const;
};

struct Window {
    Rational lo;
    Rational hi;
};

/// Every degeneracy instant with s* in [window.lo, window.hi], ascending,
/// branches merged per exact s*. Completeness is certified via the enumeration
/// caps rho_i <= c1 + c2/lo and rho_j <= c2 + c1*hi; if a cap exceeds a
/// truncation bound the call fails rather than return a possibly partial list.
std::vector<DegeneracyInstant> degeneracy_instants(const ProductModel& model, const Window& window);

struct InstantSequences {
    std::vector<Rational> toward_zero;      // descending, accumulating at 0
    std::vector<Rational> toward_infinity;  // ascending, unbounded
};

/// First `count` members of the two instant sequences. A structurally empty
/// direction (no branch of that slope sign exists) yields an empty list;
/// insufficient truncation to certify `count` terms is an error.
InstantSequences instant_sequences(const ProductModel& model, int count);

}  // namespace yamabe
