#pragma once

#include <vector>

#include "yamabe/product.hpp"

namespace yamabe {

/// Total multiplicity of the branches with sigma_{i,j}(s) < 0, computed with
/// exact comparisons. s must not be a degeneracy instant (the index is
/// deliberately undefined there); the enumeration caps rho_i <= c1 + c2/s and
/// rho_j <= c2 + c1*s must lie within both truncation bounds.
long long morse_index(const ProductModel& model, const Rational& s);

/// Index change across an instant: index just above s* minus index just below.
/// Computed two ways — sampling at midpoints toward the adjacent instants, and
/// the signed vanishing-group sum (mult of B>0 branches minus mult of B<0
/// branches) — and cross-asserted before returning.
long long index_jump(const ProductModel& model, const DegeneracyInstant& instant);

/// Signed vanishing-group sum alone (no sampling); exact and cheap.
long long index_jump_from_group(const DegeneracyInstant& instant);

/// Piecewise-constant staircase of the Morse index over a window. values has
/// one entry per open interval between consecutive breakpoints, including the
/// two boundary intervals.
struct MorseProfile {
    Window window;
    std::vector<Rational> breakpoints;
    std::vector<long long> values;
};

MorseProfile morse_profile(const ProductModel& model, const Window& window);

}  // namespace yamabe
