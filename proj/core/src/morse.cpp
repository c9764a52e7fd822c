#include "yamabe/morse.hpp"

#include <algorithm>

#include "yamabe/errors.hpp"

namespace yamabe {

namespace {

void require_cap(const FactorSpectrum& f, const Rational& cap, const std::string& which) {
    if (cap > f.truncation_bound()) {
        throw TruncationError(which + " (" + f.name() + ")", cap.str());
    }
}

}  // namespace

long long morse_index(const ProductModel& model, const Rational& s) {
    if (s.sign() <= 0) throw ConfigError("morse_index requires s > 0");

    // sigma < 0 forces rho_i < c1 + c2/s and rho_j < c2 + c1*s; a vanishing
    // branch can sit exactly on a cap, so scan the closed ranges to detect it.
    const Rational cap1 = model.c1() + model.c2() / s;
    const Rational cap2 = model.c2() + model.c1() * s;
    require_cap(model.factor1(), cap1, "factor1");
    require_cap(model.factor2(), cap2, "factor2");

    long long total = 0;
    for (const auto& e1 : model.factor1().entries()) {
        if (e1.eigenvalue > cap1) break;
        for (const auto& e2 : model.factor2().entries()) {
            if (e2.eigenvalue > cap2) break;
            if (e1.label == 0 && e2.label == 0) continue;
            const auto branch = build_affine(model, e1.label, e2.label);
            const int sign = branch.sigma_sign_at(s);
            if (sign == 0) {
                throw ConfigError("s = " + s.str() +
                                  " is a degeneracy instant; the Morse index is undefined there");
            }
            if (sign < 0) total += branch.multiplicity;
        }
    }
    return total;
}

long long index_jump_from_group(const DegeneracyInstant& instant) {
    long long jump = 0;
    for (const auto& b : instant.vanishing) {
        if (b.B.sign() > 0) {
            jump += b.multiplicity;  // decreasing branch: enters V^- above s*
        } else if (b.B.sign() < 0) {
            jump -= b.multiplicity;  // increasing branch: leaves V^- above s*
        } else {
            throw InternalError("vanishing branch with B = 0 at s* = " + instant.s_star.str());
        }
    }
    return jump;
}

namespace {

// One-sided evaluation points around s*: midpoints toward the nearest
// instants inside a relative neighborhood [s*(1-eta), s*(1+eta)], with eta
// halved until the neighborhood's enumeration caps fit the truncation bounds.
std::pair<Rational, Rational> sampling_points(const ProductModel& model,
                                              const DegeneracyInstant& instant) {
    const Rational& s = instant.s_star;
    Rational eta(1, 2);
    for (int attempt = 0; attempt < 12; ++attempt, eta = eta / 2) {
        const Window nbhd{s * (Rational(1) - eta), s * (Rational(1) + eta)};
        const Rational cap1 = model.c1() + model.c2() / nbhd.lo;
        const Rational cap2 = model.c2() + model.c1() * nbhd.hi;
        if (cap1 > model.factor1().truncation_bound() ||
            cap2 > model.factor2().truncation_bound()) {
            continue;
        }
        Rational below = nbhd.lo;
        Rational above = nbhd.hi;
        for (const auto& other : degeneracy_instants(model, nbhd)) {
            if (other.s_star < s && other.s_star > below) below = other.s_star;
            if (other.s_star > s && other.s_star < above) above = other.s_star;
        }
        return {(below + s) / 2, (s + above) / 2};
    }
    throw TruncationError("factor1 (" + model.factor1().name() + ")",
                          "a neighborhood of s* = " + s.str() + " coverable by the caps");
}

}  // namespace

long long index_jump(const ProductModel& model, const DegeneracyInstant& instant) {
    const long long group_jump = index_jump_from_group(instant);
    const auto [below, above] = sampling_points(model, instant);
    const long long sampled_jump = morse_index(model, above) - morse_index(model, below);
    if (group_jump != sampled_jump) {
        throw InternalError("index jump mismatch at s* = " + instant.s_star.str() +
                            ": vanishing-group sum " + std::to_string(group_jump) +
                            " vs sampled " + std::to_string(sampled_jump));
    }
    return group_jump;
}

MorseProfile morse_profile(const ProductModel& model, const Window& window) {
    auto instants = degeneracy_instants(model, window);
    for (const auto& inst : instants) {
        if (inst.s_star == window.lo || inst.s_star == window.hi) {
            throw ConfigError("window endpoint " + inst.s_star.str() +
                              " is a degeneracy instant; move the endpoint");
        }
    }

    MorseProfile profile;
    profile.window = window;
    std::vector<Rational> points{window.lo};
    for (auto& inst : instants) {
        profile.breakpoints.push_back(inst.s_star);
        points.push_back(inst.s_star);
    }
    points.push_back(window.hi);

    profile.values.reserve(points.size() - 1);
    for (std::size_t k = 0; k + 1 < points.size(); ++k) {
        profile.values.push_back(morse_index(model, (points[k] + points[k + 1]) / 2));
    }

    for (std::size_t k = 0; k < instants.size(); ++k) {
        const long long step = profile.values[k + 1] - profile.values[k];
        if (step != index_jump_from_group(instants[k])) {
            throw InternalError("staircase step at s* = " + instants[k].s_star.str() +
                                " disagrees with the vanishing-group jump");
        }
    }
    return profile;
}

}  // namespace yamabe
