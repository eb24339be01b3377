#pragma once

// Certified isolation and refinement of the three real roots of a monic cubic.

#include "cubic/family.hpp"
#include "cubic/poly.hpp"

#include <array>
#include <string>
#include <variant>

namespace cubic {

struct PrecisionPolicy {
    Bits target_bits = 192;
    Bits max_bits = 4096;
};

// A root known to lie in [lo, hi], with |root - value| <= err.
struct IsolatedRoot {
    Rational lo, hi;
    Real value;
    Real err;
    // err is at most 2^-bits (0 for an exact root)
    Bits certified_bits = 0;
    bool exact = false;
};

// Three roots in ascending order, certified by exact sign checks. Throws a
// domain error unless f has three distinct real roots.
std::array<IsolatedRoot, 3> isolate_real_roots(const MonicCubic& f);

// err <= 2^-target_bits, value inside [lo, hi].
IsolatedRoot refine_root(const MonicCubic& f, const IsolatedRoot& r, const PrecisionPolicy& pol = {});

std::array<IsolatedRoot, 3> refined_roots(const MonicCubic& f, const PrecisionPolicy& pol = {});

// Bits needed beyond the target to make floating evaluation of f near its
// roots trustworthy; depends on the coefficient sizes.
Bits working_bits_for(const MonicCubic& f, Bits target);

struct AsymptoticRoots {
    std::array<Real, 3> values;       // near b/a, near d/c (or 0), the large root
    std::array<std::string, 3> tags;  // order of magnitude of the error term
    bool reliable = false;            // |t| above the heuristic threshold
};

using FamilyParams = std::variant<OneUnitParams, TwoUnitParams>;

// One Newton step from each rational base point, and the trace for the rest.
AsymptoticRoots asymptotic_roots(const FamilyParams& params, const Integer& t);
// 16 (|a| + |b| + |c| + |d|)^3 with c = 1, d = 0 for the one-unit family
Integer asymptotic_threshold(const FamilyParams& params);

// Hypotheses of the Newton approximation argument at base point alpha.
struct NewtonHypotheses {
    bool derivative_nonzero = false;  // h'(α) != 0
    bool step_small = false;          // 2 |h(α)/h'(α)| <= 1
    bool contraction = false;         // 2 sup_{|λ|<=1} |h''(α+λ)| / |h'(α)| * |h(α)/h'(α)| < 1
    Rational step;                    // h(α)/h'(α)
    bool all() const { return derivative_nonzero && step_small && contraction; }
};

NewtonHypotheses newton_hypotheses(const MonicCubic& h, const Rational& alpha);

}  // namespace cubic
