#pragma once

// Ratio limits of mutually cubic root sequences: the maps T, R and the pair
// operations T~, D~.

#include "cubic/numeric.hpp"

#include <vector>

namespace cubic {

// A point of P^1(R): infinity, an exact rational, or a floating value.
class ProjectiveRatio {
public:
    enum class Kind { Infinity, Exact, Approx };

    static ProjectiveRatio infinity();
    static ProjectiveRatio exact(Rational q);
    static ProjectiveRatio approx(Real x);

    Kind kind() const { return kind_; }
    bool is_infinity() const { return kind_ == Kind::Infinity; }
    const Rational& rational() const;  // Exact only
    // Value as a Real (Infinity throws).
    Real real(Bits prec = working_precision()) const;
    std::string to_string(int digits = 50) const;

    friend bool operator==(const ProjectiveRatio& a, const ProjectiveRatio& b);

private:
    Kind kind_ = Kind::Infinity;
    Rational q_;
    Real x_;
};

ProjectiveRatio mobius_T(const ProjectiveRatio& s);  // 3 - 1/s
ProjectiveRatio mobius_R(const ProjectiveRatio& s);  // (5s - 3)/(2s - 1)

struct McrPair {
    Integer a, b;
    McrPair(Integer a_, Integer b_);  // throws unless mutually cubic
};

McrPair tilde_T(const McrPair& p);  // ((1 - a^3)/b, a)
McrPair tilde_D(const McrPair& p);  // (a, (1 - a) b), needs b | a^2 + a + 1

enum class MobiusMap { T, R };

struct Orbit {
    std::vector<ProjectiveRatio> values;
    // Accumulated rounding from steps that left exact arithmetic (0 if none).
    Real truncation_error;
};

// [s0, map(s0), ..., map^n(s0)]; exact while numerator and denominator stay
// below cap_bits, floating afterwards.
Orbit orbit(MobiusMap map, const ProjectiveRatio& s0, std::size_t n, std::size_t cap_bits = 1000000);

struct RatioEstimate {
    enum class Kind { Finite, Zero, Infinity, Degenerate };
    Kind kind = Kind::Degenerate;
    Real value;               // log|a|/log|b| at the largest sampled t (Finite only)
    std::vector<Real> trend;  // successive differences of the finite ratios
    bool in_range = false;    // consistent with the pair bounds |b| <= |a|^3 + 1, |a| <= |b|^3 + 1
};

const char* to_string(RatioEstimate::Kind k);

// Empirical log|a_t| / log|b_t| along a sequence of pairs sampled at t_values.
RatioEstimate ratio_estimate(const std::vector<McrPair>& seq, const std::vector<Integer>& t_values);

}  // namespace cubic
