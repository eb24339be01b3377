#pragma once

// Log embeddings of units, relative regulators and Cusick certification.

#include "cubic/family.hpp"
#include "cubic/roots.hpp"

#include <array>
#include <string>
#include <vector>

namespace cubic {

// A point of R^3_0 with a common absolute error bound on each coordinate.
struct LogVector {
    std::array<Real, 3> x;
    Real err;

    LogVector();
    LogVector(Real x1, Real x2, Real x3, Real e);

    Real sum() const { return x[0] + x[1] + x[2]; }
    Bits precision() const { return x[0].precision(); }
    friend LogVector operator+(const LogVector& a, const LogVector& b);
    friend LogVector operator-(const LogVector& a, const LogVector& b);
    friend LogVector operator-(const LogVector& a);
    friend LogVector operator*(const Integer& k, const LogVector& v);
    friend LogVector operator*(const Real& k, const LogVector& v);
};

struct CubicOrderData {
    MonicCubic f;
    std::array<IsolatedRoot, 3> roots;  // ascending
    Integer disc;
    std::vector<UnitParam> units;         // verified: |N(aθ - b)| = 1
    std::vector<std::string> dropped;     // why candidates were rejected
    PrecisionPolicy policy;
};

// Drops candidates that fail the norm test (recorded in `dropped`).
CubicOrderData build_order(const MonicCubic& f, const std::vector<UnitParam>& candidates,
                           const PrecisionPolicy& pol = {});

// (log|a θ_i - b|)_i; raises the root precision (up to the policy cap) until
// every |a θ_i - b| is known to 64 relative bits.
LogVector log_embed(const CubicOrderData& order, const Integer& a, const Integer& b);

// A value with an absolute error bound.
struct Bounded {
    Real value;
    Real err;
};

// The three 2x2 minors, deleting coordinate 3, 2, 1 respectively.
std::array<Real, 3> regulator_minors(const LogVector& v1, const LogVector& v2);

// |det| of the first two coordinates. Throws dependent-units when the value
// does not exceed its error bound, internal-inconsistency when the three
// minors disagree beyond what the coordinate sums allow.
Bounded relative_regulator(const LogVector& v1, const LogVector& v2);

struct RegulatorReport {
    Real rel_reg;
    Real rel_reg_err;
    Real cusick_ratio;  // rel_reg / log^2(disc/4)
    bool certified = false;
    int margin_bits = 32;
};

// certified iff the ratio is below 1/8 - 2^-margin_bits even after adding
// the error bound; false means inconclusive.
RegulatorReport certify_fundamental(const Bounded& rel_reg, const Integer& disc, int margin_bits = 32);
RegulatorReport certify_fundamental(const Real& rel_reg, const Integer& disc, int margin_bits = 32);

}  // namespace cubic
