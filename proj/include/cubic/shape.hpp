#pragma once

// Shapes of rank-2 lattices in R^3_0 as points of SL2(Z)\H.

#include "cubic/units.hpp"

#include <string>
#include <vector>

namespace cubic {

struct ShapeMove {
    enum class Kind { Translate, Invert, Negate };
    Kind kind;
    Integer k;  // Translate: τ -> τ - k
};

struct ShapePoint {
    Complex tau;
    bool reduced = false;
    std::vector<ShapeMove> word;
};

std::string to_string(const std::vector<ShapeMove>& word);

// Linear similarity R^3_0 -> C with (-1,0,1) -> 1 and (0,-1,1) -> 1 + ω.
Complex to_plane(const LogVector& v);

// Gauss reduction into |Re τ| <= 1/2, |τ| >= 1, with Re τ = 1/2 preferred to
// -1/2 and Re τ >= 0 on the unit circle.
ShapePoint reduce_fundamental(const Complex& tau);

// τ = to_plane(v2)/to_plane(v1); if Im τ < 0 the basis orientation is flipped
// (τ -> -τ), then reduced.
ShapePoint shape_from_units(const LogVector& v1, const LogVector& v2);
// The oriented quotient before reduction.
Complex oriented_quotient(const LogVector& v1, const LogVector& v2);

// Euclidean distance from a reduced point to the corner of the fundamental
// domain (e^{iπ/3}, identified with e^{2πi/3}).
Real corner_distance(const Complex& reduced_tau);

Complex limit_shape_z(const Real& a_tilde, const Real& b_tilde);
Complex curve_gamma(const Real& a_tilde, const Real& b_tilde, const Real& r);
// Largest admissible r: min(1/(3 ã), 1/b̃) with 1/0 read as infinity; 1 if both are 0.
Real curve_r_max(const Real& a_tilde, const Real& b_tilde);
Real cusick_angle_cos(const Real& alpha);

}  // namespace cubic
