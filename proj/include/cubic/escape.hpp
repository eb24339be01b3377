#pragma once

// Unimodular lattices of orders, heights, simplex sets and escape of mass.

#include "cubic/units.hpp"

#include <array>

namespace cubic {

// m[i][j] is coordinate i of basis vector j.
struct LatticeBasis3 {
    std::array<std::array<Real, 3>, 3> m;
    Real det_err;

    Bits precision() const { return m[0][0].precision(); }
    std::array<Real, 3> column(int j) const { return {m[0][j], m[1][j], m[2][j]}; }
};

Real determinant(const LatticeBasis3& B);

// Columns D^{-1/6} (θ_i^j)_i for j = 0, 1, 2. `reach` bounds max_i x_i - min_i x_i
// for the translates exp(x) L that will be taken; the roots are refined (within
// the order's max_bits) so that those translates keep the target precision.
LatticeBasis3 embed_order_lattice(const CubicOrderData& order, const Real& reach = Real(0));

// LLL-reduced basis of the same lattice (δ = 0.99).
LatticeBasis3 lll_reduce(const LatticeBasis3& B);

// Length of a shortest nonzero vector, by enumeration over a reduced basis.
Real shortest_vector_length(const LatticeBasis3& B);

// 1 / shortest nonzero vector length.
Real lattice_height(const LatticeBasis3& B);

// Rows scaled by e^{x_i}.
LatticeBasis3 exp_act(const LogVector& x, const LatticeBasis3& B);

struct SimplexSet {
    std::array<LogVector, 3> alpha;
};

// {v1, v2 - v1, -v2}
SimplexSet make_simplex(const LogVector& v1, const LogVector& v2);

struct HexDomain {
    std::array<std::array<Real, 3>, 6> vertices;  // in cyclic order
    Real ceiling;                                 // max coordinate over the vertices
    Real ceiling_err;
};

HexDomain hex_domain(const SimplexSet& phi);

// Area of the hexagon (shoelace, in R^3_0) and covolume of the lattice
// spanned by the simplex vectors.
Real hex_area(const HexDomain& hex);
Real simplex_covolume(const SimplexSet& phi);

// exp(r ⌈W_Φ⌉) <= R ht, false whenever the numeric bounds cannot decide.
bool check_tight(const SimplexSet& phi, const Real& ht, const Real& R, const Real& r);

// (2/3)(1 - r) + (1/3 - r)(ã + b̃)
Real tightness_exponent(const Real& a_tilde, const Real& b_tilde, const Real& r);

struct MassGrid {
    std::size_t level = 0;   // each of the 6 triangles split into level^2 pieces
    std::size_t points = 0;  // 6 level^2
};

MassGrid mass_grid_for(std::size_t samples);

// Fraction of a deterministic triangular grid of the hexagon conv(W_Φ) on
// which ht(exp(x) L) > H. Φ must lie in the log lattice of the order's
// verified units.
Real mass_above_height(const CubicOrderData& order, const SimplexSet& phi, const Real& H, std::size_t samples);

// All heights on the grid, in grid order (for profiles over several H).
std::vector<Real> grid_heights(const CubicOrderData& order, const SimplexSet& phi, std::size_t samples);

}  // namespace cubic
