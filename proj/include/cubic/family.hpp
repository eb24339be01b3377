#pragma once

// Families of monic cubics with prescribed units a θ - b.

#include "cubic/poly.hpp"

#include <string>
#include <utility>
#include <vector>

namespace cubic {

struct OneUnitParams {
    Integer a, b;
    int eps1 = 1, eps2 = 1;
};

struct TwoUnitParams {
    Integer a, b, c, d;
    int eps1 = 1, eps2 = 1;
    int eps = 1;  // ad - bc
};

enum class Recipe { OneB, B2B1, OneMinusB, SquareCube };

// a^3 = 1 mod b and b^3 = 1 mod a (modulus 0 means equality, ±1 is vacuous).
bool is_mutually_cubic_pair(const Integer& a, const Integer& b);

bool is_admissible_one_unit(const OneUnitParams& p);
MonicCubic build_one_unit(const OneUnitParams& p, const Integer& t);

bool is_admissible_two_unit(const TwoUnitParams& p);
MonicCubic build_two_unit(const TwoUnitParams& p, const Integer& t);

// h + t (ax - b)(cx - d)
MonicCubic extend_seed(const MonicCubic& h, const Integer& a, const Integer& b, const Integer& c,
                       const Integer& d, const Integer& t);

std::pair<Integer, Integer> recipe_pairs(Recipe kind, const Integer& param);
Recipe parse_recipe(const std::string& name);

// x^3 - t x^2 - (t+3) x - 1, with units θ and θ + 1.
MonicCubic simplest_cubic(const Integer& t);
// x^3 + t (2^n x - 1)(2^(n-1) x - 1), n >= 1.
MonicCubic decreasing_order_cubic(const Integer& t, unsigned n);

// A unit a θ - b given by its parameters.
struct UnitParam {
    Integer a, b;
    friend bool operator==(const UnitParam&, const UnitParam&) = default;
};

// Anything the CLI can scan over t.
struct FamilyDescriptor {
    enum class Kind { OneUnit, TwoUnit, Seed };
    Kind kind = Kind::OneUnit;
    OneUnitParams one;
    TwoUnitParams two;
    // seed: h + t (ax - b)(cx - d) with explicitly listed unit candidates
    MonicCubic seed;
    Integer sa, sb, sc, sd;
    std::vector<UnitParam> seed_units;

    MonicCubic build(const Integer& t) const;
    // The two designed units, in a fixed order.
    std::vector<UnitParam> units() const;
    std::string kind_name() const;
};

FamilyDescriptor simplest_family();

}  // namespace cubic
