#pragma once

// Exact arithmetic on monic integer cubics x^3 + p2 x^2 + p1 x + p0.

#include "cubic/numeric.hpp"

#include <string>
#include <vector>

namespace cubic {

struct MonicCubic {
    Integer p2 = 0;
    Integer p1 = 0;
    Integer p0 = 0;

    MonicCubic() = default;
    MonicCubic(Integer c2, Integer c1, Integer c0) : p2(std::move(c2)), p1(std::move(c1)), p0(std::move(c0)) {}

    Integer operator()(const Integer& x) const { return ((x + p2) * x + p1) * x + p0; }
    // Exact value at a rational point.
    Rational operator()(const Rational& x) const;
    Real eval(const Real& x) const;
    Real eval_derivative(const Real& x) const;

    friend bool operator==(const MonicCubic&, const MonicCubic&) = default;
    std::string to_string() const;  // e.g. "x^3 + 6x^2 - 5x + 1"
};

// Reduced fraction with positive denominator.
struct RationalPoint {
    Integer num;
    Integer den;

    RationalPoint(Integer n, Integer d);
    Rational value() const { return Rational(num, den); }
    friend bool operator==(const RationalPoint&, const RationalPoint&) = default;
};

// a^3 f(b/a) = b^3 + p2 b^2 a + p1 b a^2 + p0 a^3.
Integer eval_scaled(const MonicCubic& f, const Integer& b, const Integer& a);
// N(a θ - b) = -a^3 f(b/a).
Integer norm_linear_form(const MonicCubic& f, const Integer& a, const Integer& b);
Integer discriminant(const MonicCubic& f);
bool is_totally_real(const MonicCubic& f);
// Monic, so reducible over Q iff there is an integer root.
bool is_irreducible(const MonicCubic& f);
// Integer roots in ascending order, without multiplicity.
std::vector<Integer> integer_roots(const MonicCubic& f);
// Monic cubic whose roots are n times those of f.
MonicCubic scale_root(const MonicCubic& f, const Integer& n);

// Smallest power of two 2^k with every real root strictly inside (-2^k, 2^k).
Integer root_bound(const MonicCubic& f);

}  // namespace cubic
