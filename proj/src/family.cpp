#include "cubic/family.hpp"

#include "cubic/error.hpp"

namespace cubic {

bool is_mutually_cubic_pair(const Integer& a, const Integer& b) {
    return congruent(a * a * a, 1, b) && congruent(b * b * b, 1, a);
}

namespace {
void check_sign(int e, const char* name) {
    if (e != 1 && e != -1) throw Error(ErrorCode::InvalidParams, std::string(name) + " must be ±1");
}

Integer exact_div(const Integer& n, const Integer& d, const char* what) {
    if (d == 0 || !mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()))
        throw Error(ErrorCode::InternalInconsistency, std::string("inexact division in ") + what);
    Integer q;
    mpz_divexact(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    return q;
}

Integer exact_int(const Rational& q, const char* what) {
    if (q.get_den() != 1) throw Error(ErrorCode::InternalInconsistency, std::string("non-integral ") + what);
    return q.get_num();
}

void validate_two(const TwoUnitParams& p) {
    check_sign(p.eps1, "eps1");
    check_sign(p.eps2, "eps2");
    if (p.a == 0 || p.b == 0 || p.c == 0 || p.d == 0)
        throw Error(ErrorCode::InvalidParams, "a, b, c, d must be nonzero");
    Integer det = p.a * p.d - p.b * p.c;
    if (det != 1 && det != -1) throw Error(ErrorCode::InvalidParams, "ad - bc must be ±1");
    if (det != p.eps) throw Error(ErrorCode::InvalidParams, "eps does not match ad - bc");
}
}  // namespace

bool is_admissible_one_unit(const OneUnitParams& p) {
    check_sign(p.eps1, "eps1");
    check_sign(p.eps2, "eps2");
    if (p.a == 0 || p.b == 0) throw Error(ErrorCode::InvalidParams, "a and b must be nonzero");
    if (gcd(p.a, p.b) != 1) throw Error(ErrorCode::InvalidParams, "gcd(a, b) must be 1");
    return congruent(p.a * p.a * p.a, p.eps1 * p.eps2, p.b) && congruent(p.b * p.b * p.b, p.eps1, p.a);
}

MonicCubic build_one_unit(const OneUnitParams& p, const Integer& t) {
    if (!is_admissible_one_unit(p)) throw Error(ErrorCode::InvalidParams, "inadmissible one-unit parameters");
    const Integer& a = p.a;
    const Integer& b = p.b;
    Integer e1 = p.eps1, e2 = p.eps2;
    Integer k = a * a * a - e1 * e2;
    MonicCubic f(exact_div(e1 * k * k - b * b * b, a * b * b, "x^2 coefficient") + t * a,
                 -exact_div(e1 * a * k, b, "x coefficient") - t * b, e2);
    if (eval_scaled(f, b, a) != e1 || f.p0 != e2)
        throw Error(ErrorCode::InternalInconsistency, "one-unit postcondition failed");
    return f;
}

bool is_admissible_two_unit(const TwoUnitParams& p) {
    validate_two(p);
    return congruent(p.b * p.b * p.b, p.eps1, p.a) && congruent(p.d * p.d * p.d, p.eps2, p.c);
}

MonicCubic build_two_unit(const TwoUnitParams& p, const Integer& t) {
    if (!is_admissible_two_unit(p)) throw Error(ErrorCode::InvalidParams, "inadmissible two-unit parameters");
    const Integer &a = p.a, &b = p.b, &c = p.c, &d = p.d;
    Integer e = p.eps, e1 = p.eps1, e2 = p.eps2;
    Integer R = e * e1 * d * d * d - e * e2 * b * b * b + t * b * d;
    // a^3 f(b/a) = e1 and c^3 f(d/c) = e2 are linear in (P, Q)
    Rational U(Integer(e1 - b * b * b - R * a * a * a), Integer(a * b));
    Rational V(Integer(e2 - d * d * d - R * c * c * c), Integer(c * d));
    U.canonicalize();
    V.canonicalize();
    Rational det(Integer(b * c - a * d));
    Rational P = (U * Rational(c) - V * Rational(a)) / det;
    Rational Q = (Rational(b) * V - Rational(d) * U) / det;
    P.canonicalize();
    Q.canonicalize();
    MonicCubic f(exact_int(P, "x^2 coefficient"), exact_int(Q, "x coefficient"), R);
    if (eval_scaled(f, b, a) != e1 || eval_scaled(f, d, c) != e2)
        throw Error(ErrorCode::InternalInconsistency, "two-unit postcondition failed");
    return f;
}

MonicCubic extend_seed(const MonicCubic& h, const Integer& a, const Integer& b, const Integer& c,
                       const Integer& d, const Integer& t) {
    if (gcd(a, b) != 1 || gcd(c, d) != 1)
        throw Error(ErrorCode::PreconditionViolation, "extend_seed needs gcd(a,b) = gcd(c,d) = 1");
    if (a * d - b * c == 0) throw Error(ErrorCode::PreconditionViolation, "extend_seed needs ad - bc != 0");
    // (ax - b)(cx - d) = ac x^2 - (ad + bc) x + bd
    return MonicCubic(h.p2 + t * a * c, h.p1 - t * (a * d + b * c), h.p0 + t * b * d);
}

std::pair<Integer, Integer> recipe_pairs(Recipe kind, const Integer& param) {
    const Integer& b = param;
    std::pair<Integer, Integer> out;
    switch (kind) {
        case Recipe::OneB:
            out = {1, b};
            break;
        case Recipe::B2B1:
            if (b == 0) throw Error(ErrorCode::InvalidParams, "b2b1 recipe needs b != 0");
            out = {b * b + b + 1, b};
            break;
        case Recipe::OneMinusB:
            if (b == 0 || b == 1) throw Error(ErrorCode::InvalidParams, "one_minus_b recipe needs b not in {0,1}");
            out = {1 - b, b};
            break;
        case Recipe::SquareCube:
            if (b == 0) throw Error(ErrorCode::InvalidParams, "square_cube recipe needs r != 0");
            out = {b * b, b * b * b + 1};
            break;
    }
    if (!is_mutually_cubic_pair(out.first, out.second))
        throw Error(ErrorCode::InternalInconsistency, "recipe produced a non mutually cubic pair");
    return out;
}

Recipe parse_recipe(const std::string& name) {
    if (name == "one_b") return Recipe::OneB;
    if (name == "b2b1") return Recipe::B2B1;
    if (name == "one_minus_b") return Recipe::OneMinusB;
    if (name == "square_cube") return Recipe::SquareCube;
    throw Error(ErrorCode::InvalidInput, "unknown recipe '" + name + "'");
}

MonicCubic simplest_cubic(const Integer& t) {
    return extend_seed(MonicCubic(0, -3, -1), -1, 0, 1, -1, t);
}

MonicCubic decreasing_order_cubic(const Integer& t, unsigned n) {
    if (n == 0) throw Error(ErrorCode::PreconditionViolation, "decreasing order index must be >= 1");
    Integer hi = ipow(2, n), lo = ipow(2, n - 1);
    return extend_seed(MonicCubic(0, 0, 0), hi, 1, lo, 1, t);
}

MonicCubic FamilyDescriptor::build(const Integer& t) const {
    switch (kind) {
        case Kind::OneUnit: return build_one_unit(one, t);
        case Kind::TwoUnit: return build_two_unit(two, t);
        case Kind::Seed: return extend_seed(seed, sa, sb, sc, sd, t);
    }
    throw Error(ErrorCode::InternalInconsistency, "unknown family kind");
}

std::vector<UnitParam> FamilyDescriptor::units() const {
    switch (kind) {
        case Kind::OneUnit: return {{1, 0}, {one.a, one.b}};
        case Kind::TwoUnit: return {{two.a, two.b}, {two.c, two.d}};
        case Kind::Seed: return seed_units;
    }
    return {};
}

std::string FamilyDescriptor::kind_name() const {
    switch (kind) {
        case Kind::OneUnit: return "one_unit";
        case Kind::TwoUnit: return "two_unit";
        case Kind::Seed: return "seed";
    }
    return "?";
}

FamilyDescriptor simplest_family() {
    // x^3 - 3x - 1 + t (-x)(x + 1)
    FamilyDescriptor d;
    d.kind = FamilyDescriptor::Kind::Seed;
    d.seed = MonicCubic(0, -3, -1);
    d.sa = -1;
    d.sb = 0;
    d.sc = 1;
    d.sd = -1;
    d.seed_units = {{1, 0}, {1, -1}};
    return d;
}

}  // namespace cubic
