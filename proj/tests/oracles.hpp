#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library routines it is used to check.

#include "cubic/family.hpp"
#include "cubic/numeric.hpp"
#include "cubic/poly.hpp"

#include <array>
#include <optional>
#include <random>
#include <vector>

namespace oracle {

using cubic::Bits;
using cubic::Integer;
using cubic::MonicCubic;
using cubic::Rational;
using cubic::Real;

// Fraction-free Gaussian elimination.
inline Integer bareiss_det(std::vector<std::vector<Integer>> m) {
    const std::size_t n = m.size();
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && m[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer v = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                m[i][j] = v;
            }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

// Monic cubic: disc = -Res(f, f') from the 5x5 Sylvester matrix.
inline Integer resultant_discriminant(const MonicCubic& f) {
    Integer c3 = 1, c2 = f.p2, c1 = f.p1, c0 = f.p0;
    Integer d2 = 3, d1 = 2 * f.p2, d0 = f.p1;
    std::vector<std::vector<Integer>> s = {
        {c3, c2, c1, c0, 0},
        {0, c3, c2, c1, c0},
        {d2, d1, d0, 0, 0},
        {0, d2, d1, d0, 0},
        {0, 0, d2, d1, d0},
    };
    return -bareiss_det(s);
}

inline Rational eval(const MonicCubic& f, Rational x) {
    x.canonicalize();  // callers may pass b/a with a < 0
    Rational r = x * x * x + Rational(f.p2) * x * x + Rational(f.p1) * x + Rational(f.p0);
    r.canonicalize();
    return r;
}

inline int sign_at(const MonicCubic& f, const Rational& x) { return sgn(eval(f, x)); }

// Trigonometric solution of a cubic with three real roots, ascending.
inline std::array<Real, 3> trig_roots(const MonicCubic& f, Bits prec) {
    cubic::PrecisionGuard g(prec);
    Rational p2(f.p2), p1(f.p1), p0(f.p0);
    Rational P = p1 - p2 * p2 / 3;
    Rational Q = 2 * p2 * p2 * p2 / 27 - p2 * p1 / 3 + p0;
    Real Pr(P, prec), Qr(Q, prec);
    Real m = cubic::sqrt(-Pr / Real(3));
    Real c = (Real(3) * Qr) / (Real(2) * Pr) * cubic::sqrt(Real(-3) / Pr);
    if (c > Real(1)) c = Real(1);
    if (c < Real(-1)) c = Real(-1);
    Real phi = cubic::atan2(cubic::sqrt(Real(1) - c * c), c);
    Real shift = Real(p2, prec) / Real(3);
    Real tpi = Real(2) * cubic::pi(prec) / Real(3);
    std::array<Real, 3> r;
    for (int k = 0; k < 3; ++k) r[k] = Real(2) * m * cubic::cos(phi / Real(3) - Real(k) * tpi) - shift;
    std::sort(r.begin(), r.end());
    return r;
}

inline Real root_product(const std::array<Real, 3>& r) {
    Real a = r[0] - r[1], b = r[0] - r[2], c = r[1] - r[2];
    return a * a * b * b * c * c;
}

inline bool divides_diff(const Integer& v, const Integer& target, const Integer& m) {
    Integer diff = v - target;
    if (m == 0) return diff == 0;
    return mpz_divisible_p(diff.get_mpz_t(), m.get_mpz_t()) != 0;
}

inline bool admissible_one(const Integer& a, const Integer& b, int e1, int e2) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return a != 0 && b != 0 && g == 1 && divides_diff(a * a * a, e1 * e2, b) && divides_diff(b * b * b, e1, a);
}

inline bool mutually_cubic(const Integer& a, const Integer& b) {
    return divides_diff(a * a * a, 1, b) && divides_diff(b * b * b, 1, a);
}

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(unsigned long seed) : gen(seed) {}
    long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen); }
    Integer big(long lo, long hi) { return Integer(std::to_string(uniform(lo, hi))); }
    int sign() { return uniform(0, 1) ? 1 : -1; }
};

// Admissible one-unit parameters with |a|, |b| <= bound, from a pool of
// constructions filtered by the direct congruence test above.
inline std::optional<cubic::OneUnitParams> random_one_unit(Rng& rng, long bound) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        Integer a, b;
        switch (rng.uniform(0, 4)) {
            case 0: a = 1; b = rng.big(2, bound); break;
            case 1: {
                long r = rng.uniform(1, 999);
                b = r;
                a = Integer(r) * r + r + 1;
                break;
            }
            case 2: {
                b = rng.big(2, bound - 1);
                a = 1 - b;
                break;
            }
            case 3: {
                long r = rng.uniform(1, 99);
                a = Integer(r) * r;
                b = Integer(r) * r * r + 1;
                break;
            }
            default: {
                // one T~ step applied to (1, b) or (b^2+b+1, b)
                long r = rng.uniform(2, 99);
                Integer x = Integer(r) * r + r + 1, y = r;
                Integer na = (1 - x * x * x);
                mpz_divexact(na.get_mpz_t(), na.get_mpz_t(), y.get_mpz_t());
                a = na;
                b = x;
                break;
            }
        }
        if (rng.uniform(0, 1)) a = -a;
        if (rng.uniform(0, 1)) b = -b;
        if (abs(a) > bound || abs(b) > bound) continue;
        int e1 = rng.sign(), e2 = rng.sign();
        for (int k = 0; k < 4; ++k) {
            int s1 = (k & 1) ? -e1 : e1, s2 = (k & 2) ? -e2 : e2;
            if (admissible_one(a, b, s1, s2)) return cubic::OneUnitParams{a, b, s1, s2};
        }
    }
    return std::nullopt;
}

// (a, b, c, d) with ad - bc = ±1, b^3 = ±1 mod a, d^3 = ±1 mod c.
inline std::optional<cubic::TwoUnitParams> random_two_unit(Rng& rng, long bound) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        Integer a = rng.big(2, std::min<long>(bound, 2000)), b;
        // b with b^3 = ±1 mod a
        long start = rng.uniform(1, 1000000);
        bool found = false;
        for (long k = 0; k < 4000 && !found; ++k) {
            b = start + k;
            Integer g;
            mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
            if (g != 1) continue;
            found = divides_diff(b * b * b, 1, a) || divides_diff(b * b * b, -1, a);
        }
        if (!found) continue;
        b = b % a;
        if (b == 0) continue;
        // ad - bc = 1 through the extended gcd, then walk the solution line
        Integer g, s, u;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), u.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        Integer d0 = s, c0 = -u;  // a s + b u = 1 -> a d0 - b c0 = 1
        for (long k = -200; k <= 200; ++k) {
            Integer c = c0 + k * a, d = d0 + k * b;
            if (c == 0 || d == 0 || abs(c) > bound || abs(d) > bound) continue;
            int e2 = divides_diff(d * d * d, 1, c) ? 1 : divides_diff(d * d * d, -1, c) ? -1 : 0;
            if (!e2) continue;
            int e1 = divides_diff(b * b * b, 1, a) ? 1 : -1;
            cubic::TwoUnitParams p{a, b, c, d, e1, e2, 1};
            if (rng.uniform(0, 1)) {
                // swap the two units: determinant flips
                p = {c, d, a, b, e2, e1, -1};
            }
            return p;
        }
    }
    return std::nullopt;
}

// Random totally real cubic: prod (x - r_i) + delta with well separated r_i.
inline MonicCubic random_totally_real(Rng& rng, long bound) {
    long r1 = rng.uniform(-bound, bound);
    long r2 = r1 + rng.uniform(3, bound);
    long r3 = r2 + rng.uniform(3, bound);
    Integer R1 = r1, R2 = r2, R3 = r3;
    Integer delta = rng.sign();
    return MonicCubic(-(R1 + R2 + R3), R1 * R2 + R1 * R3 + R2 * R3, -R1 * R2 * R3 + delta);
}

}  // namespace oracle
