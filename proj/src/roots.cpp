#include "cubic/roots.hpp"

#include "cubic/error.hpp"

#include <algorithm>

namespace cubic {

namespace {

// sign of f at the rational q (denominators are kept positive by GMP)
int sign_at(const MonicCubic& f, const Rational& q) {
    return sgn(eval_scaled(f, q.get_num(), q.get_den()));
}

Real half_width(const Rational& lo, const Rational& hi) {
    Rational w = (hi - lo) / 2;
    Real r(64, 0);
    mpfr_set_q(r.raw(), w.get_mpq_t(), MPFR_RNDU);
    return r;
}

Bits bits_of(const Real& err) {
    if (err.is_zero()) return MPFR_PREC_MAX;
    // err <= 2^(exponent), so certified to -exponent bits
    return static_cast<Bits>(std::max<long>(0, -err.exponent()));
}

IsolatedRoot make_root(const Rational& lo, const Rational& hi, Bits prec) {
    IsolatedRoot r;
    r.lo = lo;
    r.hi = hi;
    Rational mid = (lo + hi) / 2;
    mid.canonicalize();
    r.value = Real(mid, prec);
    r.err = half_width(lo, hi);
    r.certified_bits = bits_of(r.err);
    return r;
}

IsolatedRoot make_exact(const Rational& q, Bits prec) {
    IsolatedRoot r;
    r.lo = q;
    r.hi = q;
    r.value = Real(q, prec);
    r.err = Real(64, 0);
    r.certified_bits = MPFR_PREC_MAX;
    r.exact = true;
    return r;
}

Integer isqrt(const Integer& v) {
    Integer r;
    mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
    return r;
}

}  // namespace

Bits working_bits_for(const MonicCubic& f, Bits target) {
    return target + 64 + 2 * static_cast<Bits>(bit_length(root_bound(f)));
}

std::array<IsolatedRoot, 3> isolate_real_roots(const MonicCubic& f) {
    if (discriminant(f) <= 0) throw Error(ErrorCode::DomainError, "cubic does not have three distinct real roots");
    Integer dp = f.p2 * f.p2 - 3 * f.p1;  // > 0 whenever the discriminant is
    Integer B = root_bound(f);
    // Separators near the critical points (-p2 ∓ sqrt(dp))/3, refined until
    // f(s1) > 0 > f(s2).
    Rational s1, s2;
    for (unsigned long k = 4;; k *= 2) {
        Integer scale = ipow(2, k);
        Integer S = isqrt(dp * scale * scale);
        s1 = Rational(Integer(-f.p2 * scale - S), Integer(3 * scale));
        s2 = Rational(Integer(-f.p2 * scale + S), Integer(3 * scale));
        s1.canonicalize();
        s2.canonicalize();
        if (s1 < s2 && sign_at(f, s1) > 0 && sign_at(f, s2) < 0) break;
        if (k > (1ul << 24)) throw Error(ErrorCode::InternalInconsistency, "separator search did not terminate");
    }
    Bits prec = std::max<Bits>(working_precision(), 64);
    std::array<Rational, 4> ends = {Rational(-B), s1, s2, Rational(B)};
    std::array<IsolatedRoot, 3> out;
    for (int i = 0; i < 3; ++i) {
        // separators can in principle hit a root exactly only if f has a
        // rational root; the sign tests above exclude that for s1, s2
        out[i] = make_root(ends[i], ends[i + 1], prec);
    }
    return out;
}

IsolatedRoot refine_root(const MonicCubic& f, const IsolatedRoot& r, const PrecisionPolicy& pol) {
    if (pol.target_bits > pol.max_bits) throw Error(ErrorCode::PreconditionViolation, "target_bits exceeds max_bits");
    if (r.exact) return r;
    const Bits target = pol.target_bits;
    Bits w = working_bits_for(f, target);
    if (r.certified_bits >= target && r.value.precision() >= w) return r;
    if (w > pol.max_bits) throw Error(ErrorCode::PrecisionExhausted, "working precision exceeds cap");

    Rational lo = r.lo, hi = r.hi;
    int slo = sign_at(f, lo), shi = sign_at(f, hi);
    if (slo == 0) return make_exact(lo, w);
    if (shi == 0) return make_exact(hi, w);
    if (slo == shi) throw Error(ErrorCode::PreconditionViolation, "interval does not bracket a root");

    const Rational delta(Integer(1), ipow(2, static_cast<unsigned long>(target + 1)));
    for (;;) {
        if (hi - lo <= 2 * delta) return make_root(lo, hi, w);

        PrecisionGuard guard(w);
        Rational mid = (lo + hi) / 2;
        mid.canonicalize();
        Real x(mid, w);
        const Real stop = pow2(-static_cast<long>(target) - 4, w);
        const Real rlo(lo, w), rhi(hi, w);
        bool converged = false;
        for (int it = 0; it < 200; ++it) {
            Real d = f.eval_derivative(x);
            if (d.is_zero()) break;
            Real dx = f.eval(x) / d;
            x -= dx;
            if (x < rlo || x > rhi) break;
            if (abs(dx) <= stop) {
                converged = true;
                break;
            }
        }

        if (converged) {
            Rational xq = x.to_rational();
            // rational roots of a monic integer cubic are integers
            Rational near(to_integer_floor(x + Real(0.5)));
            if (near >= lo && near <= hi && sign_at(f, near) == 0) return make_exact(near, w);
            Rational L = std::max(lo, Rational(xq - delta));
            Rational H = std::min(hi, Rational(xq + delta));
            int sL = sign_at(f, L), sH = sign_at(f, H);
            if (sL == 0) return make_exact(L, w);
            if (sH == 0) return make_exact(H, w);
            if (sL == slo && sH == shi) return make_root(L, H, w);
            // Newton landed more than delta away: the evaluation was too coarse
            w *= 2;
            if (w > pol.max_bits) throw Error(ErrorCode::PrecisionExhausted, "root certification needs more than max_bits");
            continue;
        }

        // Newton not yet in its basin: shrink by exact bisection
        for (int k = 0; k < 8; ++k) {
            Rational m = (lo + hi) / 2;
            m.canonicalize();
            int sm = sign_at(f, m);
            if (sm == 0) return make_exact(m, w);
            if (sm == slo)
                lo = m;
            else
                hi = m;
        }
    }
}

std::array<IsolatedRoot, 3> refined_roots(const MonicCubic& f, const PrecisionPolicy& pol) {
    auto roots = isolate_real_roots(f);
    for (auto& r : roots) r = refine_root(f, r, pol);
    return roots;
}

Integer asymptotic_threshold(const FamilyParams& params) {
    Integer s;
    if (auto* one = std::get_if<OneUnitParams>(&params))
        s = abs(one->a) + abs(one->b) + 1;
    else {
        const auto& two = std::get<TwoUnitParams>(params);
        s = abs(two.a) + abs(two.b) + abs(two.c) + abs(two.d);
    }
    return 16 * s * s * s;
}

namespace {
Rational newton_point(const MonicCubic& h, const Rational& alpha) {
    Rational d = Rational(3) * alpha * alpha + Rational(Integer(2 * h.p2)) * alpha + Rational(h.p1);
    if (d == 0) throw Error(ErrorCode::DomainError, "h'(alpha) = 0");
    Rational r = alpha - h(alpha) / d;
    r.canonicalize();
    return r;
}
}  // namespace

AsymptoticRoots asymptotic_roots(const FamilyParams& params, const Integer& t) {
    AsymptoticRoots out;
    Rational alpha1, alpha2;
    MonicCubic h;
    if (auto* one = std::get_if<OneUnitParams>(&params)) {
        h = build_one_unit(*one, t);
        alpha1 = Rational(one->b, one->a);
        alpha2 = 0;
        out.tags = {"b/a+O(1/t)", "O(1/t)", "-at+O(1)"};
    } else {
        const auto& two = std::get<TwoUnitParams>(params);
        h = build_two_unit(two, t);
        alpha1 = Rational(two.b, two.a);
        alpha2 = Rational(two.d, two.c);
        out.tags = {"b/a+O(1/t)", "d/c+O(1/t)", "-act+O(1)"};
    }
    alpha1.canonicalize();
    alpha2.canonicalize();
    out.reliable = abs(t) >= asymptotic_threshold(params);
    Bits prec = working_precision();
    Rational r1 = newton_point(h, alpha1);
    Rational r2 = newton_point(h, alpha2);
    Rational r3 = Rational(Integer(-h.p2)) - r1 - r2;
    out.values = {Real(r1, prec), Real(r2, prec), Real(r3, prec)};
    return out;
}

NewtonHypotheses newton_hypotheses(const MonicCubic& h, const Rational& alpha) {
    NewtonHypotheses out;
    Rational d = Rational(3) * alpha * alpha + Rational(Integer(2 * h.p2)) * alpha + Rational(h.p1);
    out.derivative_nonzero = d != 0;
    if (!out.derivative_nonzero) return out;
    out.step = h(alpha) / d;
    out.step.canonicalize();
    Rational step_abs = abs(out.step);
    out.step_small = 2 * step_abs <= 1;
    // h'' = 6x + 2 p2 is linear, so its sup over |λ| <= 1 sits at an endpoint
    Rational at_lo = abs(Rational(6) * (alpha - 1) + Rational(Integer(2 * h.p2)));
    Rational at_hi = abs(Rational(6) * (alpha + 1) + Rational(Integer(2 * h.p2)));
    Rational sup = std::max(at_lo, at_hi);
    out.contraction = 2 * sup * step_abs < abs(d);
    return out;
}

}  // namespace cubic
