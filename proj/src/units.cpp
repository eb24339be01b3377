#include "cubic/units.hpp"

#include "cubic/error.hpp"

#include <algorithm>

namespace cubic {

LogVector::LogVector() : x{Real(), Real(), Real()}, err(Real()) {}

LogVector::LogVector(Real x1, Real x2, Real x3, Real e)
    : x{std::move(x1), std::move(x2), std::move(x3)}, err(std::move(e)) {}

LogVector operator+(const LogVector& a, const LogVector& b) {
    return {a.x[0] + b.x[0], a.x[1] + b.x[1], a.x[2] + b.x[2], a.err + b.err};
}
LogVector operator-(const LogVector& a, const LogVector& b) {
    return {a.x[0] - b.x[0], a.x[1] - b.x[1], a.x[2] - b.x[2], a.err + b.err};
}
LogVector operator-(const LogVector& a) { return {-a.x[0], -a.x[1], -a.x[2], a.err}; }
LogVector operator*(const Integer& k, const LogVector& v) {
    Real ak(Integer(abs(k)), v.precision());
    return {v.x[0] * k, v.x[1] * k, v.x[2] * k, ak * v.err};
}
LogVector operator*(const Real& k, const LogVector& v) {
    return {k * v.x[0], k * v.x[1], k * v.x[2], abs(k) * v.err};
}

CubicOrderData build_order(const MonicCubic& f, const std::vector<UnitParam>& candidates,
                           const PrecisionPolicy& pol) {
    if (!is_totally_real(f)) throw Error(ErrorCode::DomainError, "order polynomial is not totally real: " + f.to_string());
    if (!is_irreducible(f)) throw Error(ErrorCode::DomainError, "order polynomial is reducible: " + f.to_string());
    CubicOrderData o;
    o.f = f;
    o.disc = discriminant(f);
    o.policy = pol;
    o.roots = refined_roots(f, pol);
    for (const auto& u : candidates) {
        std::string tag = "(" + u.a.get_str() + ", " + u.b.get_str() + ")";
        if (u.a == 0) {
            o.dropped.push_back(tag + ": a = 0");
            continue;
        }
        if (gcd(u.a, u.b) != 1) {
            o.dropped.push_back(tag + ": gcd(a, b) > 1");
            continue;
        }
        Integer n = norm_linear_form(f, u.a, u.b);
        if (n != 1 && n != -1) {
            o.dropped.push_back(tag + ": norm " + n.get_str());
            continue;
        }
        o.units.push_back(u);
    }
    return o;
}

namespace {
// 2^(1-p) |v|, an upper bound for one rounding of v at precision p
Real ulp_bound(const Real& v, Bits p) { return ldexp(upper_abs(v), 1 - static_cast<long>(p)); }
}  // namespace

LogVector log_embed(const CubicOrderData& order, const Integer& a, const Integer& b) {
    if (a == 0) throw Error(ErrorCode::PreconditionViolation, "log_embed with a = 0");
    Integer n = norm_linear_form(order.f, a, b);
    if (n != 1 && n != -1) throw Error(ErrorCode::InvalidInput, "log_embed of a non-unit");

    PrecisionPolicy pol = order.policy;
    std::array<IsolatedRoot, 3> roots = order.roots;
    const Real abs_a(Integer(abs(a)), 64);
    const Real abs_b(Integer(abs(b)), 64);
    for (;;) {
        bool ok = true;
        std::array<Real, 3> logs;
        Real err(64, 0);
        for (int i = 0; i < 3 && ok; ++i) {
            const IsolatedRoot& r = roots[i];
            Bits w = r.value.precision();
            PrecisionGuard guard(w);
            Real y = r.value * a - Real(b, w);
            // |a| err_θ plus two roundings
            Real ey = abs_a * r.err + ldexp(abs_a * upper_abs(r.value) + abs_b, 2 - static_cast<long>(w));
            if (y.is_zero()) {
                ok = false;
                break;
            }
            Real rel = ey / abs(y);
            // demand 64 relative bits; anything below 1/2 would still be a
            // valid bound, just a useless one
            if (rel > pow2(-64, 64)) {
                ok = false;
                break;
            }
            logs[i] = log(abs(y));
            Real e = 2 * rel + ulp_bound(logs[i], w);
            err = max(err, e);
        }
        if (ok) return LogVector(logs[0], logs[1], logs[2], err);
        if (pol.target_bits * 2 > pol.max_bits)
            throw Error(ErrorCode::PrecisionExhausted, "log embedding needs more than max_bits");
        pol.target_bits *= 2;
        for (auto& r : roots) r = refine_root(order.f, r, pol);
    }
}

std::array<Real, 3> regulator_minors(const LogVector& v1, const LogVector& v2) {
    const auto& x = v1.x;
    const auto& y = v2.x;
    return {x[0] * y[1] - x[1] * y[0], x[0] * y[2] - x[2] * y[0], x[1] * y[2] - x[2] * y[1]};
}

Bounded relative_regulator(const LogVector& v1, const LogVector& v2) {
    const auto& x = v1.x;
    const auto& y = v2.x;
    Bits w = std::max(v1.precision(), v2.precision());
    PrecisionGuard guard(w);
    auto m = regulator_minors(v1, v2);
    auto ax = [&](int i) { return upper_abs(x[i]); };
    auto ay = [&](int i) { return upper_abs(y[i]); };
    auto rounding = [&](int i, int j) { return ldexp(ax(i) * ay(j) + ax(j) * ay(i), 3 - static_cast<long>(w)); };
    auto prop = [&](int i, int j) {
        return (ax(i) + ax(j)) * v2.err + (ay(i) + ay(j)) * v1.err + 2 * v1.err * v2.err + rounding(i, j);
    };
    Real err = prop(0, 1);

    // with sums s_x, s_y the minors satisfy m13 = -m12 + x1 s_y - s_x y1 and
    // m23 = m12 + x2 s_y - s_x y2, exactly
    Real sx = upper_abs(v1.sum()), sy = upper_abs(v2.sum());
    Real slack13 = ax(0) * sy + sx * ay(0) + err + prop(0, 2) + ldexp(ax(0) * sy + sx * ay(0), 4 - static_cast<long>(w));
    Real slack23 = ax(1) * sy + sx * ay(1) + err + prop(1, 2) + ldexp(ax(1) * sy + sx * ay(1), 4 - static_cast<long>(w));
    Real a12 = abs(m[0]);
    if (abs(abs(m[1]) - a12) > slack13 || abs(abs(m[2]) - a12) > slack23)
        throw Error(ErrorCode::InternalInconsistency, "regulator minors disagree beyond their error bounds");
    if (a12 <= err) throw Error(ErrorCode::DependentUnits, "relative regulator is not distinguishable from 0");
    return {a12, err};
}

RegulatorReport certify_fundamental(const Bounded& rel_reg, const Integer& disc, int margin_bits) {
    if (disc <= 16) throw Error(ErrorCode::OutOfRegime, "Cusick bound needs disc > 16");
    if (rel_reg.value.sign() <= 0) throw Error(ErrorCode::PreconditionViolation, "relative regulator must be positive");
    Bits p = std::max<Bits>(rel_reg.value.precision(), 128);
    PrecisionGuard guard(p);
    Real L = log(Real(disc, p)) - log(Real(4));
    Real L2 = L * L;
    RegulatorReport rep;
    rep.rel_reg = rel_reg.value;
    rep.rel_reg_err = rel_reg.err;
    rep.cusick_ratio = rel_reg.value / L2;
    rep.margin_bits = margin_bits;
    // pessimistic ratio: numerator up, denominator down by a few ulps
    Real upper = (rel_reg.value + rel_reg.err) / (L2 * (Real(1) - pow2(8 - static_cast<long>(p))));
    upper = upper * (Real(1) + pow2(4 - static_cast<long>(p)));
    Real limit = Real(1) / Real(8) - pow2(-margin_bits);
    rep.certified = upper < limit;
    return rep;
}

RegulatorReport certify_fundamental(const Real& rel_reg, const Integer& disc, int margin_bits) {
    return certify_fundamental(Bounded{rel_reg, Real(rel_reg.precision(), 0)}, disc, margin_bits);
}

}  // namespace cubic
