#include "cubic/shape.hpp"

#include "cubic/error.hpp"

#include <algorithm>

namespace cubic {

std::string to_string(const std::vector<ShapeMove>& word) {
    std::string out;
    for (const auto& m : word) {
        if (!out.empty()) out += ' ';
        switch (m.kind) {
            case ShapeMove::Kind::Translate: out += "T" + m.k.get_str(); break;
            case ShapeMove::Kind::Invert: out += "S"; break;
            case ShapeMove::Kind::Negate: out += "N"; break;
        }
    }
    return out;
}

Complex to_plane(const LogVector& v) {
    Bits p = v.precision();
    PrecisionGuard guard(p);
    Real scale = max(max(upper_abs(v.x[0]), upper_abs(v.x[1])), upper_abs(v.x[2]));
    Real tol = 3 * v.err + ldexp(scale + Real(1), 8 - static_cast<long>(p));
    if (abs(v.sum()) > tol) throw Error(ErrorCode::DomainError, "vector is not on the trace-zero plane");
    // v = -x1 (-1,0,1) - x2 (0,-1,1), so the image is -x1 - x2 (1 + ω)
    Complex one_plus_omega = Complex(Real(1), Real(0)) + omega(p);
    return Complex(-v.x[0], Real(p, 0)) - v.x[1] * one_plus_omega;
}

namespace {
Bits precision_of(const Complex& z) { return std::max(z.re.precision(), z.im.precision()); }

Real tie_tolerance(Bits p) { return pow2(-static_cast<long>(p) / 2, p); }
}  // namespace

ShapePoint reduce_fundamental(const Complex& tau) {
    if (tau.im.sign() <= 0) throw Error(ErrorCode::PreconditionViolation, "reduce_fundamental needs Im τ > 0");
    Bits p = precision_of(tau);
    PrecisionGuard guard(p);
    const Real tol = tie_tolerance(p);
    ShapePoint out;
    out.tau = tau;
    Complex& z = out.tau;
    // terminates in a few steps; the cap only guards against NaN input
    for (int it = 0;; ++it) {
        if (it > 100000) throw Error(ErrorCode::PrecisionExhausted, "reduction did not terminate");
        Real k = round_nearest(z.re);
        if (!k.is_zero()) {
            Integer kk = to_integer_floor(k);
            z.re = z.re - kk;
            out.word.push_back({ShapeMove::Kind::Translate, kk});
        }
        if (norm(z) < Real(1) - tol) {
            z = Complex(Real(-1), Real(0)) / z;
            out.word.push_back({ShapeMove::Kind::Invert, 0});
            continue;
        }
        break;
    }
    Real half = Real(1) / Real(2);
    if (abs(z.re + half) <= tol) {
        z.re = z.re + Real(1);
        out.word.push_back({ShapeMove::Kind::Translate, -1});
    }
    if (abs(norm(z) - Real(1)) <= tol && z.re < -tol) {
        z = Complex(Real(-1), Real(0)) / z;
        out.word.push_back({ShapeMove::Kind::Invert, 0});
    }
    out.reduced = true;
    return out;
}

Complex oriented_quotient(const LogVector& v1, const LogVector& v2) {
    Complex z1 = to_plane(v1), z2 = to_plane(v2);
    Bits p = std::max(precision_of(z1), precision_of(z2));
    PrecisionGuard guard(p);
    Real floor1 = 3 * v1.err + pow2(-static_cast<long>(p) / 2, p);
    if (abs(z1) <= floor1) throw Error(ErrorCode::DependentUnits, "first unit has a vanishing log vector");
    Complex tau = z2 / z1;
    // relative size of Im τ against the propagated coordinate errors
    Real rel = (v1.err + v2.err) / abs(z1) * (Real(1) + abs(tau)) * 4 + tie_tolerance(p);
    if (abs(tau.im) <= rel) throw Error(ErrorCode::DependentUnits, "log vectors are numerically dependent");
    if (tau.im.sign() < 0) tau = -tau;
    return tau;
}

ShapePoint shape_from_units(const LogVector& v1, const LogVector& v2) {
    Complex z1 = to_plane(v1), z2 = to_plane(v2);
    Complex raw = z2 / z1;
    Complex tau = oriented_quotient(v1, v2);
    ShapePoint out = reduce_fundamental(tau);
    if (raw.im.sign() < 0) out.word.insert(out.word.begin(), ShapeMove{ShapeMove::Kind::Negate, 0});
    return out;
}

Real corner_distance(const Complex& tau) {
    Bits p = precision_of(tau);
    PrecisionGuard guard(p);
    Complex rho = omega(p);  // e^{2πi/3}
    Complex rho2(-rho.re, rho.im);  // e^{iπ/3}
    return min(abs(tau - rho), abs(tau - rho2));
}

Complex limit_shape_z(const Real& a, const Real& b) {
    Bits p = std::max(a.precision(), b.precision());
    PrecisionGuard guard(p);
    Complex w = omega(p);
    Complex num = Complex(Real(1) + 2 * a, Real(0)) + (Real(1) + b + 2 * a) * w;
    Complex den = Complex(Real(1) + a, Real(0)) + (a - b) * w;
    return num / den;
}

Real curve_r_max(const Real& a, const Real& b) {
    bool a0 = a.is_zero(), b0 = b.is_zero();
    if (a0 && b0) return Real(1);
    if (a0) return Real(1) / b;
    if (b0) return Real(1) / (3 * a);
    return min(Real(1) / (3 * a), Real(1) / b);
}

Complex curve_gamma(const Real& a, const Real& b, const Real& r) {
    if (a.sign() < 0 || b.sign() < 0) throw Error(ErrorCode::DomainError, "curve parameters must be non-negative");
    Real rmax = curve_r_max(a, b);
    Real slack = ldexp(rmax, 8 - static_cast<long>(rmax.precision()));
    if (r.sign() < 0 || r > rmax + slack) throw Error(ErrorCode::DomainError, "r outside [0, r_max]");
    return limit_shape_z(r * a, r * b);
}

Real cusick_angle_cos(const Real& alpha) {
    if (alpha.sign() < 0 || !(alpha < Real(1)))
        throw Error(ErrorCode::PreconditionViolation, "cusick_angle_cos needs 0 <= alpha < 1");
    Real a2 = alpha * alpha;
    return (Real(1) - 2 * alpha - 2 * a2) / (Real(2) + 2 * alpha + 2 * a2);
}

}  // namespace cubic
