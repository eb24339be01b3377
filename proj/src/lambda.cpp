#include "cubic/lambda.hpp"

#include "cubic/error.hpp"
#include "cubic/family.hpp"

#include <algorithm>
#include <numeric>

namespace cubic {

ProjectiveRatio ProjectiveRatio::infinity() { return ProjectiveRatio(); }

ProjectiveRatio ProjectiveRatio::exact(Rational q) {
    ProjectiveRatio r;
    r.kind_ = Kind::Exact;
    q.canonicalize();
    r.q_ = std::move(q);
    return r;
}

ProjectiveRatio ProjectiveRatio::approx(Real x) {
    if (!x.is_finite()) return infinity();
    ProjectiveRatio r;
    r.kind_ = Kind::Approx;
    r.x_ = std::move(x);
    return r;
}

const Rational& ProjectiveRatio::rational() const {
    if (kind_ != Kind::Exact) throw Error(ErrorCode::PreconditionViolation, "ratio is not exact");
    return q_;
}

Real ProjectiveRatio::real(Bits prec) const {
    switch (kind_) {
        case Kind::Infinity: throw Error(ErrorCode::DomainError, "infinite ratio has no real value");
        case Kind::Exact: return Real(q_, prec);
        case Kind::Approx: return x_;
    }
    return Real();
}

std::string ProjectiveRatio::to_string(int digits) const {
    if (kind_ == Kind::Infinity) return "inf";
    // enough bits for the requested digits
    Bits prec = static_cast<Bits>(digits * 3.33) + 16;
    return real(std::max(prec, kind_ == Kind::Approx ? x_.precision() : prec)).to_string(digits);
}

bool operator==(const ProjectiveRatio& a, const ProjectiveRatio& b) {
    if (a.kind_ != b.kind_) return false;
    switch (a.kind_) {
        case ProjectiveRatio::Kind::Infinity: return true;
        case ProjectiveRatio::Kind::Exact: return a.q_ == b.q_;
        case ProjectiveRatio::Kind::Approx: return a.x_ == b.x_;
    }
    return false;
}

namespace {
// (p s + q) / (r s + u) on P^1
ProjectiveRatio apply_mobius(const ProjectiveRatio& s, long p, long q, long r, long u) {
    if (s.is_infinity()) {
        if (r == 0) return ProjectiveRatio::infinity();
        Rational v(p, r);
        v.canonicalize();
        return ProjectiveRatio::exact(v);
    }
    if (s.kind() == ProjectiveRatio::Kind::Exact) {
        const Rational& x = s.rational();
        Rational den = Rational(r) * x + Rational(u);
        if (den == 0) return ProjectiveRatio::infinity();
        return ProjectiveRatio::exact((Rational(p) * x + Rational(q)) / den);
    }
    Real x = s.real();
    Real den = Real(r) * x + Real(u);
    if (den.is_zero()) return ProjectiveRatio::infinity();
    return ProjectiveRatio::approx((Real(p) * x + Real(q)) / den);
}
}  // namespace

ProjectiveRatio mobius_T(const ProjectiveRatio& s) { return apply_mobius(s, 3, -1, 1, 0); }
ProjectiveRatio mobius_R(const ProjectiveRatio& s) { return apply_mobius(s, 5, -3, 2, -1); }

McrPair::McrPair(Integer a_, Integer b_) : a(std::move(a_)), b(std::move(b_)) {
    if (!is_mutually_cubic_pair(a, b))
        throw Error(ErrorCode::InvalidInput, "(" + a.get_str() + ", " + b.get_str() + ") is not mutually cubic");
}

McrPair tilde_T(const McrPair& p) {
    Integer num = 1 - p.a * p.a * p.a;
    if (num == 0) throw Error(ErrorCode::InvalidInput, "tilde_T: a^3 = 1 gives a zero first entry");
    if (p.b == 0 || !mpz_divisible_p(num.get_mpz_t(), p.b.get_mpz_t()))
        throw Error(ErrorCode::InternalInconsistency, "tilde_T: b does not divide 1 - a^3");
    Integer q;
    mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), p.b.get_mpz_t());
    return McrPair(q, p.a);
}

McrPair tilde_D(const McrPair& p) {
    if (p.a == 1) throw Error(ErrorCode::InvalidInput, "tilde_D needs a != 1");
    Integer m = p.a * p.a + p.a + 1;
    if (p.b == 0 || !mpz_divisible_p(m.get_mpz_t(), p.b.get_mpz_t()))
        throw Error(ErrorCode::InvalidInput, "tilde_D needs b | a^2 + a + 1");
    return McrPair(p.a, (1 - p.a) * p.b);
}

Orbit orbit(MobiusMap map, const ProjectiveRatio& s0, std::size_t n, std::size_t cap_bits) {
    Orbit out;
    out.truncation_error = Real(0);
    out.values.reserve(n + 1);
    out.values.push_back(s0);
    Bits prec = std::max<Bits>(working_precision(), 256);
    for (std::size_t i = 0; i < n; ++i) {
        ProjectiveRatio next = map == MobiusMap::T ? mobius_T(out.values.back()) : mobius_R(out.values.back());
        if (next.kind() == ProjectiveRatio::Kind::Exact) {
            const Rational& q = next.rational();
            if (bit_length(q.get_num()) > cap_bits || bit_length(q.get_den()) > cap_bits) {
                Real x(q, prec);
                Real err = abs(x - Real(q, prec + 64));
                out.truncation_error += err;
                next = ProjectiveRatio::approx(x);
            }
        } else if (next.kind() == ProjectiveRatio::Kind::Approx) {
            // one rounding per floating step
            out.truncation_error += ldexp(upper_abs(next.real()), -static_cast<long>(next.real().precision()) + 1);
        }
        out.values.push_back(std::move(next));
    }
    return out;
}

const char* to_string(RatioEstimate::Kind k) {
    switch (k) {
        case RatioEstimate::Kind::Finite: return "finite";
        case RatioEstimate::Kind::Zero: return "zero";
        case RatioEstimate::Kind::Infinity: return "infinity";
        case RatioEstimate::Kind::Degenerate: return "degenerate-regular-triangle";
    }
    return "?";
}

RatioEstimate ratio_estimate(const std::vector<McrPair>& seq, const std::vector<Integer>& t_values) {
    if (seq.empty()) throw Error(ErrorCode::InvalidInput, "ratio_estimate of an empty sequence");
    if (t_values.size() != seq.size()) throw Error(ErrorCode::InvalidInput, "t_values and sequence differ in length");
    std::vector<std::size_t> order(seq.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return abs(t_values[i]) < abs(t_values[j]);
    });

    RatioEstimate est;
    const McrPair& last = seq[order.back()];
    bool small_a = abs(last.a) <= 1, small_b = abs(last.b) <= 1;
    if (small_a && small_b) {
        est.kind = RatioEstimate::Kind::Degenerate;
        return est;
    }
    if (small_b) {
        est.kind = RatioEstimate::Kind::Infinity;
        est.in_range = true;
        return est;
    }
    if (small_a) {
        est.kind = RatioEstimate::Kind::Zero;
        est.in_range = true;
        return est;
    }

    est.kind = RatioEstimate::Kind::Finite;
    bool bounds_ok = true;
    std::vector<Real> ratios;
    for (std::size_t i : order) {
        Integer A = abs(seq[i].a), B = abs(seq[i].b);
        if (A <= 1 || B <= 1) continue;
        bounds_ok = bounds_ok && B <= A * A * A + 1 && A <= B * B * B + 1;
        ratios.push_back(log(Real(A)) / log(Real(B)));
    }
    for (std::size_t i = 1; i < ratios.size(); ++i) est.trend.push_back(ratios[i] - ratios[i - 1]);
    est.value = ratios.back();
    Integer A = abs(last.a), B = abs(last.b);
    Real lower = log(Real(A)) / log(Real(Integer(A * A * A + 1)));
    Real upper = log(Real(Integer(B * B * B + 1))) / log(Real(B));
    Real third = Real(1) / Real(3);
    est.in_range = bounds_ok && est.value >= min(third, lower) && est.value <= max(Real(3), upper);
    return est;
}

}  // namespace cubic
