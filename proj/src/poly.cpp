#include "cubic/poly.hpp"

#include "cubic/error.hpp"

#include <algorithm>

namespace cubic {

Rational MonicCubic::operator()(const Rational& x) const {
    Rational r = ((x + Rational(p2)) * x + Rational(p1)) * x + Rational(p0);
    r.canonicalize();
    return r;
}

Real MonicCubic::eval(const Real& x) const { return ((x + p2) * x + p1) * x + p0; }

Real MonicCubic::eval_derivative(const Real& x) const {
    // 3x^2 + 2 p2 x + p1
    return (Real(3) * x + Integer(2 * p2)) * x + p1;
}

namespace {
void append_term(std::string& out, const Integer& c, const char* mono) {
    if (c == 0) return;
    out += c < 0 ? " - " : " + ";
    Integer m = abs(c);
    if (m != 1 || mono[0] == '\0') out += m.get_str();
    out += mono;
}
}  // namespace

std::string MonicCubic::to_string() const {
    std::string out = "x^3";
    append_term(out, p2, "x^2");
    append_term(out, p1, "x");
    append_term(out, p0, "");
    return out;
}

RationalPoint::RationalPoint(Integer n, Integer d) : num(std::move(n)), den(std::move(d)) {
    if (den == 0) throw Error(ErrorCode::PreconditionViolation, "zero denominator");
    Integer g = gcd(num, den);
    if (den < 0) g = -g;
    num /= g;
    den /= g;
}

Integer eval_scaled(const MonicCubic& f, const Integer& b, const Integer& a) {
    if (a == 0) throw Error(ErrorCode::PreconditionViolation, "eval_scaled with a = 0");
    // Horner in the homogenised form
    return ((b + f.p2 * a) * b + f.p1 * a * a) * b + f.p0 * a * a * a;
}

Integer norm_linear_form(const MonicCubic& f, const Integer& a, const Integer& b) {
    if (a == 0) throw Error(ErrorCode::PreconditionViolation, "norm_linear_form with a = 0");
    return -eval_scaled(f, b, a);
}

Integer discriminant(const MonicCubic& f) {
    const Integer& p = f.p2;
    const Integer& q = f.p1;
    const Integer& r = f.p0;
    return 18 * p * q * r - 4 * p * p * p * r + p * p * q * q - 4 * q * q * q - 27 * r * r;
}

bool is_totally_real(const MonicCubic& f) { return discriminant(f) > 0; }

Integer root_bound(const MonicCubic& f) {
    // Cauchy: |root| < 1 + max |p_i|
    Integer m = std::max({abs(f.p2), abs(f.p1), abs(f.p0)}) + 1;
    Integer b = 1;
    while (b <= m) b *= 2;
    return b;
}

namespace {
// Integer roots of f on [lo, hi], where f is monotone.
void roots_on_monotone(const MonicCubic& f, Integer lo, Integer hi, std::vector<Integer>& out) {
    if (lo > hi) return;
    Integer flo = f(lo), fhi = f(hi);
    if (flo == 0) out.push_back(lo);
    if (fhi == 0 && hi != lo) out.push_back(hi);
    if (flo == 0 || fhi == 0 || mpz_sgn(flo.get_mpz_t()) == mpz_sgn(fhi.get_mpz_t())) return;
    int slo = mpz_sgn(flo.get_mpz_t());
    while (hi - lo > 1) {
        Integer mid = lo + (hi - lo) / 2;
        Integer fm = f(mid);
        if (fm == 0) {
            out.push_back(mid);
            return;
        }
        if (mpz_sgn(fm.get_mpz_t()) == slo)
            lo = mid;
        else
            hi = mid;
    }
}

Integer floor_div(const Integer& n, const Integer& d) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    return q;
}

Integer isqrt(const Integer& v) {
    Integer r;
    mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
    return r;
}
}  // namespace

std::vector<Integer> integer_roots(const MonicCubic& f) {
    std::vector<Integer> out;
    Integer bound = root_bound(f);
    // critical points (-p2 ± sqrt(dp)) / 3 with dp = p2^2 - 3 p1
    Integer dp = f.p2 * f.p2 - 3 * f.p1;
    if (dp <= 0) {
        roots_on_monotone(f, -bound, bound, out);
    } else {
        Integer s = isqrt(dp);  // s <= sqrt(dp) < s + 1
        // c1 lies in ((-p2-s-1)/3, (-p2-s)/3], c2 in [(-p2+s)/3, (-p2+s+1)/3)
        Integer lo1 = floor_div(-f.p2 - s - 1, 3);
        Integer hi1 = -floor_div(f.p2 + s, 3);  // ceil((-p2-s)/3)
        Integer lo2 = floor_div(-f.p2 + s, 3);
        Integer hi2 = -floor_div(f.p2 - s - 1, 3);  // ceil((-p2+s+1)/3)
        roots_on_monotone(f, -bound, std::min(lo1, bound), out);
        for (Integer k = lo1 + 1; k < hi1; ++k)
            if (f(k) == 0) out.push_back(k);
        roots_on_monotone(f, hi1, lo2, out);
        for (Integer k = lo2 + 1; k < hi2; ++k)
            if (f(k) == 0) out.push_back(k);
        roots_on_monotone(f, std::max(hi2, Integer(-bound)), bound, out);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool is_irreducible(const MonicCubic& f) {
    if (f.p0 == 0) return false;
    return integer_roots(f).empty();
}

MonicCubic scale_root(const MonicCubic& f, const Integer& n) {
    if (n == 0) throw Error(ErrorCode::PreconditionViolation, "scale_root with n = 0");
    return MonicCubic(n * f.p2, n * n * f.p1, n * n * n * f.p0);
}

}  // namespace cubic
