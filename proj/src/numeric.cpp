#include "cubic/numeric.hpp"

#include "cubic/error.hpp"

#include <algorithm>
#include <climits>
#include <cstdlib>
#include <vector>

namespace cubic {

namespace {
thread_local Bits g_working = 192;

Bits wider(const Real& a, const Real& b) { return std::max(a.precision(), b.precision()); }
}  // namespace

Bits working_precision() { return g_working; }

void set_working_precision(Bits bits) {
    if (bits < MPFR_PREC_MIN || bits > MPFR_PREC_MAX)
        throw Error(ErrorCode::PreconditionViolation, "precision out of range");
    g_working = bits;
}

PrecisionGuard::PrecisionGuard(Bits bits) : saved_(g_working) { set_working_precision(bits); }
PrecisionGuard::~PrecisionGuard() { g_working = saved_; }

Real::Real() {
    mpfr_init2(v_, g_working);
    mpfr_set_zero(v_, 1);
}

Real::Real(Bits prec_bits, int) {
    mpfr_init2(v_, prec_bits);
    mpfr_set_zero(v_, 1);
}

Real::Real(int v) {
    mpfr_init2(v_, std::max<Bits>(g_working, 64));
    mpfr_set_si(v_, v, MPFR_RNDN);
}

Real::Real(long v) {
    mpfr_init2(v_, std::max<Bits>(g_working, 64));
    mpfr_set_si(v_, v, MPFR_RNDN);
}

Real::Real(double v) {
    mpfr_init2(v_, std::max<Bits>(g_working, 53));
    mpfr_set_d(v_, v, MPFR_RNDN);
}

Real::Real(const Integer& v, Bits prec) {
    mpfr_init2(v_, prec);
    mpfr_set_z(v_, v.get_mpz_t(), MPFR_RNDN);
}

Real::Real(const Rational& v, Bits prec) {
    mpfr_init2(v_, prec);
    mpfr_set_q(v_, v.get_mpq_t(), MPFR_RNDN);
}

Real Real::with_precision(double v, Bits prec) {
    Real r(prec, 0);
    mpfr_set_d(r.v_, v, MPFR_RNDN);
    return r;
}

Real Real::parse(const std::string& decimal, Bits prec) {
    Real r(prec, 0);
    char* end = nullptr;
    mpfr_strtofr(r.v_, decimal.c_str(), &end, 10, MPFR_RNDN);
    if (decimal.empty() || end == decimal.c_str() || *end != '\0')
        throw Error(ErrorCode::InvalidInput, "not a decimal number: '" + decimal + "'");
    return r;
}

Real::Real(const Real& other) {
    mpfr_init2(v_, other.precision());
    mpfr_set(v_, other.v_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
    // steal by swapping with a minimal fresh value
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, other.v_);
}

Real& Real::operator=(const Real& other) {
    if (this != &other) {
        mpfr_set_prec(v_, other.precision());
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& other) noexcept {
    if (this != &other) mpfr_swap(v_, other.v_);
    return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real& Real::set_precision(Bits bits) {
    mpfr_prec_round(v_, bits, MPFR_RNDN);
    return *this;
}

Real Real::rounded_to(Bits bits) const {
    Real r(*this);
    r.set_precision(bits);
    return r;
}

long Real::exponent() const {
    if (mpfr_zero_p(v_)) return LONG_MIN;
    return mpfr_get_exp(v_);
}

Rational Real::to_rational() const {
    if (!is_finite()) throw Error(ErrorCode::DomainError, "non-finite value has no rational form");
    Integer m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
    Rational q(m);
    if (e >= 0)
        mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(e));
    else
        mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(-e));
    q.canonicalize();
    return q;
}

std::string Real::to_string(int digits) const {
    if (mpfr_nan_p(v_)) return "nan";
    if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
    if (digits < 1) digits = 1;
    // assembled by hand so the radix never depends on locale
    mpfr_exp_t e = 0;
    char* s = mpfr_get_str(nullptr, &e, 10, static_cast<std::size_t>(digits), v_, MPFR_RNDN);
    std::string mant(s);
    mpfr_free_str(s);
    if (mpfr_zero_p(v_)) return "0";
    std::string out;
    if (mant[0] == '-') {
        out.push_back('-');
        mant.erase(0, 1);
    }
    out.push_back(mant[0]);
    if (mant.size() > 1) {
        out.push_back('.');
        out.append(mant, 1, std::string::npos);
    }
    long ex = static_cast<long>(e) - 1;
    out += ex < 0 ? "e" : "e+";
    out += std::to_string(ex);
    return out;
}

Real& Real::operator+=(const Real& o) {
    if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}
Real& Real::operator-=(const Real& o) {
    if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}
Real& Real::operator*=(const Real& o) {
    if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}
Real& Real::operator/=(const Real& o) {
    if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

Real operator-(const Real& a) {
    Real r(a.precision(), 0);
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);
    return r;
}
Real operator+(const Real& a, const Real& b) {
    Real r(wider(a, b), 0);
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}
Real operator-(const Real& a, const Real& b) {
    Real r(wider(a, b), 0);
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}
Real operator*(const Real& a, const Real& b) {
    Real r(wider(a, b), 0);
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}
Real operator/(const Real& a, const Real& b) {
    Real r(wider(a, b), 0);
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}
Real mul_z(const Real& a, const Integer& b) {
    Real r(a.precision(), 0);
    mpfr_mul_z(r.raw(), a.raw(), b.get_mpz_t(), MPFR_RNDN);
    return r;
}
Real add_z(const Real& a, const Integer& b) {
    Real r(a.precision(), 0);
    mpfr_add_z(r.raw(), a.raw(), b.get_mpz_t(), MPFR_RNDN);
    return r;
}
Real sub_z(const Real& a, const Integer& b) {
    Real r(a.precision(), 0);
    mpfr_sub_z(r.raw(), a.raw(), b.get_mpz_t(), MPFR_RNDN);
    return r;
}

std::partial_ordering operator<=>(const Real& a, const Real& b) {
    if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
    int c = mpfr_cmp(a.v_, b.v_);
    if (c < 0) return std::partial_ordering::less;
    if (c > 0) return std::partial_ordering::greater;
    return std::partial_ordering::equivalent;
}

namespace {
template <class F>
Real unary(const Real& x, F f) {
    Real r(x.precision(), 0);
    f(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}
}  // namespace

Real abs(const Real& x) {
    Real r(x.precision(), 0);
    mpfr_abs(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}
Real sqrt(const Real& x) { return unary(x, mpfr_sqrt); }
Real cbrt(const Real& x) { return unary(x, mpfr_cbrt); }
Real log(const Real& x) { return unary(x, mpfr_log); }
Real log2(const Real& x) { return unary(x, mpfr_log2); }
Real exp(const Real& x) { return unary(x, mpfr_exp); }
Real cos(const Real& x) { return unary(x, mpfr_cos); }
Real sin(const Real& x) { return unary(x, mpfr_sin); }

Real atan2(const Real& y, const Real& x) {
    Real r(wider(y, x), 0);
    mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
    return r;
}

Real pow(const Real& x, const Real& y) {
    Real r(wider(x, y), 0);
    mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
    return r;
}

Real round_nearest(const Real& x) {
    Real r(x.precision(), 0);
    mpfr_round(r.raw(), x.raw());
    return r;
}

Real floor(const Real& x) {
    Real r(x.precision(), 0);
    mpfr_floor(r.raw(), x.raw());
    return r;
}

Real ldexp(const Real& x, long e) {
    Real r(x.precision(), 0);
    mpfr_mul_2si(r.raw(), x.raw(), e, MPFR_RNDN);
    return r;
}

Real max(const Real& a, const Real& b) { return a < b ? b : a; }
Real min(const Real& a, const Real& b) { return b < a ? b : a; }

Real pi(Bits prec) {
    Real r(prec, 0);
    mpfr_const_pi(r.raw(), MPFR_RNDN);
    return r;
}

Real pow2(long e, Bits prec) {
    Real r(prec, 0);
    mpfr_set_ui_2exp(r.raw(), 1, e, MPFR_RNDN);
    return r;
}

Real upper_abs(const Real& x) {
    Real r(64, 0);
    mpfr_abs(r.raw(), x.raw(), MPFR_RNDU);
    return r;
}

Integer to_integer_floor(const Real& x) {
    if (!x.is_finite()) throw Error(ErrorCode::DomainError, "floor of non-finite value");
    Integer z;
    mpfr_get_z(z.get_mpz_t(), x.raw(), MPFR_RNDD);
    return z;
}

std::size_t bit_length(const Integer& v) {
    if (v == 0) return 0;
    return mpz_sizeinbase(v.get_mpz_t(), 2);
}

Integer ipow(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

Integer gcd(const Integer& a, const Integer& b) {
    Integer r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

Integer mod(const Integer& v, const Integer& m) {
    if (m == 0) return v;
    Integer r;
    mpz_mod(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());  // sign of m ignored
    return r;
}

bool congruent(const Integer& v, const Integer& target, const Integer& m) {
    if (m == 0) return v == target;
    return mpz_divisible_p(Integer(v - target).get_mpz_t(), m.get_mpz_t()) != 0;
}

Integer parse_integer(const std::string& text) {
    std::string s = text;
    if (!s.empty() && s[0] == '+') s.erase(0, 1);
    bool ok = !s.empty();
    for (std::size_t i = 0; i < s.size() && ok; ++i) {
        char c = s[i];
        ok = (c >= '0' && c <= '9') || (i == 0 && c == '-' && s.size() > 1);
    }
    if (!ok) throw Error(ErrorCode::InvalidInput, "not an integer: '" + text + "'");
    return Integer(s, 10);
}

Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        Integer n = parse_integer(text.substr(0, slash));
        Integer d = parse_integer(text.substr(slash + 1));
        if (d == 0) throw Error(ErrorCode::InvalidInput, "zero denominator: '" + text + "'");
        Rational q(n, d);
        q.canonicalize();
        return q;
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(parse_integer(text));
    std::string whole = text.substr(0, dot);
    std::string frac = text.substr(dot + 1);
    if (frac.empty() || frac.find_first_not_of("0123456789") != std::string::npos)
        throw Error(ErrorCode::InvalidInput, "not a decimal: '" + text + "'");
    bool neg = !whole.empty() && whole[0] == '-';
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    Integer w = parse_integer(whole);
    Integer f(frac, 10);
    Integer scale = ipow(10, frac.size());
    Rational q(abs(w) * scale + f, scale);
    q.canonicalize();
    return neg ? Rational(-q) : q;
}

Complex& Complex::operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
}
Complex& Complex::operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
}

Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
Complex operator*(const Real& a, const Complex& b) { return {a * b.re, a * b.im}; }
Complex operator/(const Complex& a, const Complex& b) {
    Real d = norm(b);
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }
Real abs(const Complex& z) {
    Real r(std::max(z.re.precision(), z.im.precision()), 0);
    mpfr_hypot(r.raw(), z.re.raw(), z.im.raw(), MPFR_RNDN);
    return r;
}
Real arg(const Complex& z) { return atan2(z.im, z.re); }
Complex conj(const Complex& z) { return {z.re, -z.im}; }

Complex omega(Bits prec) {
    Real half = Real::with_precision(-0.5, prec);
    Real s3(prec, 0);
    mpfr_sqrt_ui(s3.raw(), 3, MPFR_RNDN);
    return {half, ldexp(s3, -1)};
}

}  // namespace cubic
