#pragma once

// Exact integers/rationals (GMP) and a fixed-precision binary floating type
// (MPFR) used by every numeric module.

#include <gmpxx.h>
#include <mpfr.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <string>

namespace cubic {

using Integer = mpz_class;
using Rational = mpq_class;

using Bits = mpfr_prec_t;

// Precision used by Real constructors that are not given one explicitly.
// Thread-local, so worker threads never observe each other's settings.
Bits working_precision();
void set_working_precision(Bits bits);

// Restores the previous working precision on scope exit.
class PrecisionGuard {
public:
    explicit PrecisionGuard(Bits bits);
    ~PrecisionGuard();
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
    Bits saved_;
};

// MPFR value with its own precision. Binary operations round to the larger of
// the two operand precisions, round-to-nearest.
class Real {
public:
    Real();
    explicit Real(Bits prec_bits, int tag);  // zero with the given precision
    Real(int v);
    Real(long v);
    Real(double v);
    explicit Real(const Integer& v, Bits prec = working_precision());
    explicit Real(const Rational& v, Bits prec = working_precision());
    static Real with_precision(double v, Bits prec);
    static Real parse(const std::string& decimal, Bits prec = working_precision());

    Real(const Real& other);
    Real(Real&& other) noexcept;
    Real& operator=(const Real& other);
    Real& operator=(Real&& other) noexcept;
    ~Real();

    Bits precision() const { return mpfr_get_prec(v_); }
    // Rounds in place to a new precision.
    Real& set_precision(Bits bits);
    Real rounded_to(Bits bits) const;

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    // Binary exponent e with 2^(e-1) <= |x| < 2^e; LONG_MIN for zero.
    long exponent() const;

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    // The exact binary value as a rational (finite values only).
    Rational to_rational() const;
    // Fixed significant-digit scientific string, locale independent.
    std::string to_string(int digits = 30) const;

    Real& operator+=(const Real& o);
    Real& operator-=(const Real& o);
    Real& operator*=(const Real& o);
    Real& operator/=(const Real& o);

    friend Real operator-(const Real& a);
    friend Real operator+(const Real& a, const Real& b);
    friend Real operator-(const Real& a, const Real& b);
    friend Real operator*(const Real& a, const Real& b);
    friend Real operator/(const Real& a, const Real& b);

    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend std::partial_ordering operator<=>(const Real& a, const Real& b);

private:
    mpfr_t v_;
};

// Mixed Real/Integer arithmetic. Templates so that plain ints keep going
// through the Real(int) conversion instead of being ambiguous.
Real mul_z(const Real& a, const Integer& b);
Real add_z(const Real& a, const Integer& b);
Real sub_z(const Real& a, const Integer& b);
template <std::same_as<Integer> I>
Real operator*(const Real& a, const I& b) { return mul_z(a, b); }
template <std::same_as<Integer> I>
Real operator*(const I& a, const Real& b) { return mul_z(b, a); }
template <std::same_as<Integer> I>
Real operator+(const Real& a, const I& b) { return add_z(a, b); }
template <std::same_as<Integer> I>
Real operator-(const Real& a, const I& b) { return sub_z(a, b); }

Real abs(const Real& x);
Real sqrt(const Real& x);
Real cbrt(const Real& x);
Real log(const Real& x);
Real log2(const Real& x);
Real exp(const Real& x);
Real cos(const Real& x);
Real sin(const Real& x);
Real atan2(const Real& y, const Real& x);
Real pow(const Real& x, const Real& y);
Real round_nearest(const Real& x);  // halves away from zero
Real floor(const Real& x);
Real ldexp(const Real& x, long e);  // x * 2^e, exact
Real max(const Real& a, const Real& b);
Real min(const Real& a, const Real& b);
Real pi(Bits prec = working_precision());
// 2^e as a Real of the given precision.
Real pow2(long e, Bits prec = working_precision());
// Upper bound for |x|, rounded away from zero at 64 bits.
Real upper_abs(const Real& x);

Integer to_integer_floor(const Real& x);

// Number of bits in |v| (0 for zero).
std::size_t bit_length(const Integer& v);
Integer ipow(const Integer& base, unsigned long e);
Integer gcd(const Integer& a, const Integer& b);
// Canonical non-negative residue; modulus 0 returns v unchanged.
Integer mod(const Integer& v, const Integer& m);
// v ≡ target (mod m), with modulus 0 meaning equality and ±1 vacuous.
bool congruent(const Integer& v, const Integer& target, const Integer& m);

Integer parse_integer(const std::string& text);
// Accepts "p/q", integers and plain decimals such as "2.5".
Rational parse_rational(const std::string& text);

// Complex number on Real parts; only the operations the shape code needs.
struct Complex {
    Real re;
    Real im;

    Complex() = default;
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

    Complex& operator+=(const Complex& o);
    Complex& operator-=(const Complex& o);
};

Complex operator+(const Complex& a, const Complex& b);
Complex operator-(const Complex& a, const Complex& b);
Complex operator-(const Complex& a);
Complex operator*(const Complex& a, const Complex& b);
Complex operator*(const Real& a, const Complex& b);
Complex operator/(const Complex& a, const Complex& b);
Real norm(const Complex& z);  // |z|^2
Real abs(const Complex& z);
Real arg(const Complex& z);
Complex conj(const Complex& z);
// Primitive cube root of unity e^{2πi/3} = (-1 + √3 i)/2.
Complex omega(Bits prec = working_precision());

}  // namespace cubic
