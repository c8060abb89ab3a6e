// Arbitrary-precision scalar types.
//
// Int / Rat are exact (GMP); Real / Complex are MPFR floats at a global
// decimal precision.  All root-of-unity phases are kept as exact rationals
// (in turns, i.e. e(x) = exp(2*pi*i*x)) until the final exponential.

#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <string>
#include <vector>

#include "plumb/errors.hpp"

namespace plumb {

namespace mp = boost::multiprecision;

using Int = mp::mpz_int;
using Rat = mp::mpq_rational;
using Real = mp::mpfr_float;

// Global working precision in decimal digits.  Affects Reals constructed
// afterwards; callers set it once up front (default 64).
void set_precision(unsigned digits10);
unsigned precision();

Real pi();

Real to_real(const Rat& x);
Real to_real(const Int& x);

// x - floor(x), exact, in [0, 1).
Rat frac(const Rat& x);
Int floor_div(const Int& a, const Int& b); // floor(a/b), b != 0
Int mod_euclid(const Int& a, const Int& b); // a mod |b|, in [0, |b|)

// num/den with sign canonicalization; the native two-int Rat constructor
// mishandles negative denominators, so every runtime-valued denominator
// goes through here.
inline Rat rat_frac(const Int& num, const Int& den) {
    if (den == 0) throw Error("rat_frac: zero denominator");
    return Rat(num, den); // the mpz path canonicalizes signs
}

Rat rat_pow(const Rat& base, long e); // integer exponent, base != 0 when e < 0
Int factorial(unsigned n);
Int binomial(unsigned n, unsigned k);

Rat parse_rat(const std::string& s); // "p/q" or "p"
std::string rat_str(const Rat& x);

struct Complex {
    Real re, im;

    Complex() : re(0), im(0) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    explicit Complex(Real r) : re(std::move(r)), im(0) {}
    explicit Complex(long r) : re(r), im(0) {}

    Complex operator+(const Complex& o) const { return {re + o.re, im + o.im}; }
    Complex operator-(const Complex& o) const { return {re - o.re, im - o.im}; }
    Complex operator-() const { return {-re, -im}; }
    Complex operator*(const Complex& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    Complex operator*(const Real& s) const { return {re * s, im * s}; }
    Complex operator/(const Real& s) const { return {re / s, im / s}; }
    Complex operator/(const Complex& o) const;
    Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
    Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
    Complex& operator*=(const Complex& o) { *this = *this * o; return *this; }

    Complex conj() const { return {re, -im}; }
    Real abs() const;
    Real abs2() const { return re * re + im * im; }

    static Complex zero() { return Complex(); }
    static Complex one() { return Complex(Real(1), Real(0)); }
    static Complex i() { return Complex(Real(0), Real(1)); }
};

Complex operator*(const Real& s, const Complex& z);

// e(x) := exp(2*pi*i*x) for exact rational x (reduced mod 1 first).
Complex e_of(const Rat& turns);
// Integer power of a complex number.
Complex cpow(const Complex& z, long e);
Real abs_diff(const Complex& a, const Complex& b);

std::string real_str(const Real& x, unsigned digits = 0);
std::string complex_str(const Complex& z, unsigned digits = 0);

// Compensated (Kahan) accumulation on both components.
struct KahanSum {
    Complex s, c;
    void add(const Complex& term) {
        Real yr = term.re - c.re, yi = term.im - c.im;
        Real tr = s.re + yr, ti = s.im + yi;
        c.re = (tr - s.re) - yr;
        c.im = (ti - s.im) - yi;
        s.re = tr;
        s.im = ti;
    }
    const Complex& value() const { return s; }
};

} // namespace plumb
