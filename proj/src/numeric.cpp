#include "plumb/numeric.hpp"

#include <iomanip>
#include <sstream>

namespace plumb {

namespace {
unsigned g_digits = 64;
}

void set_precision(unsigned digits10) {
    if (digits10 < 8) digits10 = 8;
    g_digits = digits10;
    Real::default_precision(digits10);
}

unsigned precision() { return g_digits; }

Real pi() { return boost::math::constants::pi<Real>(); }

Real to_real(const Rat& x) {
    return Real(numerator(x)) / Real(denominator(x));
}

Real to_real(const Int& x) { return Real(x); }

Int floor_div(const Int& a, const Int& b) {
    Int q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

Int mod_euclid(const Int& a, const Int& b) {
    Int m = abs(b);
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

Rat frac(const Rat& x) {
    Int q = floor_div(numerator(x), denominator(x));
    return x - q;
}

Rat rat_pow(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    if (e < 0) {
        if (base == 0) throw Error("rat_pow: zero base with negative exponent");
        return Rat(1) / rat_pow(base, -e);
    }
    Rat r(1), b = base;
    long n = e;
    while (n > 0) {
        if (n & 1) r *= b;
        b *= b;
        n >>= 1;
    }
    return r;
}

Int factorial(unsigned n) {
    Int r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

Int binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    Int r = 1;
    for (unsigned i = 0; i < k; ++i) {
        r *= Int(n - i);
        r /= Int(i + 1);
    }
    return r;
}

Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash)), den(s.substr(slash + 1));
        if (den == 0) throw Error("parse_rat: zero denominator");
        return Rat(num, den);
    } catch (const std::exception& ex) {
        throw Error("parse_rat: bad rational '" + s + "'");
    }
}

std::string rat_str(const Rat& x) {
    std::ostringstream os;
    if (denominator(x) == 1)
        os << numerator(x);
    else
        os << numerator(x) << "/" << denominator(x);
    return os.str();
}

Complex Complex::operator/(const Complex& o) const {
    Real d = o.abs2();
    return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
}

Real Complex::abs() const { return sqrt(re * re + im * im); }

Complex operator*(const Real& s, const Complex& z) { return {s * z.re, s * z.im}; }

Complex e_of(const Rat& turns) {
    Rat t = frac(turns);
    // Common exact values keep tests crisp at any precision.
    if (t == 0) return Complex::one();
    if (t == Rat(1, 2)) return Complex(Real(-1), Real(0));
    if (t == Rat(1, 4)) return Complex::i();
    if (t == Rat(3, 4)) return Complex(Real(0), Real(-1));
    Real theta = 2 * pi() * to_real(t);
    Real s, c;
    mpfr_sin_cos(s.backend().data(), c.backend().data(), theta.backend().data(), MPFR_RNDN);
    return Complex(std::move(c), std::move(s));
}

Complex cpow(const Complex& z, long e) {
    if (e == 0) return Complex::one();
    bool inv = e < 0;
    unsigned long n = inv ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    Complex r = Complex::one(), b = z;
    while (n > 0) {
        if (n & 1) r *= b;
        b *= b;
        n >>= 1;
    }
    if (inv) return Complex::one() / r;
    return r;
}

Real abs_diff(const Complex& a, const Complex& b) { return (a - b).abs(); }

std::string real_str(const Real& x, unsigned digits) {
    std::ostringstream os;
    os << std::setprecision(digits ? digits : g_digits) << x;
    return os.str();
}

std::string complex_str(const Complex& z, unsigned digits) {
    std::ostringstream os;
    os << real_str(z.re, digits);
    if (z.im >= 0)
        os << " + " << real_str(z.im, digits) << "i";
    else
        os << " - " << real_str(-z.im, digits) << "i";
    return os.str();
}

} // namespace plumb
