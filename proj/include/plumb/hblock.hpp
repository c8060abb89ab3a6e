// The homological block Zhat(q): principal-value route (residue table over
// the full lattice) and false-theta route (signed sum over S + Z^{V>=3}),
// plus evaluation near roots of unity with certified tails.
//
// Normalisation used throughout:
//     Zhat = sign_prefactor * q^{-phi/4} * core,
//     phi = sum_v (w_v + 3) + sum_{leaves} 1/w_i,
//     sign_prefactor = 2^{-|V_{>=3}|},
// with integer core coefficients.  The residue calculus fixes both the
// prefactor and the residue values below the binomial support; the two
// routes must agree coefficient by coefficient.

#pragma once

#include <functional>

#include "plumb/chardata.hpp"
#include "plumb/ratfunc.hpp"

namespace plumb {

// Cauchy principal value of  z^{l-1} (z - 1/z)^{2-d} dz / (2 pi i)  over
// |z| = 1 (two-circle limit).  For d >= 3 and l = d mod 2 this equals
// sgn(n) p_d(n) with n = (l-d)/2 + 1 and p_d the degree-(d-3) vertex
// polynomial; for d <= 2 the integrand is a Laurent polynomial and the
// value reads off its coefficients.  d = 0 only occurs for the one-vertex
// graph.
Int pv_residue(long d, long l);

// Exact enumeration of { m in Z^n : (m + shift)^t Q (m + shift) <= bound }
// for positive definite rational Q, by LDL decomposition with outward
// integer rounding (no point under the bound is missed).
// fn receives m and the exact form value.
void enumerate_ellipsoid(const RMat& Q, const std::vector<Rat>& shift, const Rat& bound,
                         const std::function<void(const std::vector<Int>&, const Rat&)>& fn,
                         unsigned long long budget = 100000000ULL);

struct HBSeries {
    Rat prefactor_exponent; // phi/4
    Rat sign_prefactor;     // 2^{-|V>=3|}
    QSeries core;           // integer coefficients
    Rat bound;              // complete for all core exponents <= bound
    bool finite = false;    // true: the series terminates (no tail at all)

    // Tail-certification data (from the false-theta shape of the series).
    int enum_dim = 0;       // |V>=3|
    Rat lambda_lb;          // Q(x) >= lambda_lb ||x||^2, exact
    Int alpha_count;        // |S| = 2^{|V_1|}
    Rat shift_sup;          // sup-norm bound on the enumeration shifts
    long pdeg = 0;          // total degree of P
    Rat pfac;               // constant scale of P's coefficient bound
};

HBSeries zhat_by_pv(const LinkingData& ld, const Rat& exponent_bound,
                    unsigned long long budget = 100000000ULL);

HBSeries zhat_false_theta(const LinkingData& ld, const ProductCharacter& pc,
                          const Rat& exponent_bound,
                          unsigned long long budget = 100000000ULL);

struct EvalResult {
    Complex value;
    Real tail; // certified bound on the truncation error (absolute)
};

// General complex evaluation, |q| < 1 (principal branch for q^{rational}).
// Throws RadiusTooClose when the certified tail exceeds tolerance.
EvalResult zhat_eval(const HBSeries& hb, const Complex& q, const Real& tolerance);

// Radial evaluation at q = e(1/k) exp(-t): exact rational phases.
EvalResult zhat_eval_radial(const HBSeries& hb, long k, const Real& t, const Real& tolerance);

// Compact series form for radial evaluation at large exponent bounds: the
// exponents Q(n+alpha) - Q(alpha) are integers, so a single small
// denominator serves the whole series and terms fit in machine words.
struct RadialSeries {
    Rat prefactor_exponent;
    Rat sign_prefactor;
    Int den;                                          // exponent = num / den
    std::vector<std::pair<long long, long long>> terms; // (num, coeff), sorted
    Rat bound;
    bool finite = false;

    int enum_dim = 0;
    Rat lambda_lb;
    Int alpha_count;
    Rat shift_sup;
    long pdeg = 0;
    Rat pfac;
};

// Streaming build of the false-theta series in compact form (the large-
// bound companion of zhat_false_theta; identical term content).
RadialSeries radial_series(const LinkingData& ld, const ProductCharacter& pc,
                           const Rat& exponent_bound,
                           unsigned long long budget = 100000000ULL);

RadialSeries compile_radial(const HBSeries& hb);

EvalResult radial_series_eval(const RadialSeries& rs, long k, const Real& t,
                              const Real& tolerance);

struct RadialReport {
    std::vector<Real> ts;
    std::vector<Complex> values;       // Zhat(e(1/k) e^{-t_j})
    std::vector<Complex> extrapolants; // Richardson diagonal
    Complex limit;
    Real error_estimate;
    std::string to_json(unsigned digits = 30) const;
};

// Extrapolation to t = 0 from a geometric schedule (ratio 4/3) between
// 2^{-J} and 2^{-j0}: Neville's last row then bases its high columns on the
// smallest t's only, which keeps points with large expansion coefficients
// out of the refined entries.  The limit is the most stable table entry and
// the error estimate its increment; NoConvergence when that exceeds the
// tolerance, RadiusTooClose when the series is too short for the schedule.
RadialReport radial_limit(const RadialSeries& rs, long k, const Real& tolerance,
                          int j0 = 12, int J = 16);
RadialReport radial_limit(const HBSeries& hb, long k, const Real& tolerance,
                          int j0 = 12, int J = 16);

// Exponent bound that certifies tails below the tolerance across the schedule.
Rat radial_bound_for(long k, const Real& tolerance, int J = 16);

std::string hbseries_to_json(const HBSeries& hb);

} // namespace plumb
