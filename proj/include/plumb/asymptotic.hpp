// Polynomial-weighted Euler-Maclaurin machinery: the 1-d expansion engine,
// the c_n coefficient ledger of F(f; t), the rational function F(f_1; t),
// the constant c_0, and the three-way main-theorem verdict.

#pragma once

#include <functional>
#include <map>
#include <optional>

#include "plumb/bernoulli.hpp"
#include "plumb/gausswrt.hpp"
#include "plumb/hblock.hpp"

namespace plumb {

// f supplies derivatives at 0 for any order; negative orders are iterated
// antiderivatives normalised by f^{(-1)}(x) = -int_x^inf f.
struct EMFunction1D {
    std::function<Real(long)> deriv_at_zero;
};

// Coefficients of t^n, n in [n_min, n_max], in the expansion of
//     sum_{j >= 0} P(lam + j) f(t (alpha + lam + j))
// as t -> +0:  coeff(n) = - f^{(n)}(0) sum_m p_m B_{m,n}(alpha, lam).
std::vector<Real> em_asymptotic_1d(const EMFunction1D& f, const std::vector<Rat>& poly,
                                   const Rat& alpha, const Rat& lam,
                                   long n_min, long n_max);

enum class NormalizationMode { corollary_literal, prop_scaled };
const char* normalization_mode_name(NormalizationMode m);

struct AsymptoticLedger {
    long k = 0;
    NormalizationMode mode = NormalizationMode::prop_scaled;
    bool calibrated = false;       // mode fixed by the F(f_1;t) Taylor oracle
    std::vector<long> box_lo, box_hi; // per V_{>=3} coordinate, inclusive
    std::map<std::vector<long>, Complex> coeffs;
    Complex c0;

    const Complex& at(const std::vector<long>& n) const;
};

// The asymptotic coefficients c_n of F(f; t) for n in the box.  When mode is
// not forced, both candidate normalizations are evaluated against F(f_1; t)
// at small t and the matching one is selected (CalibrationFailed if neither
// fits).
AsymptoticLedger cn_ledger(const LinkingData& ld, const ProductCharacter& pc, long k,
                           const std::vector<long>& box_lo, const std::vector<long>& box_hi,
                           std::optional<NormalizationMode> force = std::nullopt,
                           unsigned long long budget = 100000000ULL);

// F(f_1; t) via the coset sum
//   (-1)^{|V1|} e(N/8) / (sqrt(2k)^N prod sqrt|w_i|) *
//   sum_{mu mod 2kS} e(-mu^t S^-1 mu / 4k) prod_v G_v(zeta_{2kM_v}^{mu_v} e^{-t_v/2M_v}),
// t indexed by V_{>=3} (t = 0 on V_2); componentwise t > 0 required.
Complex F_f1(const LinkingData& ld, long k, const std::vector<Rat>& t,
             unsigned long long budget = 100000000ULL);

// F(f_1; t) from its definition: the (alpha, n >= 0) double sum with a
// certified geometric tail; the independent route used in tests.
Complex F_f1_direct(const LinkingData& ld, const ProductCharacter& pc, long k,
                    const std::vector<Rat>& t, const Real& tol);

// Laurent order of F(f_1; t) in the single variable t_v by halving samples
// and slope rounding; throws OrderAmbiguous when the slope is not within
// 0.1 of an integer.
long F_f1_order(const LinkingData& ld, long k, int v, const Rat& h = Rat(1, 16),
                int samples = 8);

// F(f_1; 0) = c_0 under the theorem's condition: the (Z \ kZ)-filtered coset
// sum.  Throws ConditionViolated when some |vbar| + 2 - deg(v) <= 0.
Complex c0_closed_form(const LinkingData& ld, long k,
                       unsigned long long budget = 100000000ULL);

struct VerdictReport {
    long k = 0;
    Real tolerance;
    Complex wrt;                 // wrt_reduced
    std::optional<Real> gppv_delta; // |wrt_gppv - wrt_reduced| when budget allowed
    Complex scaled_wrt;          // 2 (zeta_2k - zeta_2k^{-1}) WRT
    Complex radial;              // lim Zhat(q), q -> zeta_k radially
    Real radial_error_estimate;
    Complex prefactored_c0;      // e(-phi/4k) c0_closed_form
    Real d_wrt_radial, d_radial_c0, d_wrt_c0;
    bool pass = false;
    std::string mode = "n/a";    // ledger normalization, when calibrated
    double seconds = 0;

    std::string to_json(unsigned digits = 30) const;
};

struct VerifyOptions {
    Real tolerance;
    unsigned long long gppv_budget = 100000000ULL;
    unsigned long long enum_budget = 100000000ULL;
    int j0 = 12, J = 16;
    bool with_ledger_mode = false;

    VerifyOptions() : tolerance(Real(1) / Real(100000000)) {}
};

VerdictReport verify_main(const LinkingData& ld, const ProductCharacter& pc, long k,
                          const VerifyOptions& opts = VerifyOptions());

} // namespace plumb
