#include "plumb/bernoulli.hpp"

#include <vector>

namespace plumb {

namespace {

unsigned g_max_order = 64;
std::vector<Rat> g_numbers; // B_0, B_1, ...

void ensure_numbers(unsigned m) {
    if (m > g_max_order) throw OrderTooLarge("bernoulli order " + std::to_string(m));
    if (g_numbers.size() > m) return;
    if (g_numbers.empty()) g_numbers.push_back(Rat(1));
    for (unsigned k = static_cast<unsigned>(g_numbers.size()); k <= m; ++k) {
        // sum_{j<=k} C(k+1, j) B_j = 0 for k >= 1
        Rat s(0);
        for (unsigned j = 0; j < k; ++j) s += Rat(binomial(k + 1, j)) * g_numbers[j];
        g_numbers.push_back(-s / Rat(Int(k) + 1));
    }
}

Rat falling_binom(long nu, long l) {
    // nu (nu-1) ... (nu-l+1) / l!
    if (l < 0) return Rat(0);
    Rat r(1);
    for (long i = 0; i < l; ++i) r *= Rat(Int(nu) - i);
    return r / Rat(factorial(static_cast<unsigned>(l)));
}

} // namespace

unsigned bernoulli_max_order() { return g_max_order; }
void set_bernoulli_max_order(unsigned m) { g_max_order = m; }

Rat bernoulli_number(unsigned m) {
    ensure_numbers(m);
    return g_numbers[m];
}

Rat bernoulli_poly(unsigned m, const Rat& x) {
    ensure_numbers(m);
    // B_m(x) = sum_j C(m,j) B_j x^{m-j}
    Rat r(0), xp(1);
    for (long j = static_cast<long>(m); j >= 0; --j) {
        r += Rat(binomial(m, static_cast<unsigned>(j))) * g_numbers[j] * xp;
        xp *= x;
    }
    return r;
}

Rat bbB(long m, long n, const Rat& alpha, const Rat& lam) {
    if (m < 0) throw Error("bbB: m must be nonnegative");
    if (n <= -m - 2) return Rat(0);
    if (n <= -1) {
        Rat r = Rat(factorial(static_cast<unsigned>(m))) /
                Rat(factorial(static_cast<unsigned>(m + n + 1)));
        r *= rat_pow(alpha, m + n + 1);
        if (m % 2 == 1) r = -r;
        return r;
    }
    Rat s(0);
    Rat apl = alpha + lam;
    for (long l = 0; l <= m; ++l) {
        Rat term = bernoulli_poly(static_cast<unsigned>(n + l + 1), apl) /
                   Rat(factorial(static_cast<unsigned>(n + l + 1)));
        term *= Rat(binomial(static_cast<unsigned>(n + l), static_cast<unsigned>(l)));
        term *= rat_pow(-alpha, m - l) / Rat(factorial(static_cast<unsigned>(m - l)));
        s += term;
    }
    return s * Rat(factorial(static_cast<unsigned>(m)));
}

Rat bbB_sum_form(long m, long n, const Rat& alpha, const Rat& lam) {
    if (m < 0) throw Error("bbB_sum_form: m must be nonnegative");
    Rat s(0);
    Rat apl = alpha + lam;
    for (long l = 0; l <= m; ++l) {
        if (n + l < -1) continue; // Euler-Maclaurin supplies orders >= -1 only
        Rat term = bernoulli_poly(static_cast<unsigned>(n + l + 1), apl) /
                   Rat(factorial(static_cast<unsigned>(n + l + 1)));
        term *= falling_binom(n + l, l);
        term *= rat_pow(-alpha, m - l) / Rat(factorial(static_cast<unsigned>(m - l)));
        s += term;
    }
    return s * Rat(factorial(static_cast<unsigned>(m)));
}

Rat bbB_via_bcoef(long m, long n, const Rat& alpha, const Rat& lam) {
    if (m < 0 || n < 0) throw Error("bbB_via_bcoef: needs m, n >= 0");
    auto binom_ext_l = [](long mm, long ll) -> Rat {
        if (ll >= 0 && ll <= mm)
            return Rat(binomial(static_cast<unsigned>(mm), static_cast<unsigned>(ll)));
        if (mm == -1) return Rat(1);
        return Rat(0);
    };
    Rat s(0);
    for (long l = 0; l <= m + n + 1; ++l) {
        Rat b(0);
        // The proof's substitution j = m - l restricts the inner index to
        // k <= m as well as k <= l.
        for (long k = 0; k <= std::min(l, m); ++k) {
            Rat t = binom_ext_l(m + n - k, n);
            if (k % 2 == 1) t = -t;
            t /= Rat(factorial(static_cast<unsigned>(k))) *
                 Rat(factorial(static_cast<unsigned>(l - k)));
            b += t;
        }
        if (m + n + 1 - l < 0) continue;
        b *= Rat(factorial(static_cast<unsigned>(m))) /
             Rat(factorial(static_cast<unsigned>(m + n + 1 - l)));
        s += b * bernoulli_poly(static_cast<unsigned>(m + n + 1 - l), lam) * rat_pow(alpha, l);
    }
    return s;
}

} // namespace plumb
