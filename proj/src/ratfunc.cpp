#include "plumb/ratfunc.hpp"

namespace plumb {

Int binomial_ext(const Int& m, const Int& l) {
    if (l >= 0 && l <= m) {
        Int r = 1;
        // C(m, l) with the smaller cofactor.
        Int ml = m - l;
        Int kk = std::min(l, ml);
        for (Int i = 0; i < kk; ++i) {
            r *= m - i;
            r /= i + 1;
        }
        return r;
    }
    if (m == -1) return 1;
    return 0;
}

Int P_vertex(const Int& n, int deg) {
    if (deg <= 3) return 1;
    Int num = 1;
    for (int j = 1; j <= deg - 3; ++j) num *= n + j;
    return num / factorial(static_cast<unsigned>(deg - 3));
}

Rat P_weight(const std::vector<Int>& n, const LinkingData& ld) {
    if (n.size() != ld.vge3.size()) throw Error("P_weight: index size mismatch");
    Rat p(1);
    for (size_t i = 0; i < n.size(); ++i)
        p *= Rat(P_vertex(n[i], ld.part.degree[ld.vge3[i]]));
    return p;
}

Complex G_v_eval(const LinkingData& ld, int v, const Complex& q) {
    int deg = ld.part.degree[v];
    long m = ld.M(v).convert_to<long>();
    if (q.abs() == 0) throw PoleAtInput("G_v_eval: q = 0");
    Complex qm = cpow(q, m);
    Complex head = qm - Complex::one() / qm;
    if (deg > 2 && head.abs() == 0)
        throw PoleAtInput("G_v_eval: q^{2 M_v} = 1 at a pole of G_v");
    Complex r = cpow(head, 2 - deg);
    for (int leaf : ld.part.leaf_nbrs.at(v)) {
        long e = m / ld.g.weights[leaf]; // exact: w_i | M_v
        Complex qe = cpow(q, e);
        r *= qe - Complex::one() / qe;
    }
    return r;
}

Complex G_v_at(const LinkingData& ld, int v, const Rat& phase_turns, const Real& decay) {
    int deg = ld.part.degree[v];
    Int m = ld.M(v);
    auto factor = [&](const Int& e) {
        // q^e - q^{-e} at q = e(phase) exp(-decay)
        Complex u = e_of(phase_turns * Rat(e));
        if (decay == 0) return u - u.conj();
        Real mag = exp(-decay * to_real(e));
        return u * mag - u.conj() / mag;
    };
    Complex head = factor(m);
    if (deg > 2 && head.abs() == 0)
        throw PoleAtInput("G_v_at: evaluation at a pole of G_v");
    Complex r = cpow(head, 2 - deg);
    for (int leaf : ld.part.leaf_nbrs.at(v)) r *= factor(m / Int(ld.g.weights[leaf]));
    return r;
}

GvLaurent G_v_laurent(const LinkingData& ld, const HalfCharacter& hc, int v,
                      const Rat& exponent_bound) {
    int deg = ld.part.degree[v];
    Int m2 = 2 * ld.M(v);
    int sgn_m = ld.M(v) > 0 ? 1 : -1;

    // G_v = (x - 1)^{2-deg} sum_alpha eps(alpha) x^alpha with x = q^{2M_v};
    // the region 0 < |q|^{sgn M} < 1 always has |x| < 1.
    GvLaurent out;
    out.region_sign = sgn_m;
    // Exponents of q are 2M_v(n + alpha); with M_v < 0 the q-exponents
    // decrease in n, but |q| > 1 there, so truncation is by the value of
    // sgn(M) * exponent, which grows with n either way.  The working series
    // is keyed by that flipped exponent and unflipped at the end.
    QSeries s(exponent_bound);
    if (deg >= 2) {
        int sign = (deg % 2 == 0) ? 1 : -1; // (x-1)^{2-deg} = (-1)^deg (1-x)^{2-deg}
        for (auto& e : hc.entries) {
            for (Int n = 0;; ++n) {
                Rat expo = Rat(m2) * (Rat(n) + e.alpha); // q-exponent
                Rat key = expo * sgn_m;
                if (key > exponent_bound) break;
                Int c = binomial_ext(n + deg - 3, n);
                if (c != 0) s.add_term(key, Rat(sign * e.sign) * Rat(c));
                if (deg == 2 && n > 0) break; // binom_ext(n-1, n) = 0 past n = 0
            }
        }
    } else {
        // (x-1)^{2-deg} is a polynomial: finite expansion, no region issues.
        int pw = 2 - deg;
        for (auto& e : hc.entries)
            for (int j = 0; j <= pw; ++j) {
                Rat expo = Rat(m2) * (Rat(j) + e.alpha);
                Int c = binomial(static_cast<unsigned>(pw), static_cast<unsigned>(j));
                int sgn = ((pw - j) % 2 == 0) ? 1 : -1;
                s.add_term(expo * sgn_m, Rat(e.sign * sgn) * Rat(c));
            }
    }
    // Store with true q-exponents: un-flip the key scaling.
    QSeries final_series;
    for (auto& [k, c] : s.terms())
        final_series.add_term(Rat(k, s.denominator_lcm()) * sgn_m, c);
    out.series = final_series;
    return out;
}

std::pair<long, Rat> G_v_leading(const LinkingData& ld, int v) {
    int deg = ld.part.degree[v];
    long nbar = static_cast<long>(ld.part.leaf_nbrs.at(v).size());
    long order = 2 - deg + nbar;
    Rat coeff = rat_pow(Rat(2), order) * rat_pow(Rat(ld.M(v)), order - 1);
    return {order, coeff};
}

} // namespace plumb
