// Per-vertex rational functions
//     G_v(q) = (q^{M_v} - q^{-M_v})^{2-deg(v)} prod_i (q^{M_v/w_i} - q^{-M_v/w_i})
// with their series expansions and the polynomial weight P(n).

#pragma once

#include "plumb/chardata.hpp"

namespace plumb {

// Extended binomial: m!/(l!(m-l)!) if 0 <= l <= m; 1 if m = -1; 0 otherwise.
Int binomial_ext(const Int& m, const Int& l);

// P(n) = prod_{v in V>=4} (n_v + deg - 3)...(n_v + 1)/(deg - 3)!, a genuine
// polynomial over all of Z^{V>=3} (n indexed in ld.vge3 order).  Agrees with
// prod binomial_ext(n_v + deg - 3, n_v) only on n >= -1; do not conflate.
Rat P_weight(const std::vector<Int>& n, const LinkingData& ld);

// Single-vertex weight polynomial (n+1)...(n+deg-3)/(deg-3)!; always an
// integer, identically 1 for deg <= 3.
Int P_vertex(const Int& n, int deg);

// G_v at a general complex point; all exponents are exact integers.
// Throws PoleAtInput when deg(v) > 2 and q^{2 M_v} = 1.
Complex G_v_eval(const LinkingData& ld, int v, const Complex& q);

// G_v at q = e(phase) * exp(-decay), phases exact.  Used on roots of unity
// (decay = 0 requires the caller to stay off poles) and radial points.
Complex G_v_at(const LinkingData& ld, int v, const Rat& phase_turns, const Real& decay);

// Laurent expansion of G_v in the region 0 < |q|^{sgn M_v} < 1, truncated at
// the exponent bound: sum over S_v and n >= 0 of
//     (-1)^{deg} eps(alpha) binom_ext(n+deg-3, n) q^{2 M_v (n + alpha)};
// for deg(v) < 2 the (q^{2M}-1)^{2-deg} factor is expanded as a finite
// binomial instead.  The (-1)^{deg} makes this the actual expansion of G_v.
struct GvLaurent {
    QSeries series;     // in q; exponents lie in (1/2M_v) Z
    int region_sign;    // sgn M_v: valid for 0 < |q|^{region_sign} < 1
};
GvLaurent G_v_laurent(const LinkingData& ld, const HalfCharacter& hc, int v,
                      const Rat& exponent_bound);

// Leading behavior at q = 1: G_v = coeff (q-1)^order + O((q-1)^{order+1})
// with order = 2 - deg + |vbar| and coeff = 2^order M_v^{order-1}.
std::pair<long, Rat> G_v_leading(const LinkingData& ld, int v);

} // namespace plumb
