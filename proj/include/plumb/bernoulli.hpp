// Bernoulli polynomials and the Euler-Maclaurin coefficient table B_{m,n}.

#pragma once

#include "plumb/numeric.hpp"

namespace plumb {

// B_m(x), exact; cached coefficient vectors up to a configurable maximum
// order (default 64).  Throws OrderTooLarge beyond the maximum.
Rat bernoulli_poly(unsigned m, const Rat& x);
Rat bernoulli_number(unsigned m);
unsigned bernoulli_max_order();
void set_bernoulli_max_order(unsigned m);

// The polynomial-weight Euler-Maclaurin coefficient:
//   n >= 0:          m! sum_{l=0..m} B_{n+l+1}(alpha+lam)/(n+l+1)! C(n+l,l) (-alpha)^{m-l}/(m-l)!
//   -m-1 <= n <= -1: (-1)^m m! alpha^{m+n+1} / (m+n+1)!
//   n <= -m-2:       0
// where C(n+l, l) is the ordinary binomial (the n+l = -1 row continues as
// C(-1, l) = (-1)^l, which the middle case already folds in).
Rat bbB(long m, long n, const Rat& alpha, const Rat& lam);

// The same quantity through the closed sum with the falling-factorial
// binomial, valid for every n; used to cross-check bbB.
Rat bbB_sum_form(long m, long n, const Rat& alpha, const Rat& lam);

// The b_{m,n,l}-coefficient route for n >= 0 (the proof's display):
// B_{m,n} = sum_{0<=l<=m+n+1} b_{m,n,l} B_{m+n+1-l}(lam) alpha^l.
Rat bbB_via_bcoef(long m, long n, const Rat& alpha, const Rat& lam);

} // namespace plumb
