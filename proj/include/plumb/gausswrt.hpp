// WRT invariants as finite weighted Gauss sums, two independent routes:
//
//  * wrt_gppv   — brute-force sum over mu in (Z \ kZ)^V / 2k Z^V (the A.12
//                 form); (2k-2)^{|V|} terms, the oracle.
//  * wrt_reduced — the V_{>=2}-coset sum over mu in (Z\kZ)^{V>=2} / 2kS with
//                 per-vertex rational functions G_v; (2k-2)^{|V>=2|} det S
//                 terms.
//
// Plus the Deloup-Turaev reciprocity identity used to prove the reduction.

#pragma once

#include "plumb/ratfunc.hpp"

namespace plumb {

Complex root_of_unity(const Int& num, const Int& den); // e(num/den), den > 0

struct WRTResult {
    Complex value;
    long k = 0;
    enum class Method { gppv_a12, reduced } method = Method::gppv_a12;
    unsigned long long term_count = 0;
    Rat prefactor_phase; // argument (in turns) of the unit part of the prefactor

    std::string to_json(unsigned digits = 30) const;
};

WRTResult wrt_gppv(const LinkingData& ld, long k,
                   unsigned long long term_budget = 100000000ULL,
                   int parallelism = 1);

WRTResult wrt_reduced(const LinkingData& ld, long k);

struct ReciprocityInstance {
    IMat gram;          // symmetric, nondegenerate: the pairing on L = Z^n
    RMat h;             // self-adjoint automorphism of L (x) R
    long k = 0;
    std::vector<Rat> u; // element of (1/k) L
};

struct ReciprocityResult {
    Complex lhs, rhs;
    int sigma = 0;
    Int lhs_terms, rhs_terms;
};

// Evaluates both sides of the reciprocity identity; throws
// PreconditionViolated naming the failed hypothesis.
ReciprocityResult reciprocity_check(const ReciprocityInstance& inst);

} // namespace plumb
