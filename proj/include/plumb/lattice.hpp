// Exact linking-matrix data: the block inverse W^-1 restricted to the
// high-degree vertices, its inverse S^-1, and the degree bookkeeping that
// every invariant downstream consumes.
//
// S is the V_{>=2} x V_{>=2} submatrix of -W^{-1}; it is positive definite
// with integer entries and det S = prod |w_i| over leaves.  The block
// identity reads
//     W^{-1} = -[T; I] S [T^t  I] + [W_1^{-1} 0; 0 0].

#pragma once

#include "plumb/graph.hpp"
#include "plumb/smith.hpp"

namespace plumb {

struct LinkingData {
    PlumbingGraph g;
    DegreePartition part;
    IMat W;

    // Row/column order of S and T follows these index lists.
    std::vector<int> v1;    // leaves, ascending graph index
    std::vector<int> vge2;  // the rest, ascending graph index
    std::vector<int> vge3;

    RMat T;        // |V1| x |Vge2|,  T = -W_1^{-1} W_{1,>=2}
    RMat S_rat;    // inverse Schur complement, positive definite when admissible
    RMat Sinv;     // = -W_{>=2} + diag(sum_{i in vbar} 1/w_i)
    IMat S;        // integer view of S_rat (valid iff s_integral)
    bool s_integral = false;

    Int detW;
    Rat detS_rat;
    Int detS; // valid iff s_integral

    bool admissible = false;

    int n1() const { return static_cast<int>(v1.size()); }
    int nge2() const { return static_cast<int>(vge2.size()); }
    int nge3() const { return static_cast<int>(vge3.size()); }

    int pos_ge2(int graph_idx) const; // row of S for a V_{>=2} vertex
    const Int& M(int graph_idx) const; // leaf product M_v
    int deg(int graph_idx) const { return part.degree[graph_idx]; }

    // phi = sum_v (w_v + 3) + sum_{leaves} 1/w_i; Zhat = q^{-phi/4} * core.
    Rat phi() const;

    // Q(x) = x^t S x on the V_{>=2} coordinates.
    Rat quad_S(const std::vector<Rat>& x) const;
    Rat quad_Sinv_over(const std::vector<Int>& mu, const Int& scale) const; // mu^t S^-1 mu / scale

    // W^{-1} (graph vertex order), assembled from the block identity.
    RMat winv_from_blocks() const;

    // min over V_{>=3} of |vbar| + 2 - deg(v); > 0 is the main theorem's
    // hypothesis.  Returns the minimizing vertex in *argmin when nonempty.
    long condition_margin(int* argmin = nullptr) const;

    // Exact lower bound for the smallest eigenvalue of S (1 / row-sum norm
    // of S^-1); used for certified series tails.
    Rat lambda_min_lb() const;
};

// Builds the full linking data; throws SingularBlock when W_1 or the Schur
// complement is singular.  Admissibility is recorded, not enforced: callers
// that need it (invariant computations) check ld.admissible themselves.
LinkingData build_linking_data(const PlumbingGraph& g);

bool is_negative_definite(const IMat& W);

CosetSystem coset_reps(const IMat& A); // throws SingularMatrix

// 2kS as an integer matrix (requires s_integral).
IMat two_k_S(const LinkingData& ld, long k);

} // namespace plumb
