#include "plumb/lattice.hpp"

#include <algorithm>
#include <limits>

namespace plumb {

int LinkingData::pos_ge2(int graph_idx) const {
    auto it = std::find(vge2.begin(), vge2.end(), graph_idx);
    if (it == vge2.end()) throw Error("pos_ge2: vertex not in V_{>=2}");
    return static_cast<int>(it - vge2.begin());
}

const Int& LinkingData::M(int graph_idx) const {
    auto it = part.leaf_prod.find(graph_idx);
    if (it == part.leaf_prod.end()) throw Error("M_v: vertex not in V_{>=2}");
    return it->second;
}

Rat LinkingData::phi() const {
    Rat s(0);
    for (int v = 0; v < g.size(); ++v) s += Rat(g.weights[v] + 3);
    for (int i : v1) s += rat_frac(Int(1), Int(g.weights[i]));
    return s;
}

Rat LinkingData::quad_S(const std::vector<Rat>& x) const {
    Rat q(0);
    int n = nge2();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) q += x[i] * S_rat(i, j) * x[j];
    return q;
}

Rat LinkingData::quad_Sinv_over(const std::vector<Int>& mu, const Int& scale) const {
    Rat q(0);
    int n = nge2();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) q += Rat(mu[i] * mu[j]) * Sinv(i, j);
    return q / Rat(scale);
}

RMat LinkingData::winv_from_blocks() const {
    int n = g.size(), m = n1(), r = nge2();
    // Block order (V1 | V>=2) first, then permute to graph order.
    RMat blk(n, n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < r; ++j) {
            Rat v(0);
            for (int a = 0; a < r; ++a) v += T(i, a) * S_rat(a, j);
            blk(i, m + j) = -v;
            blk(m + j, i) = -v;
        }
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            Rat v(0);
            for (int a = 0; a < r; ++a)
                for (int b = 0; b < r; ++b) v += T(i, a) * S_rat(a, b) * T(j, b);
            blk(i, j) = -v;
            if (i == j) blk(i, j) += rat_frac(Int(1), Int(g.weights[v1[i]]));
        }
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) blk(m + i, m + j) = -S_rat(i, j);

    std::vector<int> order;
    order.insert(order.end(), v1.begin(), v1.end());
    order.insert(order.end(), vge2.begin(), vge2.end());
    RMat out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out(order[i], order[j]) = blk(i, j);
    return out;
}

long LinkingData::condition_margin(int* argmin) const {
    long best = std::numeric_limits<long>::max();
    int who = -1;
    for (int v : vge3) {
        long nbar = static_cast<long>(part.leaf_nbrs.at(v).size());
        long margin = nbar + 2 - part.degree[v];
        if (margin < best) {
            best = margin;
            who = v;
        }
    }
    if (argmin) *argmin = who;
    if (vge3.empty()) return 1; // vacuous condition
    return best;
}

Rat LinkingData::lambda_min_lb() const {
    int n = nge2();
    if (n == 0) return Rat(1);
    Rat worst(0);
    for (int i = 0; i < n; ++i) {
        Rat row(0);
        for (int j = 0; j < n; ++j) row += abs(Sinv(i, j));
        if (row > worst) worst = row;
    }
    if (worst == 0) return Rat(1);
    return Rat(1) / worst;
}

LinkingData build_linking_data(const PlumbingGraph& g) {
    LinkingData ld;
    ld.g = g;
    ld.part = degree_partition(g);
    ld.W = linking_matrix(g);
    ld.v1 = ld.part.v1;
    ld.vge2 = ld.part.vge2;
    ld.vge3 = ld.part.vge3;
    ld.detW = det_bareiss(ld.W);

    int m = ld.n1(), r = ld.nge2();
    // W_1 must be diagonal; two adjacent leaves only happen for the 2-vertex
    // tree, which the block calculus does not cover.
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (ld.W(ld.v1[i], ld.v1[j]) != 0)
                throw SingularBlock("block_inverse: adjacent leaves (W_1 not diagonal)");
    for (int i = 0; i < m; ++i)
        if (g.weights[ld.v1[i]] == 0)
            throw SingularBlock("block_inverse: W_1 singular (zero leaf weight)");

    // T = -W_1^{-1} W_{1,>=2}
    ld.T = RMat(m, r);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < r; ++j)
            ld.T(i, j) = rat_frac(-ld.W(ld.v1[i], ld.vge2[j]), Int(g.weights[ld.v1[i]]));

    // S^-1 = -W_{>=2} + diag(sum_{i in vbar} 1/w_i); equivalently the Schur
    // complement -(W_{>=2} - W_{>=2,1} W_1^{-1} W_{1,>=2}).
    ld.Sinv = RMat(r, r);
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) ld.Sinv(i, j) = Rat(-ld.W(ld.vge2[i], ld.vge2[j]));
        for (int leaf : ld.part.leaf_nbrs.at(ld.vge2[i]))
            ld.Sinv(i, i) += rat_frac(Int(1), Int(g.weights[leaf]));
    }
    try {
        ld.S_rat = inverse(ld.Sinv);
    } catch (const SingularMatrix&) {
        throw SingularBlock("block_inverse: singular Schur complement");
    }
    ld.detS_rat = det_rat(ld.S_rat);

    ld.s_integral = true;
    ld.S = IMat(r, r);
    for (int i = 0; i < r && ld.s_integral; ++i)
        for (int j = 0; j < r; ++j) {
            if (denominator(ld.S_rat(i, j)) != 1) {
                ld.s_integral = false;
                break;
            }
            ld.S(i, j) = numerator(ld.S_rat(i, j));
        }
    if (ld.s_integral) {
        if (denominator(ld.detS_rat) != 1)
            throw Error("block_inverse: integer S with non-integer determinant");
        ld.detS = numerator(ld.detS_rat);
    }

    ValidationReport rep = validate(g);
    ld.admissible = rep.admissible();
    return ld;
}

bool is_negative_definite(const IMat& W) {
    IMat neg(W.rows, W.cols);
    for (size_t i = 0; i < W.a.size(); ++i) neg.a[i] = -W.a[i];
    return is_positive_definite(neg);
}

CosetSystem coset_reps(const IMat& A) { return CosetSystem(A); }

IMat two_k_S(const LinkingData& ld, long k) {
    if (!ld.s_integral) throw Error("two_k_S: S is not integral");
    IMat a = ld.S;
    for (auto& x : a.a) x *= 2 * k;
    return a;
}

} // namespace plumb
