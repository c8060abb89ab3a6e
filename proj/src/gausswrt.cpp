#include "plumb/gausswrt.hpp"

#include <json.hpp>

#include <atomic>
#include <thread>

namespace plumb {

Complex root_of_unity(const Int& num, const Int& den) {
    if (den <= 0) throw Error("root_of_unity: need den > 0");
    return e_of(Rat(mod_euclid(num, den), den));
}

std::string WRTResult::to_json(unsigned digits) const {
    nlohmann::json j;
    j["k"] = k;
    j["method"] = method == Method::gppv_a12 ? "gppv_a12" : "reduced";
    j["re"] = real_str(value.re, digits);
    j["im"] = real_str(value.im, digits);
    j["digits"] = precision();
    j["terms"] = term_count;
    j["prefactor_phase"] = rat_str(prefactor_phase);
    return j.dump();
}

namespace {

// Odometer state for one chunk of the (2k-2)^{|V|} product range
// [begin, end); digit 0 is fastest.  Suffix products keep the per-term
// complex cost near O(1).
struct GppvChunk {
    const std::vector<long>& allowed;               // residues mod 2k, size A
    const std::vector<std::vector<Complex>>& fv;    // per vertex: factor per allowed index
    const std::vector<Complex>& zeta4k;             // e(j / 4k), j in [0, 4k)
    const IMat& W;
    long fourk;
    int n;

    Complex run(unsigned long long begin, unsigned long long end) {
        size_t A = allowed.size();
        std::vector<size_t> dig(n);
        unsigned long long t = begin;
        for (int i = 0; i < n; ++i) {
            dig[i] = t % A;
            t /= A;
        }
        std::vector<long> mu(n);
        for (int i = 0; i < n; ++i) mu[i] = allowed[dig[i]];

        auto phase_of = [&]() {
            long long p = 0;
            for (int i = 0; i < n; ++i) {
                p += W(i, i).convert_to<long long>() * mu[i] % fourk * mu[i] % fourk;
                for (int j = i + 1; j < n; ++j)
                    if (W(i, j) != 0) p += 2LL * mu[i] * mu[j];
                p %= fourk;
            }
            p %= fourk;
            if (p < 0) p += fourk;
            return static_cast<size_t>(p);
        };

        // suffix[i] = prod_{j >= i} fv[j][dig[j]]; suffix[n] = 1
        std::vector<Complex> suffix(n + 1);
        suffix[n] = Complex::one();
        for (int i = n - 1; i >= 0; --i) suffix[i] = fv[i][dig[i]] * suffix[i + 1];

        KahanSum acc;
        unsigned long long idx = begin;
        size_t ph = phase_of();
        for (;;) {
            acc.add(zeta4k[ph] * suffix[0]);
            if (++idx >= end) break;
            int d = 0;
            for (;;) {
                long old = mu[d];
                if (++dig[d] == A) {
                    dig[d] = 0;
                    mu[d] = allowed[0];
                } else {
                    mu[d] = allowed[dig[d]];
                }
                // phase update: w_d (mu'^2 - mu^2) + 2 (mu' - mu) sum_adj
                long long delta = W(d, d).convert_to<long long>() *
                                  ((mu[d] * mu[d] - old * old) % fourk) % fourk;
                for (int j = 0; j < n; ++j)
                    if (j != d && W(d, j) != 0) delta += 2LL * (mu[d] - old) % fourk * mu[j];
                long long np = (static_cast<long long>(ph) + delta) % fourk;
                if (np < 0) np += fourk;
                ph = static_cast<size_t>(np);
                if (dig[d] != 0 || A == 1) break;
                ++d; // carry
            }
            for (int i = d; i >= 0; --i) suffix[i] = fv[i][dig[i]] * suffix[i + 1];
        }
        return acc.value();
    }
};

} // namespace

WRTResult wrt_gppv(const LinkingData& ld, long k, unsigned long long term_budget,
                   int parallelism) {
    if (k < 2) throw LevelTooSmall("wrt_gppv: need level k >= 2");
    if (!ld.admissible) throw NotAdmissible("wrt_gppv: graph is not admissible");
    int n = ld.g.size();
    size_t A = static_cast<size_t>(2 * k - 2);
    long double count_ld = 1;
    for (int i = 0; i < n; ++i) count_ld *= static_cast<long double>(A);
    if (count_ld > static_cast<long double>(term_budget))
        throw Infeasible("wrt_gppv: (2k-2)^{|V|} exceeds the term budget");
    unsigned long long total = 1;
    for (int i = 0; i < n; ++i) total *= A;

    long fourk = 4 * k;
    std::vector<Complex> zeta4k;
    zeta4k.reserve(fourk);
    for (long j = 0; j < fourk; ++j) zeta4k.push_back(e_of(Rat(j, fourk)));

    std::vector<long> allowed;
    for (long m = 1; m < 2 * k; ++m)
        if (m != k) allowed.push_back(m);

    // (zeta_2k^m - zeta_2k^{-m})^{2 - deg(v)}
    std::vector<std::vector<Complex>> fv(n);
    auto deg = ld.g.degrees();
    for (int v = 0; v < n; ++v) {
        fv[v].reserve(A);
        for (long m : allowed) {
            Complex d = e_of(Rat(m, 2 * k)) - e_of(Rat(-m, 2 * k));
            fv[v].push_back(cpow(d, 2 - deg[v]));
        }
    }

    // Fixed 64-chunk plan keeps results identical for any thread count.
    int nchunks = 64;
    std::vector<std::pair<unsigned long long, unsigned long long>> ranges;
    {
        unsigned long long base = total / nchunks, rem = total % nchunks, at = 0;
        for (int c = 0; c < nchunks; ++c) {
            unsigned long long len = base + (static_cast<unsigned long long>(c) < rem ? 1 : 0);
            ranges.emplace_back(at, at + len);
            at += len;
        }
    }

    std::vector<Complex> partial(nchunks, Complex::zero());
    auto work = [&](int c) {
        if (ranges[c].first >= ranges[c].second) return;
        GppvChunk chunk{allowed, fv, zeta4k, ld.W, fourk, n};
        partial[c] = chunk.run(ranges[c].first, ranges[c].second);
    };

    if (parallelism <= 1) {
        for (int c = 0; c < nchunks; ++c) work(c);
    } else {
        std::atomic<int> next{0};
        unsigned prec = precision();
        auto worker = [&]() {
            set_precision(prec); // per-thread mpfr default
            for (;;) {
                int c = next.fetch_add(1);
                if (c >= nchunks) return;
                work(c);
            }
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < parallelism; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    KahanSum sum;
    for (auto& p : partial) sum.add(p);

    // prefactor e(|V|/8) zeta_4k^{-sum (w_v+3)} / (2 sqrt(2k)^{|V|} (zeta_2k - zeta_2k^{-1}))
    Rat wsum(0);
    for (int v = 0; v < n; ++v) wsum += Rat(ld.g.weights[v] + 3);
    Rat phase = Rat(n, 8) - wsum / (4 * k) - Rat(1, 4); // -1/4 pulls i out of the sine
    Complex unit = e_of(phase);
    Real denom = 2 * pow(sqrt(Real(2) * k), n) * 2 * sin(pi() / k);

    WRTResult r;
    r.k = k;
    r.method = WRTResult::Method::gppv_a12;
    r.term_count = total;
    r.prefactor_phase = frac(phase);
    r.value = unit * sum.value() / denom;
    return r;
}

WRTResult wrt_reduced(const LinkingData& ld, long k) {
    if (k < 2) throw LevelTooSmall("wrt_reduced: need level k >= 2");
    if (!ld.admissible) throw NotAdmissible("wrt_reduced: graph is not admissible");
    if (!ld.s_integral) throw Error("wrt_reduced: S is not integral");
    int nge2 = ld.nge2();

    CosetSystem cosets(two_k_S(ld, k));
    KahanSum sum;
    unsigned long long kept = 0;
    cosets.for_each([&](const std::vector<Int>& mu) {
        for (int i = 0; i < nge2; ++i)
            if (mod_euclid(mu[i], Int(k)) == 0) return; // mu_v in kZ drops out
        ++kept;
        Rat qphase = -ld.quad_Sinv_over(mu, Int(4) * k);
        Complex term = e_of(qphase);
        for (int i = 0; i < nge2; ++i) {
            int v = ld.vge2[i];
            // zeta_{2 k M_v}^{mu_v}: exact phase mu_v / (2 k M_v)
            Rat ph = rat_frac(mu[i], Int(2) * k * ld.M(v));
            term *= G_v_at(ld, v, ph, Real(0));
        }
        sum.add(term);
    });

    // Filter size is forced: (2(k-1))^{|V>=2|} det S.
    Int expected = ld.detS;
    for (int i = 0; i < nge2; ++i) expected *= 2 * (k - 1);
    if (Int(kept) != abs(expected))
        throw Error("wrt_reduced: coset filter count mismatch");

    Rat phase = Rat(nge2, 8) - ld.phi() / (4 * k) - Rat(1, 4);
    if (ld.n1() % 2 == 1) phase += Rat(1, 2); // (-1)^{|V_1|}
    Complex unit = e_of(phase);
    Real denom = 2 * pow(sqrt(Real(2) * k), nge2) * 2 * sin(pi() / k);
    for (int i : ld.v1) denom *= sqrt(Real(-ld.g.weights[i]));

    WRTResult r;
    r.k = k;
    r.method = WRTResult::Method::reduced;
    r.term_count = kept;
    r.prefactor_phase = frac(phase);
    r.value = unit * sum.value() / denom;
    return r;
}

ReciprocityResult reciprocity_check(const ReciprocityInstance& inst) {
    const IMat& G = inst.gram;
    const RMat& H = inst.h;
    int n = G.rows;
    long k = inst.k;
    if (G.rows != G.cols || H.rows != H.cols || G.rows != H.rows)
        throw PreconditionViolated("reciprocity: dimension mismatch");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j)
            if (G(i, j) != G(j, i)) throw PreconditionViolated("reciprocity: gram not symmetric");
    Int detG = det_bareiss(G);
    if (detG == 0) throw PreconditionViolated("reciprocity: degenerate pairing");

    // A = G H is the matrix of <x, h(y)>; self-adjointness of h <=> A symmetric.
    RMat A = mat_mul(to_rat(G), H);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j)
            if (A(i, j) != A(j, i)) throw PreconditionViolated("reciprocity: h not self-adjoint");
    Rat detH = det_rat(H);
    if (detH == 0) throw PreconditionViolated("reciprocity: h not an automorphism");

    if (k <= 0 || mod_euclid(Int(k), detG) != 0)
        throw PreconditionViolated("reciprocity: k not a positive multiple of |L'/L|");
    if (inst.u.size() != static_cast<size_t>(n))
        throw PreconditionViolated("reciprocity: u has wrong dimension");
    for (auto& ui : inst.u) {
        Rat kui = ui * k;
        if (denominator(kui) != 1)
            throw PreconditionViolated("reciprocity: u not in (1/k) L");
    }

    RMat Ginv = inverse(to_rat(G));
    // h(L') <= L'  <=>  G H G^{-1} integral
    RMat Mmat = mat_mul(A, Ginv);
    IMat M(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (denominator(Mmat(i, j)) != 1)
                throw PreconditionViolated("reciprocity: h(L') not contained in L'");
            M(i, j) = numerator(Mmat(i, j));
        }

    // (k/2) <y, h(y)> in Z for all y in L' = G^{-1} Z^n: test the basis and
    // pairwise sums of G^{-1} e_i.
    RMat QL = mat_mul(mat_mul(Ginv.transposed(), A), Ginv); // <b_i, h(b_j)>
    auto q_int = [&](const Rat& q) { return denominator(Rat(k, 2) * q) == 1; };
    for (int i = 0; i < n; ++i) {
        if (!q_int(QL(i, i)))
            throw PreconditionViolated("reciprocity: (k/2)<y,h(y)> not integral on L'");
        for (int j = 0; j < i; ++j)
            if (!q_int(QL(i, i) + 2 * QL(i, j) + QL(j, j)))
                throw PreconditionViolated("reciprocity: (k/2)<y,h(y)> not integral on L'");
    }

    ReciprocityResult out;
    out.sigma = signature(A);

    // lhs = sum over x in (Z/k)^n of e( x^t A x / 2k + x^t G u )
    KahanSum lhs;
    std::vector<long> x(n, 0);
    Int lhs_count = 1;
    for (int i = 0; i < n; ++i) lhs_count *= k;
    out.lhs_terms = lhs_count;
    for (;;) {
        Rat ph(0);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) ph += Rat(x[i]) * A(i, j) * Rat(x[j]);
        }
        ph /= Rat(2 * k);
        for (int i = 0; i < n; ++i) {
            Rat gu(0);
            for (int j = 0; j < n; ++j) gu += Rat(G(i, j)) * inst.u[j];
            ph += Rat(x[i]) * gu;
        }
        lhs.add(e_of(ph));
        int d = 0;
        while (d < n && ++x[d] == k) x[d++] = 0;
        if (d == n) break;
    }
    out.lhs = lhs.value();

    // rhs = e(sigma/8) k^{n/2} / sqrt(|det G| |det H|) *
    //       sum over y in L'/h(L) of e( -(k/2) <y+u, h^{-1}(y+u)> ).
    // In xi-coordinates (y = G^{-1} xi) the domain is Z^n / (GH) Z^n: the
    // Poisson dual of L/kL.  (Summing over L'/h(L') instead only works for
    // unimodular L; instances with |det G| > 1 pin the domain down.)
    IMat Aint(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (denominator(A(i, j)) != 1)
                throw PreconditionViolated("reciprocity: <x, h(y)> not Z-valued on L");
            Aint(i, j) = numerator(A(i, j));
        }
    RMat Ainv = inverse(A);
    CosetSystem cs(Aint);
    out.rhs_terms = cs.size();
    KahanSum rhs;
    cs.for_each([&](const std::vector<Int>& xi) {
        // <y+u, h^{-1}(y+u)> = (xi + Gu)^t A^{-1} (xi + Gu)
        std::vector<Rat> w(n, Rat(0));
        for (int i = 0; i < n; ++i) {
            w[i] = Rat(xi[i]);
            for (int j = 0; j < n; ++j) w[i] += Rat(G(i, j)) * inst.u[j];
        }
        Rat ph(0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) ph += w[i] * Ainv(i, j) * w[j];
        ph *= -Rat(k, 2);
        rhs.add(e_of(ph));
    });
    Real pref = pow(sqrt(Real(k)), n) /
                sqrt(to_real(Rat(abs(detG)) * abs(detH)));
    out.rhs = e_of(Rat(out.sigma, 8)) * pref * rhs.value();
    return out;
}

} // namespace plumb
