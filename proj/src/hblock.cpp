#include "plumb/hblock.hpp"

#include <json.hpp>

namespace plumb {

Int pv_residue(long d, long l) {
    if (d < 0) throw Error("pv_residue: need d >= 0");
    if (((l - d) % 2 + 2) % 2 != 0) return 0; // parity
    if (d >= 3) {
        Int n = Int(l - d) / 2 + 1;
        Int p = P_vertex(n, static_cast<int>(d));
        return (n >= 0) ? p : -p;
    }
    // (z - 1/z)^{2-d} is a Laurent polynomial; the two contour pieces each
    // pick up its z^{-l} coefficient.
    // (z - 1/z)^{pw} = sum_j C(pw, j) (-1)^j z^{pw - 2j}; the z^{-l}
    // coefficient sits at j = (pw + l)/2.
    long pw = 2 - d;
    long j2 = pw + l;
    if (j2 < 0 || j2 % 2 != 0) return 0;
    long j = j2 / 2;
    if (j > pw) return 0;
    Int c = 2 * binomial(static_cast<unsigned>(pw), static_cast<unsigned>(j));
    return (j % 2 == 0) ? c : -c;
}

namespace {

// Q = L^t D L with unit upper-triangular "centering" coefficients:
//   Q(x) = sum_i d_i ( x_i + sum_{j>i} c_{ij} x_j )^2.
struct Ldl {
    int n;
    std::vector<Rat> d;
    RMat c;

    explicit Ldl(RMat q) : n(q.rows), c(q.rows, q.rows) {
        d.resize(n);
        for (int i = 0; i < n; ++i) {
            d[i] = q(i, i);
            if (d[i] <= 0) throw Error("enumerate_ellipsoid: form not positive definite");
            for (int j = i + 1; j < n; ++j) c(i, j) = q(i, j) / d[i];
            for (int j = i + 1; j < n; ++j)
                for (int kk = j; kk < n; ++kk) q(j, kk) -= d[i] * c(i, j) * c(i, kk);
            for (int j = i + 1; j < n; ++j)
                for (int kk = i; kk < j; ++kk) q(j, kk) = q(kk, j);
        }
    }
};

// ceil/floor of -s +- sqrt(B) for rationals, rounded outward.
std::pair<Int, Int> root_interval(const Rat& s, const Rat& B) {
    // sqrt(B) = sqrt(num*den)/den <= (isqrt(num*den)+1)/den
    Int num = numerator(B), den = denominator(B);
    Int nd = num * den;
    Int r = sqrt(nd) + 1; // outward
    Rat rad(r, den);
    Rat lo = -s - rad, hi = -s + rad;
    return {floor_div(numerator(lo), denominator(lo)),
            floor_div(numerator(hi), denominator(hi)) + 1};
}

} // namespace

void enumerate_ellipsoid(const RMat& Q, const std::vector<Rat>& shift, const Rat& bound,
                         const std::function<void(const std::vector<Int>&, const Rat&)>& fn,
                         unsigned long long budget) {
    int n = Q.rows;
    if (bound < 0) return;
    if (n == 0) {
        fn({}, Rat(0));
        return;
    }
    Ldl ldl(Q);
    std::vector<Int> m(n);
    std::vector<Rat> y(n); // y_i = shift_i + m_i
    unsigned long long seen = 0;

    // Recurse from the last coordinate down; T = remaining budget of the
    // quadratic value.
    std::function<void(int, const Rat&)> rec = [&](int i, const Rat& T) {
        if (T < 0) return;
        // center u_i = sum_{j>i} c_{ij} y_j
        Rat u(0);
        for (int j = i + 1; j < n; ++j) u += ldl.c(i, j) * y[j];
        Rat B = T / ldl.d[i];
        auto [lo, hi] = root_interval(shift[i] + u, B);
        for (Int mi = lo; mi <= hi; ++mi) {
            Rat yi = Rat(mi) + shift[i];
            Rat w = yi + u;
            Rat used = ldl.d[i] * w * w;
            if (used > T) continue; // outward rounding overshoot
            m[i] = mi;
            y[i] = yi;
            if (i == 0) {
                if (++seen > budget)
                    throw Infeasible("enumerate_ellipsoid: lattice ball exceeds budget");
                fn(m, bound - (T - used));
            } else {
                rec(i - 1, T - used);
            }
        }
    };
    rec(n - 1, bound);
}

namespace {

Rat lambda_lb_of(const RMat& q_inv_like) {
    // 1 / infinity-norm of the inverse form; callers pass the inverse.
    int n = q_inv_like.rows;
    if (n == 0) return Rat(1);
    Rat worst(0);
    for (int i = 0; i < n; ++i) {
        Rat row(0);
        for (int j = 0; j < n; ++j) row += abs(q_inv_like(i, j));
        if (row > worst) worst = row;
    }
    return worst == 0 ? Rat(1) : Rat(1) / worst;
}

template <typename Series>
void fill_tail_data(Series& hb, const LinkingData& ld) {
    hb.enum_dim = ld.nge3();
    hb.alpha_count = Int(1) << ld.n1();
    // S restricted to V>=3 dominates its inverse's norm by the full S^-1.
    hb.lambda_lb = lambda_lb_of(ld.Sinv);
    Rat sup(0);
    // Shifts are alpha_3 + S33^{-1} S32 alpha_2.  Per coordinate
    // |alpha_v| <= deg(v) + 1, and interlacing gives lambda(S33) >= lambda(S),
    // so |S33^{-1} S32|_inf <= N * |S|_inf / lambda_lb.  Gross but exact.
    for (int v : ld.vge2) sup = std::max(sup, Rat(ld.part.degree[v]) + 1);
    Rat amp(1);
    if (ld.nge3() > 0) {
        Rat srow(0);
        for (int i = 0; i < ld.nge2(); ++i) {
            Rat row(0);
            for (int j = 0; j < ld.nge2(); ++j) row += abs(ld.S_rat(i, j));
            if (row > srow) srow = row;
        }
        amp += Rat(ld.nge3()) * srow / hb.lambda_lb;
    }
    hb.shift_sup = sup * amp;
    long dtot = 0;
    Rat pf(1);
    for (int v : ld.vge3) {
        int dv = ld.part.degree[v];
        dtot += std::max(0, dv - 3);
        for (int j = 1; j <= dv - 3; ++j) pf *= Rat(dv); // coarse factor bound
    }
    hb.pdeg = dtot;
    hb.pfac = pf;
}

} // namespace

HBSeries zhat_by_pv(const LinkingData& ld, const Rat& exponent_bound,
                    unsigned long long budget) {
    if (!ld.admissible) throw NotAdmissible("zhat_by_pv: graph is not admissible");
    int n = ld.g.size();
    auto deg = ld.g.degrees();

    // x = l/2 with l in 2Z^V + delta: form (-W^{-1}), shift delta/2, value
    // -l^t W^{-1} l / 4; core exponent adds sum(1/w_i)/4 over leaves.
    RMat negWinv = inverse(to_rat(ld.W));
    for (auto& e : negWinv.a) e = -e;
    std::vector<Rat> shift(n);
    for (int v = 0; v < n; ++v) shift[v] = Rat(deg[v], 2);

    Rat leaf_shift(0);
    for (int i : ld.v1) leaf_shift += rat_frac(Int(1), Int(4 * ld.g.weights[i]));

    // core exponent = value + leaf_shift <= bound  =>  value <= bound - leaf_shift
    Rat vbound = exponent_bound - leaf_shift;

    QSeries core(exponent_bound);
    Rat scale = rat_pow(Rat(1, 2), n - ld.nge3()); // 2^{N3 - |V|}
    enumerate_ellipsoid(negWinv, shift, vbound,
                        [&](const std::vector<Int>& m, const Rat& val) {
                            Rat coef = scale;
                            for (int v = 0; v < n; ++v) {
                                long lv = (2 * m[v] + deg[v]).convert_to<long>();
                                Int pv = pv_residue(deg[v], lv);
                                if (pv == 0) { coef = 0; break; }
                                coef *= Rat(pv);
                            }
                            if (coef != 0) core.add_term(val + leaf_shift, coef);
                        },
                        budget);

    for (auto& [kk, c] : core.terms())
        if (denominator(c) != 1)
            throw Error("zhat_by_pv: non-integer core coefficient");

    HBSeries hb;
    hb.prefactor_exponent = ld.phi() / 4;
    hb.sign_prefactor = rat_pow(Rat(1, 2), ld.nge3());
    hb.core = core;
    hb.bound = exponent_bound;
    hb.finite = (ld.g.size() == 1);
    fill_tail_data(hb, ld);
    return hb;
}

HBSeries zhat_false_theta(const LinkingData& ld, const ProductCharacter& pc,
                          const Rat& exponent_bound, unsigned long long budget) {
    if (!ld.admissible) throw NotAdmissible("zhat_false_theta: graph is not admissible");
    HBSeries hb;
    hb.prefactor_exponent = ld.phi() / 4;
    hb.sign_prefactor = rat_pow(Rat(1, 2), ld.nge3());
    hb.bound = exponent_bound;
    fill_tail_data(hb, ld);

    QSeries core(exponent_bound);

    if (ld.g.size() == 1) {
        // One vertex of degree 0: (z - 1/z)^2 has the finite expansion
        // (x-1)^2 over x = q^{2M}, giving a three-term core.
        Rat s11 = ld.S_rat(0, 0);
        core.add_term(Rat(0), Rat(-2));
        core.add_term(s11, Rat(2));
        hb.core = core;
        hb.finite = true;
        return hb;
    }

    int r = ld.nge2(), r3 = ld.nge3();
    std::vector<int> pos3; // positions of V>=3 inside vge2 order
    for (int v : ld.vge3) pos3.push_back(ld.pos_ge2(v));

    // S33 block and the square completion pieces.
    RMat S33(r3, r3);
    for (int i = 0; i < r3; ++i)
        for (int j = 0; j < r3; ++j) S33(i, j) = ld.S_rat(pos3[i], pos3[j]);
    RMat S33inv = r3 > 0 ? inverse(S33) : RMat(0, 0);

    unsigned long long per_alpha_budget = budget / std::max<size_t>(1, pc.entries.size());
    for (auto& entry : pc.entries) {
        // Q(nhat + alpha) = (n + shift)^t S33 (n + shift) + c_alpha, where
        // shift = alpha_3 + S33^{-1} s, s_i = sum_{j not in V>=3} S(3i, j) alpha_j.
        std::vector<Rat> s(r3, Rat(0));
        for (int i = 0; i < r3; ++i)
            for (int j = 0; j < r; ++j) {
                if (std::find(pos3.begin(), pos3.end(), j) != pos3.end()) continue;
                s[i] += ld.S_rat(pos3[i], j) * entry.alpha[j];
            }
        std::vector<Rat> shift(r3);
        for (int i = 0; i < r3; ++i) {
            shift[i] = entry.alpha[pos3[i]];
            for (int j = 0; j < r3; ++j) shift[i] += S33inv(i, j) * s[j];
        }
        // Q(nhat + alpha) = (n + shift)^t S33 (n + shift) + c_alpha and at
        // n = 0 the left side is Q(alpha), so c_alpha = Q(alpha) - form(shift).
        Rat comp(0);
        for (int i = 0; i < r3; ++i)
            for (int j = 0; j < r3; ++j) comp += shift[i] * S33(i, j) * shift[j];
        Rat calpha = ld.quad_S(entry.alpha) - comp;

        if (r3 == 0) {
            Rat e = calpha;
            if (e <= exponent_bound) core.add_term(e, Rat(entry.sign));
            continue;
        }

        enumerate_ellipsoid(S33, shift, exponent_bound - calpha,
                            [&](const std::vector<Int>& nvec, const Rat& val) {
                                Rat p = P_weight(nvec, ld);
                                if (p == 0) return;
                                int sgn = 1;
                                for (auto& nv : nvec)
                                    if (nv < 0) sgn = -sgn;
                                core.add_term(val + calpha, Rat(entry.sign * sgn) * p);
                            },
                            per_alpha_budget);
    }

    for (auto& [kk, c] : core.terms())
        if (denominator(c) != 1)
            throw Error("zhat_false_theta: non-integer core coefficient");

    hb.core = core;
    return hb;
}

namespace {

// Closed-form tail majorant.  Terms past the exponent bound E satisfy, per
// unit shell [m, m+1), coefficient mass
//     A(m) <= K (m+1)^s,
//     K = |S| (2/sqrt(lam)+1+2*sig)^N * pfac (1/sqrt(lam)+sig+1)^pdeg,
//     s = ceil((N + pdeg)/2),
// because every radius sqrt((m+1)/lam) + const is <= const' sqrt(m+1).
// Splitting x^m = x^{m/2} x^{m/2} and maximising (m+1)^s x^{m/2} in closed
// form gives  tail <= K G x^{E/2} / (1 - sqrt(x)).
template <typename Series>
Real certified_tail(const Series& hb, const Real& absq) {
    if (hb.finite) return Real(0);
    if (!(absq < 1)) throw RadiusTooClose("zhat_eval: need |q| < 1");
    Real lam = to_real(hb.lambda_lb);
    Real sig = to_real(hb.shift_sup);
    Real sl = 1 / sqrt(lam);
    Real K = to_real(Rat(hb.alpha_count)) * pow(2 * sl + 1 + 2 * sig, hb.enum_dim) *
             to_real(hb.pfac) * pow(sl + sig + 1, static_cast<int>(hb.pdeg));
    long s2 = hb.enum_dim + hb.pdeg;
    long s = (s2 + 1) / 2;
    Real m0 = to_real(hb.bound);
    if (m0 < 0) m0 = 0;
    Real lq = log(absq); // < 0

    // Tight form: sum_{m>=E} (m+1)^s x^m <= (E+1)^s x^E / (1 - x e^{s/(E+1)})
    // (uses (1+j/(E+1))^s <= e^{sj/(E+1)}), valid when the ratio is < 1.
    Real ratio = absq * exp(Real(s) / (m0 + 1));
    if (ratio < 1)
        return K * pow(m0 + 1, static_cast<int>(s)) * exp(m0 * lq) / (1 - ratio);

    // Fallback: split x^m = x^{m/2} x^{m/2} and bound (m+1)^s x^{m/2} by its
    // supremum; always applicable.
    Real mstar = -2 * Real(s) / lq - 1;
    if (mstar < m0) mstar = m0;
    Real G = pow(mstar + 1, static_cast<int>(s)) * exp(mstar * lq / 2);
    Real sqx = exp(lq / 2);
    return K * G * exp(m0 * lq / 2) / (1 - sqx);
}

} // namespace

EvalResult zhat_eval(const HBSeries& hb, const Complex& q, const Real& tolerance) {
    Real absq = q.abs();
    if (!(absq < 1)) throw RadiusTooClose("zhat_eval: need |q| < 1");
    if (absq == 0) throw Error("zhat_eval: q = 0");
    // principal branch: q^e = exp(e (ln|q| + i arg q))
    Real lr = log(absq);
    Real th = atan2(q.im, q.re);
    auto qpow = [&](const Rat& e) {
        Real er = to_real(e);
        Real mag = exp(er * lr);
        Real ang = er * th;
        return Complex(mag * cos(ang), mag * sin(ang));
    };
    KahanSum acc;
    for (auto& [kk, c] : hb.core.terms())
        acc.add(qpow(Rat(kk, hb.core.denominator_lcm())) * to_real(c));
    Complex pref = qpow(-hb.prefactor_exponent) * to_real(hb.sign_prefactor);
    Real tail = certified_tail(hb, absq) * pref.abs();
    if (tail > tolerance)
        throw RadiusTooClose("zhat_eval: certified tail above tolerance");
    return {pref * acc.value(), tail};
}

EvalResult zhat_eval_radial(const HBSeries& hb, long k, const Real& t, const Real& tolerance) {
    if (k < 1) throw LevelTooSmall("zhat_eval_radial: need k >= 1");
    if (!(t > 0)) throw Error("zhat_eval_radial: need t > 0");
    Complex sum = hb.core.eval_radial(k, t);
    // q^{-phi/4} at q = e(1/k) e^{-t}
    Complex pref = e_of(-hb.prefactor_exponent / k) * exp(t * to_real(hb.prefactor_exponent));
    pref = pref * to_real(hb.sign_prefactor);
    Real absq = exp(-t);
    Real tail = certified_tail(hb, absq) * pref.abs();
    if (tail > tolerance)
        throw RadiusTooClose("zhat_eval_radial: certified tail above tolerance");
    return {pref * sum, tail};
}

RadialSeries radial_series(const LinkingData& ld, const ProductCharacter& pc,
                           const Rat& exponent_bound, unsigned long long budget) {
    if (!ld.admissible) throw NotAdmissible("radial_series: graph is not admissible");
    RadialSeries rs;
    rs.prefactor_exponent = ld.phi() / 4;
    rs.sign_prefactor = rat_pow(Rat(1, 2), ld.nge3());
    rs.bound = exponent_bound;
    fill_tail_data(rs, ld);

    if (ld.g.size() == 1) {
        HBSeries hb = zhat_false_theta(ld, pc, exponent_bound, budget);
        return compile_radial(hb);
    }

    // Q(n + alpha) - Q(alpha) is an integer (2 S alpha is integral), so the
    // lcm of the finitely many Q(alpha) denominators serves every term.
    Int den(1);
    for (auto& entry : pc.entries) den = lcm(den, denominator(ld.quad_S(entry.alpha)));
    rs.den = den;

    int r3 = ld.nge3();
    std::vector<int> pos3;
    for (int v : ld.vge3) pos3.push_back(ld.pos_ge2(v));
    RMat S33(r3, r3);
    for (int i = 0; i < r3; ++i)
        for (int j = 0; j < r3; ++j) S33(i, j) = ld.S_rat(pos3[i], pos3[j]);
    RMat S33inv = r3 > 0 ? inverse(S33) : RMat(0, 0);

    unsigned long long per_alpha_budget = budget / std::max<size_t>(1, pc.entries.size());
    for (auto& entry : pc.entries) {
        std::vector<Rat> svec(r3, Rat(0));
        for (int i = 0; i < r3; ++i)
            for (int j = 0; j < ld.nge2(); ++j) {
                if (std::find(pos3.begin(), pos3.end(), j) != pos3.end()) continue;
                svec[i] += ld.S_rat(pos3[i], j) * entry.alpha[j];
            }
        std::vector<Rat> shift(r3);
        for (int i = 0; i < r3; ++i) {
            shift[i] = entry.alpha[pos3[i]];
            for (int j = 0; j < r3; ++j) shift[i] += S33inv(i, j) * svec[j];
        }
        Rat comp(0);
        for (int i = 0; i < r3; ++i)
            for (int j = 0; j < r3; ++j) comp += shift[i] * S33(i, j) * shift[j];
        Rat qalpha = ld.quad_S(entry.alpha);
        Rat calpha = qalpha - comp;
        // num(alpha) base and integer offsets from there
        Rat qa_scaled = qalpha * den;
        if (denominator(qa_scaled) != 1) throw Error("radial_series: denominator mismatch");
        long long base = numerator(qa_scaled).convert_to<long long>();
        long long den_ll = den.convert_to<long long>();

        if (r3 == 0) {
            if (qalpha <= exponent_bound)
                rs.terms.emplace_back(base, static_cast<long long>(entry.sign));
            continue;
        }
        enumerate_ellipsoid(S33, shift, exponent_bound - calpha,
                            [&](const std::vector<Int>& nvec, const Rat& val) {
                                Rat p = P_weight(nvec, ld);
                                if (p == 0) return;
                                if (denominator(p) != 1)
                                    throw Error("radial_series: non-integer P");
                                int sgn = entry.sign;
                                for (auto& nv : nvec)
                                    if (nv < 0) sgn = -sgn;
                                // offset = Q(n+alpha) - Q(alpha), an integer
                                Rat off = val + calpha - qalpha;
                                if (denominator(off) != 1)
                                    throw Error("radial_series: non-integer offset");
                                long long num =
                                    base + numerator(off).convert_to<long long>() * den_ll;
                                long long c =
                                    numerator(p).convert_to<long long>() * sgn;
                                rs.terms.emplace_back(num, c);
                            },
                            per_alpha_budget);
    }
    std::sort(rs.terms.begin(), rs.terms.end());
    size_t w = 0;
    for (size_t i = 0; i < rs.terms.size();) {
        long long num = rs.terms[i].first, c = 0;
        while (i < rs.terms.size() && rs.terms[i].first == num) c += rs.terms[i++].second;
        if (c != 0) rs.terms[w++] = {num, c};
    }
    rs.terms.resize(w);
    return rs;
}

RadialSeries compile_radial(const HBSeries& hb) {
    RadialSeries rs;
    rs.prefactor_exponent = hb.prefactor_exponent;
    rs.sign_prefactor = hb.sign_prefactor;
    rs.bound = hb.bound;
    rs.finite = hb.finite;
    rs.enum_dim = hb.enum_dim;
    rs.lambda_lb = hb.lambda_lb;
    rs.alpha_count = hb.alpha_count;
    rs.shift_sup = hb.shift_sup;
    rs.pdeg = hb.pdeg;
    rs.pfac = hb.pfac;
    rs.den = hb.core.denominator_lcm();
    for (auto& [kk, c] : hb.core.terms()) {
        if (denominator(c) != 1) throw Error("compile_radial: non-integer coefficient");
        rs.terms.emplace_back(kk.convert_to<long long>(),
                              numerator(c).convert_to<long long>());
    }
    return rs;
}

EvalResult radial_series_eval(const RadialSeries& rs, long k, const Real& t,
                              const Real& tolerance) {
    if (k < 1) throw LevelTooSmall("radial_series_eval: need k >= 1");
    if (!(t > 0)) throw Error("radial_series_eval: need t > 0");
    long long den = rs.den.convert_to<long long>();
    long long denk = den * k;

    // e(num/(den k)) = e(b/k) e(r/(den k)) with num = b den + r: two small
    // residue tables instead of one of size den*k.
    bool use_table = den <= 1000000;
    std::vector<Complex> phase_b, phase_r;
    if (use_table) {
        for (long j = 0; j < k; ++j) phase_b.push_back(e_of(Rat(j, k)));
        phase_r.reserve(den);
        Complex step = e_of(rat_frac(Int(1), Int(denk)));
        Complex cur = Complex::one();
        for (long long j = 0; j < den; ++j) {
            phase_r.push_back(cur);
            cur *= step;
        }
    }
    // magnitude e^{-t num/den}: num = (hi 2^12 + lo) den + r
    Real e_unit = exp(-t);          // e^{-t}
    Real e_den = exp(-t / Real(den)); // e^{-t/den}
    std::vector<Real> xlo(4096), y;
    xlo[0] = Real(1);
    for (int i = 1; i < 4096; ++i) xlo[i] = xlo[i - 1] * e_unit;
    Real e_block = xlo[4095] * e_unit; // e^{-4096 t}
    long long max_b = rs.terms.empty() ? 0 : rs.terms.back().first / den;
    std::vector<Real> xhi(static_cast<size_t>(max_b / 4096) + 2);
    xhi[0] = Real(1);
    for (size_t i = 1; i < xhi.size(); ++i) xhi[i] = xhi[i - 1] * e_block;
    y.resize(den);
    y[0] = Real(1);
    for (long long i = 1; i < den; ++i) y[i] = y[i - 1] * e_den;

    KahanSum acc;
    for (auto& [num, c] : rs.terms) {
        long long b = num / den, r = num % den;
        if (r < 0) { r += den; b -= 1; }
        Real mag = xhi[static_cast<size_t>(b >> 12)] * xlo[static_cast<size_t>(b & 4095)] *
                   y[static_cast<size_t>(r)];
        if (b < 0) {
            // negative exponents only occur in tiny finite series
            mag = exp(-t * Real(num) / Real(den));
        }
        Complex ph;
        if (use_table && b >= 0) {
            ph = phase_b[static_cast<size_t>(b % k)] * phase_r[static_cast<size_t>(r)];
        } else {
            ph = e_of(rat_frac(Int(num), Int(denk)));
        }
        acc.add(ph * (mag * c));
    }
    Complex pref = e_of(-rs.prefactor_exponent / k) * exp(t * to_real(rs.prefactor_exponent));
    pref = pref * to_real(rs.sign_prefactor);
    Real tail = certified_tail(rs, exp(-t)) * pref.abs();
    if (tail > tolerance)
        throw RadiusTooClose("radial_series_eval: certified tail above tolerance");
    return {pref * acc.value(), tail};
}

std::string RadialReport::to_json(unsigned digits) const {
    nlohmann::json j;
    auto arr = nlohmann::json::array();
    for (size_t i = 0; i < ts.size(); ++i) {
        nlohmann::json row;
        row["t"] = real_str(ts[i], digits);
        row["re"] = real_str(values[i].re, digits);
        row["im"] = real_str(values[i].im, digits);
        arr.push_back(row);
    }
    j["schedule"] = arr;
    auto ext = nlohmann::json::array();
    for (auto& e : extrapolants)
        ext.push_back({{"re", real_str(e.re, digits)}, {"im", real_str(e.im, digits)}});
    j["extrapolants"] = ext;
    j["limit_re"] = real_str(limit.re, digits);
    j["limit_im"] = real_str(limit.im, digits);
    j["error_estimate"] = real_str(error_estimate, 10);
    return j.dump();
}

namespace {

// Polynomial extrapolation to t = 0 (Neville) on a geometric schedule of
// ratio 4/3 between 2^{-J} and 2^{-j0}.  Plain halving wastes points: once
// the expansion coefficients grow by a factor kappa per order, points with
// kappa t > 1 sit outside the asymptotic regime, and a diagonal Richardson
// table mixes them into every column.  With nodes ordered decreasing, the
// last-row Neville entries P_{N,m} use only the m+1 smallest t's, and the
// most stable entry (smallest combined increment) is the limit.
RadialReport radial_limit_impl(
    const std::function<EvalResult(long, const Real&, const Real&)>& eval, bool finite,
    long k, const Real& tolerance, int j0, int J) {
    if (k < 2) throw LevelTooSmall("radial_limit: need k >= 2");
    if (J <= j0) throw Error("radial_limit: need J > j0");
    RadialReport rep;

    std::vector<Rat> ts;
    Rat tmin = rat_pow(Rat(1, 2), J), tmax = rat_pow(Rat(1, 2), j0);
    for (Rat t = tmax; t >= tmin; t *= Rat(3, 4)) ts.push_back(t);
    int n = static_cast<int>(ts.size());

    std::vector<std::vector<Complex>> table;
    for (int i = 0; i < n; ++i) {
        Real t = to_real(ts[i]);
        EvalResult ev = eval(k, t, tolerance / 100);
        rep.ts.push_back(t);
        rep.values.push_back(ev.value);
        std::vector<Complex> row{ev.value};
        for (int m = 1; m <= i; ++m) {
            // P_{i,m}(0) = (t_{i-m} P_{i,m-1} - t_i P_{i-1,m-1}) / (t_{i-m} - t_i)
            Rat a = ts[i - m], b = ts[i];
            Real fa = to_real(a / (a - b)), fb = to_real(b / (a - b));
            row.push_back(row[m - 1] * fa - table[i - 1][m - 1] * fb);
        }
        table.push_back(row);
        rep.extrapolants.push_back(row.back());
    }
    int N = n - 1;
    rep.limit = table[N][0];
    rep.error_estimate = abs_diff(table[N][0], table[N - 1][0]);
    for (int m = 1; m <= N; ++m) {
        Real score = abs_diff(table[N][m], table[N][m - 1]) +
                     abs_diff(table[N][m], table[N - 1][m - 1]);
        if (score < rep.error_estimate) {
            rep.error_estimate = score;
            rep.limit = table[N][m];
        }
    }
    if (!finite && rep.error_estimate > tolerance)
        throw NoConvergence("radial_limit: extrapolants not Cauchy at tolerance");
    return rep;
}

} // namespace

RadialReport radial_limit(const RadialSeries& rs, long k, const Real& tolerance, int j0, int J) {
    return radial_limit_impl(
        [&](long kk, const Real& t, const Real& tol) { return radial_series_eval(rs, kk, t, tol); },
        rs.finite, k, tolerance, j0, J);
}

RadialReport radial_limit(const HBSeries& hb, long k, const Real& tolerance, int j0, int J) {
    RadialSeries rs = compile_radial(hb);
    return radial_limit(rs, k, tolerance, j0, J);
}



Rat radial_bound_for(long k, const Real& tolerance, int J) {
    (void)k;
    // e^{-t E} * (polynomial shell factors) <= tol at the smallest
    // t = 2^{-J}; the additive constant absorbs the majorant constants at
    // desk scale, and callers retry with a doubled bound on RadiusTooClose.
    Real need = Real("1.2") * -log(tolerance) + 90;
    Real e = need * pow(Real(2), J);
    Int b(static_cast<long long>(std::min(1.0e18, e.convert_to<double>())) + 1);
    return Rat(b) + 10;
}

std::string hbseries_to_json(const HBSeries& hb) {
    nlohmann::json j = nlohmann::json::parse(hb.core.to_json());
    j["prefactor_exponent"] = rat_str(hb.prefactor_exponent);
    j["sign_prefactor"] = rat_str(hb.sign_prefactor);
    j["bound"] = rat_str(hb.bound);
    j["finite"] = hb.finite;
    return j.dump();
}

} // namespace plumb
