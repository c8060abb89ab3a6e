#include "plumb/asymptotic.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>

namespace plumb {

std::vector<Real> em_asymptotic_1d(const EMFunction1D& f, const std::vector<Rat>& poly,
                                   const Rat& alpha, const Rat& lam,
                                   long n_min, long n_max) {
    std::vector<Real> out;
    for (long n = n_min; n <= n_max; ++n) {
        Rat b(0);
        for (size_t m = 0; m < poly.size(); ++m) {
            if (poly[m] == 0) continue;
            b += poly[m] * bbB(static_cast<long>(m), n, alpha, lam);
        }
        out.push_back(-to_real(b) * f.deriv_at_zero(n));
    }
    return out;
}

const char* normalization_mode_name(NormalizationMode m) {
    return m == NormalizationMode::prop_scaled ? "prop_scaled" : "corollary_literal";
}

const Complex& AsymptoticLedger::at(const std::vector<long>& n) const {
    auto it = coeffs.find(n);
    if (it == coeffs.end()) throw Error("ledger: index outside the box");
    return it->second;
}

namespace {

// prefactor (-1)^{|V1|} e(N/8) / (sqrt(2k)^N prod sqrt|w_i|)
Complex f_prefactor(const LinkingData& ld, long k) {
    Rat phase = Rat(ld.nge2(), 8);
    if (ld.n1() % 2 == 1) phase += Rat(1, 2);
    Real denom = pow(sqrt(Real(2) * k), ld.nge2());
    for (int i : ld.v1) denom *= sqrt(Real(-ld.g.weights[i]));
    return e_of(phase) / denom;
}

// sum over mu in Z^N / 2kS (optionally filtered to mu_v not in kZ) of
// e(-mu^t S^-1 mu / 4k) prod_v G_v(zeta_{2kM_v}^{mu_v} e^{-t_v / 2M_v})
Complex coset_g_sum(const LinkingData& ld, long k, const std::vector<Rat>* t,
                    bool filter_nonk, unsigned long long budget,
                    unsigned long long* kept_out = nullptr) {
    if (k < 2) throw LevelTooSmall("coset sum: need level k >= 2");
    if (!ld.s_integral) throw Error("coset sum: S is not integral");
    int nge2 = ld.nge2();
    CosetSystem cosets(two_k_S(ld, k));
    if (cosets.size() > Int(budget))
        throw Infeasible("coset sum: |Z^N / 2kS| exceeds the budget");

    // decay per V>=2 position: t_v / (2 M_v) on V>=3, zero elsewhere
    std::vector<Rat> decay(nge2, Rat(0));
    if (t) {
        if (t->size() != static_cast<size_t>(ld.nge3()))
            throw Error("coset sum: t must be indexed by V_{>=3}");
        for (int i = 0; i < ld.nge3(); ++i) {
            if ((*t)[i] <= 0) throw Error("coset sum: need t > 0 componentwise");
            decay[ld.pos_ge2(ld.vge3[i])] = (*t)[i] / (2 * ld.M(ld.vge3[i]));
        }
    }

    KahanSum sum;
    unsigned long long kept = 0;
    cosets.for_each([&](const std::vector<Int>& mu) {
        if (filter_nonk)
            for (int i = 0; i < nge2; ++i)
                if (mod_euclid(mu[i], Int(k)) == 0) return;
        ++kept;
        Complex term = e_of(-ld.quad_Sinv_over(mu, Int(4) * k));
        for (int i = 0; i < nge2; ++i) {
            int v = ld.vge2[i];
            Rat ph = rat_frac(mu[i], Int(2) * k * ld.M(v));
            term *= G_v_at(ld, v, ph, to_real(decay[i]));
        }
        sum.add(term);
    });
    if (kept_out) *kept_out = kept;
    return sum.value();
}

} // namespace

Complex F_f1(const LinkingData& ld, long k, const std::vector<Rat>& t,
             unsigned long long budget) {
    if (!ld.admissible) throw NotAdmissible("F_f1: graph is not admissible");
    Complex s = coset_g_sum(ld, k, &t, false, budget);
    return f_prefactor(ld, k) * s;
}

Complex c0_closed_form(const LinkingData& ld, long k, unsigned long long budget) {
    if (!ld.admissible) throw NotAdmissible("c0_closed_form: graph is not admissible");
    int bad = -1;
    if (ld.condition_margin(&bad) <= 0)
        throw ConditionViolated("c0_closed_form: |vbar|+2-deg <= 0 at vertex '" +
                                (bad >= 0 ? ld.g.vertices[bad] : std::string("?")) + "'");
    unsigned long long kept = 0;
    Complex s = coset_g_sum(ld, k, nullptr, true, budget, &kept);
    // filtered coset count is forced to (2(k-1))^N det S
    Int expected = ld.detS;
    for (int i = 0; i < ld.nge2(); ++i) expected *= 2 * (k - 1);
    if (Int(kept) != abs(expected)) throw Error("c0_closed_form: coset filter count mismatch");
    return f_prefactor(ld, k) * s;
}

Complex F_f1_direct(const LinkingData& ld, const ProductCharacter& pc, long k,
                    const std::vector<Rat>& t, const Real& tol) {
    if (ld.nge3() > 2)
        throw Infeasible("F_f1_direct: direct double sum limited to |V>=3| <= 2");
    int r3 = ld.nge3();
    if (r3 == 0) {
        // no n-sum at all: F = sum_alpha eps e(Q(alpha)/k), constant in t
        KahanSum a2;
        for (auto& entry : pc.entries)
            a2.add(e_of(ld.quad_S(entry.alpha) / k) * Real(entry.sign));
        return a2.value();
    }
    std::vector<int> pos3;
    for (int v : ld.vge3) pos3.push_back(ld.pos_ge2(v));

    // cutoff per dimension: P_1d(n) e^{-t n} summable; N_i chosen so the
    // remainder of each geometric-polynomial row is far below tol.
    std::vector<long> cut(r3);
    for (int i = 0; i < r3; ++i) {
        double ti = to_real(t[i]).convert_to<double>();
        cut[i] = static_cast<long>(
                     (std::log(1e8) - std::log(tol.convert_to<double>() + 1e-300)) / ti) +
                 10;
        if (cut[i] > 4000000) throw Infeasible("F_f1_direct: t too small for the direct sum");
    }

    KahanSum acc;
    for (auto& entry : pc.entries) {
        std::vector<long> n(r3, 0);
        for (;;) {
            // Q(nhat+alpha)/k phase, P(n), exp(-sum t_i (n_i + alpha_i))
            std::vector<Rat> x(entry.alpha);
            for (int i = 0; i < r3; ++i) x[pos3[i]] += n[i];
            Rat qq = ld.quad_S(x) / k;
            std::vector<Int> nI(n.begin(), n.end());
            Rat p = P_weight(nI, ld);
            if (p != 0) {
                Rat expo(0);
                for (int i = 0; i < r3; ++i) expo += t[i] * (Rat(n[i]) + entry.alpha[pos3[i]]);
                acc.add(e_of(qq) * (to_real(p * entry.sign) * exp(-to_real(expo))));
            }
            int d = 0;
            while (d < r3 && ++n[d] > cut[d]) n[d++] = 0;
            if (d == r3) break;
        }
    }
    return acc.value();
}

namespace {

struct LedgerWork {
    const LinkingData& ld;
    const ProductCharacter& pc;
    long k;
    std::vector<int> pos3;                 // V>=3 positions inside vge2
    std::vector<std::vector<Rat>> pcoef;   // per V>=3 vertex: coefficients of its P-factor
    std::vector<std::map<Rat, int>> aidx;  // per V>=3 vertex: alpha value -> index
    std::vector<Complex> phase;            // [alpha_entry * k^{r3} + lambda_code]
    std::vector<int> entry_aidx;           // [alpha_entry * r3 + i] per-vertex alpha index

    LedgerWork(const LinkingData& l, const ProductCharacter& p, long kk)
        : ld(l), pc(p), k(kk) {
        int r3 = ld.nge3();
        for (int v : ld.vge3) pos3.push_back(ld.pos_ge2(v));
        // per-vertex polynomial (n+1)...(n+d-3)/(d-3)! expanded
        for (int v : ld.vge3) {
            int d = ld.part.degree[v];
            std::vector<Rat> c{Rat(1)};
            for (int j = 1; j <= d - 3; ++j) {
                // multiply by (x + j)
                std::vector<Rat> nc(c.size() + 1, Rat(0));
                for (size_t a = 0; a < c.size(); ++a) {
                    nc[a] += c[a] * j;
                    nc[a + 1] += c[a];
                }
                c = std::move(nc);
            }
            if (d > 3) {
                Rat f = Rat(1) / Rat(factorial(static_cast<unsigned>(d - 3)));
                for (auto& x : c) x *= f;
            }
            pcoef.push_back(std::move(c));
        }
        // per-vertex alpha indexing
        aidx.resize(r3);
        for (int i = 0; i < r3; ++i) {
            auto& hc = pc.per_vertex[pos3[i]];
            int id = 0;
            for (auto& e : hc.entries) aidx[i].emplace(e.alpha, id++);
        }
        // phases e(Q(lambda_hat + alpha)/k) * eps(alpha)
        long lam_total = 1;
        for (int i = 0; i < r3; ++i) lam_total *= k;
        phase.resize(pc.entries.size() * lam_total);
        entry_aidx.resize(pc.entries.size() * std::max(1, r3));
        for (size_t ai = 0; ai < pc.entries.size(); ++ai) {
            auto& entry = pc.entries[ai];
            for (int i = 0; i < r3; ++i)
                entry_aidx[ai * r3 + i] = aidx[i].at(entry.alpha[pos3[i]]);
            std::vector<long> lam(r3, 0);
            for (long code = 0; code < lam_total; ++code) {
                std::vector<Rat> x(entry.alpha);
                for (int i = 0; i < r3; ++i) x[pos3[i]] += lam[i];
                phase[ai * lam_total + code] =
                    e_of(ld.quad_S(x) / k) * Real(entry.sign);
                int d = 0;
                while (d < r3 && ++lam[d] == k) lam[d++] = 0;
            }
        }
    }

    // c_n over the box for one normalization mode
    std::map<std::vector<long>, Complex> compute(const std::vector<long>& lo,
                                                 const std::vector<long>& hi,
                                                 NormalizationMode mode) {
        int r3 = ld.nge3();
        long lam_total = 1;
        for (int i = 0; i < r3; ++i) lam_total *= k;
        bool scaled = mode == NormalizationMode::prop_scaled;

        // bbB cache: [vertex][m][n - lo][alpha_idx][lambda]
        std::vector<std::vector<std::vector<std::vector<std::vector<Real>>>>> bb(r3);
        for (int i = 0; i < r3; ++i) {
            long mdeg = static_cast<long>(pcoef[i].size()) - 1;
            bb[i].resize(mdeg + 1);
            for (long m = 0; m <= mdeg; ++m) {
                bb[i][m].resize(hi[i] - lo[i] + 1);
                for (long n = lo[i]; n <= hi[i]; ++n) {
                    auto& slot = bb[i][m][n - lo[i]];
                    slot.resize(aidx[i].size());
                    for (auto& [aval, ai2] : aidx[i]) {
                        slot[ai2].resize(k);
                        for (long lam = 0; lam < k; ++lam) {
                            Rat a = scaled ? aval / k : aval;
                            Rat l = scaled ? Rat(lam, k) : Rat(lam);
                            slot[ai2][lam] = to_real(bbB(m, n, a, l));
                        }
                    }
                }
            }
        }

        std::map<std::vector<long>, Complex> out;
        std::vector<long> n(r3);
        std::function<void(int)> loop_n = [&](int depth) {
            if (depth == r3) {
                // sum over monomials m, alpha entries, lambda codes
                KahanSum cn;
                std::vector<long> m(r3, 0);
                for (;;) {
                    bool mok = true;
                    Rat pm(1);
                    long powsum = 0;
                    for (int i = 0; i < r3; ++i) {
                        if (m[i] >= static_cast<long>(pcoef[i].size())) { mok = false; break; }
                        pm *= pcoef[i][m[i]];
                        powsum += m[i] + n[i];
                    }
                    if (mok && pm != 0) {
                        // skip if some bbB column is entirely zero range: n_i <= -m_i-2
                        bool dead = false;
                        for (int i = 0; i < r3; ++i)
                            if (n[i] <= -m[i] - 2) { dead = true; break; }
                        if (!dead) {
                            Real kpow = pow(Real(k), static_cast<int>(powsum));
                            KahanSum inner;
                            for (size_t ai = 0; ai < pc.entries.size(); ++ai) {
                                std::vector<long> lam(r3, 0);
                                for (long code = 0; code < lam_total; ++code) {
                                    Real prod(1);
                                    for (int i = 0; i < r3; ++i)
                                        prod *= bb[i][m[i]][n[i] - lo[i]][entry_aidx[ai * r3 + i]][lam[i]];
                                    if (prod != 0)
                                        inner.add(phase[ai * lam_total + code] * prod);
                                    int d = 0;
                                    while (d < r3 && ++lam[d] == k) lam[d++] = 0;
                                }
                            }
                            cn.add(inner.value() * (to_real(pm) * kpow));
                        }
                    }
                    int d = 0;
                    while (d < r3 && ++m[d] >= static_cast<long>(pcoef[d].size())) m[d++] = 0;
                    if (d == r3) break;
                }
                Complex val = cn.value();
                if (scaled && r3 % 2 == 1) val = -val; // (-1)^{|V>=3|}
                out[n] = val;
                return;
            }
            for (n[depth] = lo[depth]; n[depth] <= hi[depth]; ++n[depth]) loop_n(depth + 1);
        };
        if (r3 == 0) {
            // single empty index: c_0 = sum_alpha eps e(Q(alpha)/k)
            KahanSum c;
            for (size_t ai = 0; ai < pc.entries.size(); ++ai) c.add(phase[ai]);
            out[{}] = c.value();
        } else {
            loop_n(0);
        }
        return out;
    }
};

Complex ledger_prediction(const std::map<std::vector<long>, Complex>& coeffs,
                          const Real& h) {
    // F(f1; (h,...,h)) ~ sum c_n (-1)^{sum n} h^{sum n}
    KahanSum s;
    for (auto& [n, c] : coeffs) {
        long tot = 0;
        for (long ni : n) tot += ni;
        Real hp = pow(h, static_cast<int>(std::abs(tot)));
        if (tot < 0) hp = 1 / hp;
        if (tot % 2 != 0) hp = -hp;
        s.add(c * hp);
    }
    return s.value();
}

} // namespace

AsymptoticLedger cn_ledger(const LinkingData& ld, const ProductCharacter& pc, long k,
                           const std::vector<long>& box_lo, const std::vector<long>& box_hi,
                           std::optional<NormalizationMode> force,
                           unsigned long long budget) {
    if (!ld.admissible) throw NotAdmissible("cn_ledger: graph is not admissible");
    if (k < 2) throw LevelTooSmall("cn_ledger: need level k >= 2");
    int r3 = ld.nge3();
    if (box_lo.size() != static_cast<size_t>(r3) || box_hi.size() != static_cast<size_t>(r3))
        throw Error("cn_ledger: box must be indexed by V_{>=3}");
    {
        // coarse work estimate
        long double work = static_cast<long double>(pc.entries.size());
        for (int i = 0; i < r3; ++i) work *= k;
        long double boxsz = 1;
        for (int i = 0; i < r3; ++i) boxsz *= (box_hi[i] - box_lo[i] + 1);
        if (work * boxsz > static_cast<long double>(budget))
            throw Infeasible("cn_ledger: work exceeds the budget");
    }

    LedgerWork work(ld, pc, k);
    AsymptoticLedger led;
    led.k = k;
    led.box_lo = box_lo;
    led.box_hi = box_hi;

    if (force) {
        led.mode = *force;
        led.calibrated = false;
    } else if (r3 == 0) {
        led.mode = NormalizationMode::prop_scaled; // modes coincide
        led.calibrated = true;
    } else {
        // Calibrate against the F(f_1; t) Taylor oracle on a small box.
        std::vector<long> clo(r3, -1), chi(r3, 2);
        auto lit = work.compute(clo, chi, NormalizationMode::corollary_literal);
        auto sc = work.compute(clo, chi, NormalizationMode::prop_scaled);
        Rat h(1, 256);
        std::vector<Rat> t(r3, h);
        Complex f = F_f1(ld, k, t, budget);
        Real scale = f.abs() + 1;
        Real r_lit = abs_diff(f, ledger_prediction(lit, to_real(h))) / scale;
        Real r_sc = abs_diff(f, ledger_prediction(sc, to_real(h))) / scale;
        Real lo_r = std::min(r_lit, r_sc), hi_r = std::max(r_lit, r_sc);
        if (!(lo_r < Real(1) / 1000 && lo_r * 50 < hi_r))
            throw CalibrationFailed(
                "cn_ledger: neither normalization matches the F(f1;t) oracle "
                "(residuals " + real_str(r_lit, 6) + " / " + real_str(r_sc, 6) + ")");
        led.mode = r_sc < r_lit ? NormalizationMode::prop_scaled
                                : NormalizationMode::corollary_literal;
        led.calibrated = true;
    }

    led.coeffs = work.compute(box_lo, box_hi, led.mode);
    led.c0 = led.coeffs.at(std::vector<long>(r3, 0));
    return led;
}

long F_f1_order(const LinkingData& ld, long k, int v, const Rat& h, int samples) {
    if (!ld.admissible) throw NotAdmissible("F_f1_order: graph is not admissible");
    if (!ld.part.in_vge3(v)) throw Error("F_f1_order: vertex not in V_{>=3}");
    int r3 = ld.nge3();
    int slot = -1;
    for (int i = 0; i < r3; ++i)
        if (ld.vge3[i] == v) slot = i;

    // generic fixed values for the other coordinates
    std::vector<Rat> t(r3);
    for (int i = 0; i < r3; ++i) t[i] = Rat(3 + 2 * i, 64 + 7 * i);

    std::vector<Real> mags;
    Rat tv = h;
    for (int j = 0; j < samples; ++j) {
        t[slot] = tv;
        mags.push_back(F_f1(ld, k, t).abs());
        tv /= 2;
    }
    // slope of log|F| against log t, from the last halvings
    double slope = 0;
    int used = 0;
    for (int j = samples - 3; j < samples - 1; ++j) {
        double a = std::log(mags[j].convert_to<double>() + 1e-300);
        double b = std::log(mags[j + 1].convert_to<double>() + 1e-300);
        slope += (a - b) / std::log(2.0);
        ++used;
    }
    slope /= used;
    double rounded = std::round(slope);
    if (std::abs(slope - rounded) > 0.1)
        throw OrderAmbiguous("F_f1_order: slope " + std::to_string(slope) +
                             " is not within 0.1 of an integer");
    return static_cast<long>(rounded);
}

std::string VerdictReport::to_json(unsigned digits) const {
    nlohmann::json j;
    j["k"] = k;
    j["tolerance"] = real_str(tolerance, 6);
    j["wrt"] = {{"re", real_str(wrt.re, digits)}, {"im", real_str(wrt.im, digits)}};
    if (gppv_delta) j["gppv_delta"] = real_str(*gppv_delta, 6);
    j["scaled_wrt"] = {{"re", real_str(scaled_wrt.re, digits)},
                       {"im", real_str(scaled_wrt.im, digits)}};
    j["radial_limit"] = {{"re", real_str(radial.re, digits)},
                         {"im", real_str(radial.im, digits)}};
    j["radial_error_estimate"] = real_str(radial_error_estimate, 6);
    j["prefactored_c0"] = {{"re", real_str(prefactored_c0.re, digits)},
                           {"im", real_str(prefactored_c0.im, digits)}};
    j["delta_wrt_radial"] = real_str(d_wrt_radial, 6);
    j["delta_radial_c0"] = real_str(d_radial_c0, 6);
    j["delta_wrt_c0"] = real_str(d_wrt_c0, 6);
    j["pass"] = pass;
    j["normalization_mode"] = mode;
    j["seconds"] = seconds;
    j["digits"] = precision();
    return j.dump();
}

VerdictReport verify_main(const LinkingData& ld, const ProductCharacter& pc, long k,
                          const VerifyOptions& opts) {
    auto t0 = std::chrono::steady_clock::now();
    if (!ld.admissible) throw NotAdmissible("verify_main: graph is not admissible");
    int bad = -1;
    if (ld.condition_margin(&bad) <= 0)
        throw ConditionViolated("verify_main: condition fails at vertex '" +
                                (bad >= 0 ? ld.g.vertices[bad] : std::string("?")) + "'");

    VerdictReport rep;
    rep.k = k;
    rep.tolerance = opts.tolerance;

    WRTResult red = wrt_reduced(ld, k);
    rep.wrt = red.value;
    long double gp_terms = 1;
    for (int i = 0; i < ld.g.size(); ++i) gp_terms *= 2.0L * k - 2;
    if (gp_terms <= static_cast<long double>(opts.gppv_budget)) {
        WRTResult or_ = wrt_gppv(ld, k, opts.gppv_budget);
        rep.gppv_delta = abs_diff(or_.value, red.value);
    }
    // 2 (zeta_2k - zeta_2k^{-1}) = 4 i sin(pi/k)
    Complex zfac = Complex(Real(0), 4 * sin(pi() / k));
    rep.scaled_wrt = zfac * rep.wrt;

    // radial limit of Zhat, with adaptive exponent bound
    Rat bound = radial_bound_for(k, opts.tolerance, opts.J);
    RadialReport rl;
    for (int attempt = 0;; ++attempt) {
        RadialSeries rs = radial_series(ld, pc, bound, opts.enum_budget);
        try {
            rl = radial_limit(rs, k, opts.tolerance, opts.j0, opts.J);
            break;
        } catch (const RadiusTooClose&) {
            if (attempt >= 3) throw;
            bound *= 2;
        }
    }
    rep.radial = rl.limit;
    rep.radial_error_estimate = rl.error_estimate;

    Complex c0 = c0_closed_form(ld, k, opts.enum_budget);
    rep.prefactored_c0 = e_of(-ld.phi() / (4 * k)) * c0;

    rep.d_wrt_radial = abs_diff(rep.scaled_wrt, rep.radial);
    rep.d_radial_c0 = abs_diff(rep.radial, rep.prefactored_c0);
    rep.d_wrt_c0 = abs_diff(rep.scaled_wrt, rep.prefactored_c0);
    rep.pass = rep.d_wrt_radial < opts.tolerance && rep.d_radial_c0 < opts.tolerance &&
               rep.d_wrt_c0 < opts.tolerance;

    if (opts.with_ledger_mode && ld.nge3() > 0) {
        long double work = static_cast<long double>(pc.entries.size());
        for (int i = 0; i < ld.nge3(); ++i) work *= k;
        if (work < 1.0e6) {
            std::vector<long> lo(ld.nge3(), -1), hi(ld.nge3(), 2);
            AsymptoticLedger led = cn_ledger(ld, pc, k, lo, hi);
            rep.mode = normalization_mode_name(led.mode);
        }
    } else if (ld.nge3() == 0) {
        rep.mode = "prop_scaled";
    }

    rep.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

} // namespace plumb
