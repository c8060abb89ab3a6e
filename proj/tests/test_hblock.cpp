#include <doctest.h>

#include "plumb/fleet.hpp"
#include "plumb/hblock.hpp"

#include "pv_quadrature.hpp"

using namespace plumb;

static Real tol_at(int digits) { return pow(Real(10), -digits); }

TEST_CASE("pv_residue table values") {
    CHECK(pv_residue(1, 1) == -2);
    CHECK(pv_residue(1, -1) == 2);
    CHECK(pv_residue(1, 3) == 0);
    CHECK(pv_residue(2, 0) == 2);
    CHECK(pv_residue(2, 2) == 0);
    CHECK(pv_residue(3, 2) == 0); // parity
    CHECK(pv_residue(3, 3) == 1); // sgn(2) C(1,1)
    CHECK(pv_residue(3, 1) == 1);
    CHECK(pv_residue(3, -1) == -1);
    // below the binomial support the polynomial continuation persists
    CHECK(pv_residue(3, -3) == -1);
    CHECK(pv_residue(4, -2) == 1);  // sgn(-2) P(-2) = (-1)(-1)
    CHECK(pv_residue(4, -4) == 2);  // sgn(-3) P(-3) = (-1)(-2)
    CHECK(pv_residue(5, -3) == -1); // sgn(-3)(n+2)(n+1)/2 at n=-3
    // degree 0 (single-vertex graphs): coefficients of (z-1/z)^2
    CHECK(pv_residue(0, 0) == -4);
    CHECK(pv_residue(0, 2) == 2);
    CHECK(pv_residue(0, -2) == 2);
    CHECK(pv_residue(0, 4) == 0);
}

TEST_CASE("pv_residue equals contour quadrature (smoke)") {
    // full d <= 6, |l| <= 12 at 1e-6 runs in the acceptance suite; this is
    // the quick version
    std::map<std::pair<long, long>, Complex> got;
    plumb_test::pv_quadrature(4, 6, 32768, Real(1) / 1000, got);
    for (long d = 1; d <= 4; ++d)
        for (long l = -6; l <= 6; ++l) {
            CAPTURE(d);
            CAPTURE(l);
            CHECK(abs(got[{d, l}].re - to_real(Rat(pv_residue(d, l)))) < Real(1) / 100000);
            CHECK(abs(got[{d, l}].im) < Real(1) / 100000);
        }
}

TEST_CASE("zhat for the single -1 vertex: both routes give 2q^{1/2} - 2q^{-1/2}") {
    LinkingData ld = build_linking_data(graph_single_minus1());
    ProductCharacter pc = product_char(ld);
    HBSeries pv = zhat_by_pv(ld, Rat(6));
    HBSeries ft = zhat_false_theta(ld, pc, Rat(6));
    CHECK(pv.core == ft.core);
    CHECK(pv.sign_prefactor == 1);
    CHECK(pv.prefactor_exponent == Rat(1, 2));
    CHECK(pv.core.coeff_at(Rat(0)) == -2);
    CHECK(pv.core.coeff_at(Rat(1)) == 2);
    CHECK(pv.core.size() == 2);
    CHECK(pv.finite);
}

TEST_CASE("zhat for the S^3 path matches the single vertex") {
    // homeomorphic manifolds share Zhat: the path (-2,-1,-3) is S^3
    LinkingData ld = build_linking_data(graph_path_s3());
    ProductCharacter pc = product_char(ld);
    HBSeries ft = zhat_false_theta(ld, pc, Rat(6));
    HBSeries pv = zhat_by_pv(ld, Rat(6));
    CHECK(ft.core == pv.core);
    // Zhat = 2q^{1/2} - 2q^{-1/2}: prefactor exponent 13/24, core terms at
    // 1/24 (coeff -2) and 25/24 (coeff +2)
    CHECK(ft.prefactor_exponent == Rat(13, 24));
    CHECK(ft.core.coeff_at(Rat(1, 24)) == -2);
    CHECK(ft.core.coeff_at(Rat(25, 24)) == 2);
}

TEST_CASE("zhat of sigma(2,3,7): the classical false theta") {
    LinkingData ld = build_linking_data(graph_sigma_2_3_7());
    ProductCharacter pc = product_char(ld);
    HBSeries hb = zhat_false_theta(ld, pc, Rat(50));
    CHECK(hb.sign_prefactor == Rat(1, 2));
    CHECK(hb.prefactor_exponent == Rat(-83, 168));

    // q^{-phi/4} core = q^{83/168} q^{1/168} (1 - q - q^5 + q^10 - q^11 + ...)
    CHECK(hb.core.min_exponent() == Rat(1, 168));
    CHECK(hb.core.coeff_at(Rat(1, 168)) == 2); // sign_prefactor 1/2 scales to 1
    auto coeff_rel = [&](long j) { return hb.core.coeff_at(Rat(1 + 168 * j, 168)); };
    CHECK(coeff_rel(1) == -2);
    CHECK(coeff_rel(5) == -2);
    CHECK(coeff_rel(10) == 2);
    CHECK(coeff_rel(11) == -2);
    CHECK(coeff_rel(18) == 2);
    CHECK(coeff_rel(30) == 2);
    CHECK(coeff_rel(41) == -2);
    CHECK(coeff_rel(2) == 0);
    CHECK(coeff_rel(3) == 0);

    HBSeries pv = zhat_by_pv(ld, Rat(50));
    CHECK(pv.core == hb.core);
    CHECK(pv.sign_prefactor == hb.sign_prefactor);
    CHECK(pv.prefactor_exponent == hb.prefactor_exponent);
}

TEST_CASE("pv and false theta agree across the fleet at bound 8") {
    for (auto& f : generate_fleet(10, 57)) {
        LinkingData ld = build_linking_data(f.g);
        ProductCharacter pc = product_char(ld);
        HBSeries a = zhat_by_pv(ld, Rat(8));
        HBSeries b = zhat_false_theta(ld, pc, Rat(8));
        CHECK(a.core == b.core);
    }
}

TEST_CASE("zhat_eval with certified tails") {
    LinkingData ld = build_linking_data(graph_sigma_2_3_7());
    ProductCharacter pc = product_char(ld);
    HBSeries hb = zhat_false_theta(ld, pc, Rat(300));
    Real tol = tol_at(20);
    EvalResult ev = zhat_eval(hb, Complex(Real(1) / 2), tol);
    CHECK(ev.tail < tol);

    // refining the truncation never moves the value outside the bound
    HBSeries hb2 = zhat_false_theta(ld, pc, Rat(400));
    EvalResult ev2 = zhat_eval(hb2, Complex(Real(1) / 2), tol);
    CHECK(abs_diff(ev.value, ev2.value) <= ev.tail + ev2.tail);

    // self-consistency between two truncations at coarser tolerance
    HBSeries hb3 = zhat_false_theta(ld, pc, Rat(120));
    EvalResult ev3 = zhat_eval(hb3, Complex(Real(1) / 2), tol_at(8));
    CHECK(abs_diff(ev3.value, ev2.value) <= ev3.tail + ev2.tail);

    // q -> 0 monomial dominance: value ~ sign_prefactor * c_min q^{min - phi/4}
    Real small = Real(1) / 1000;
    EvalResult evs = zhat_eval(hb, Complex(small), tol_at(1));
    Rat lead = hb.core.min_exponent() - hb.prefactor_exponent;
    Real expect = to_real(hb.sign_prefactor) * to_real(hb.core.coeff_at(hb.core.min_exponent())) *
                  exp(to_real(lead) * log(small));
    CHECK(abs(evs.value.re / expect - 1) < Real(1) / 100);

    // tolerance tighter than achievable: refuse
    CHECK_THROWS_AS(zhat_eval(hb3, Complex(Real(99) / 100), tol_at(30)), RadiusTooClose);
}

TEST_CASE("radial evaluation matches general evaluation") {
    LinkingData ld = build_linking_data(graph_sigma_2_3_7());
    ProductCharacter pc = product_char(ld);
    HBSeries hb = zhat_false_theta(ld, pc, Rat(600));
    long k = 5;
    Real t = Real(1) / 16;
    EvalResult rad = zhat_eval_radial(hb, k, t, tol_at(10));
    Complex q = e_of(Rat(1, k)) * exp(-t);
    EvalResult gen = zhat_eval(hb, q, tol_at(10));
    // same point, but the radial path uses exact phases; the general path
    // loses a little to atan2/log
    CHECK(abs_diff(rad.value, gen.value) < tol_at(45));
}

TEST_CASE("radial limit of the S^3 chain") {
    LinkingData ld = build_linking_data(graph_single_minus1());
    ProductCharacter pc = product_char(ld);
    HBSeries hb = zhat_false_theta(ld, pc, Rat(10));
    for (long k = 2; k <= 12; ++k) {
        RadialReport rep = radial_limit(hb, k, tol_at(12));
        // lim Zhat = 2 (zeta_2k - zeta_2k^{-1}) = 4 i sin(pi/k), and WRT = 1
        Complex expect(Real(0), 4 * sin(pi() / k));
        CHECK(abs_diff(rep.limit, expect) < tol_at(12));
    }
}

TEST_CASE("radial limit error path") {
    LinkingData ld = build_linking_data(graph_sigma_2_3_7());
    ProductCharacter pc = product_char(ld);
    // short series: the certified tail refuses the schedule
    HBSeries hb = zhat_false_theta(ld, pc, Rat(20));
    CHECK_THROWS_AS(radial_limit(hb, 5, tol_at(10)), RadiusTooClose);
}

TEST_CASE("k-periodicity of the quadratic phase") {
    for (auto& f : generate_fleet(6, 71)) {
        LinkingData ld = build_linking_data(f.g);
        ProductCharacter pc = product_char(ld);
        int r = ld.nge2();
        for (long k : {3L, 5L}) {
            for (auto& entry : pc.entries) {
                // Q(n + alpha + k mu) - Q(n + alpha) in kZ for mu in Z^{V>=2}
                std::vector<Rat> x(entry.alpha);
                for (int i = 0; i < r; ++i) x[i] += (i * 7) % 3 - 1;
                std::vector<Rat> y(x);
                for (int i = 0; i < r; ++i) y[i] += k * ((i % 2) ? -2 : 1);
                Rat diff = (ld.quad_S(y) - ld.quad_S(x)) / k;
                CHECK(denominator(diff) == 1);
            }
        }
    }
}

TEST_CASE("hbseries json") {
    LinkingData ld = build_linking_data(graph_sigma_2_3_7());
    ProductCharacter pc = product_char(ld);
    HBSeries hb = zhat_false_theta(ld, pc, Rat(3));
    std::string j = hbseries_to_json(hb);
    CHECK(j.find("\"prefactor_exponent\":\"-83/168\"") != std::string::npos);
    CHECK(j.find("\"sign_prefactor\":\"1/2\"") != std::string::npos);
}
