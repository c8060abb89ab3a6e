#include <doctest.h>

#include "plumb/fleet.hpp"
#include "plumb/ratfunc.hpp"

using namespace plumb;

static Real tol_at(int digits) { return pow(Real(10), -digits); }

TEST_CASE("extended binomial convention") {
    CHECK(binomial_ext(3, 2) == 3);
    CHECK(binomial_ext(-1, 5) == 1);
    CHECK(binomial_ext(-1, -7) == 1);
    CHECK(binomial_ext(2, 5) == 0);
    CHECK(binomial_ext(-2, 1) == 0);
    CHECK(binomial_ext(6, 0) == 1);
    CHECK(binomial_ext(10, 4) == 210);
}

TEST_CASE("P weight") {
    LinkingData ld237 = build_linking_data(graph_sigma_2_3_7());
    CHECK(P_weight({Int(0)}, ld237) == 1);
    CHECK(P_weight({Int(5)}, ld237) == 1);
    CHECK(P_weight({Int(-3)}, ld237) == 1); // V>=4 empty: constant 1

    // deg(v) = 4 at the 4-leaf star: P(n) = n+1
    LinkingData ld4 = build_linking_data(graph_sigma_2_3_7_43());
    CHECK(P_weight({Int(2)}, ld4) == 3);
    CHECK(Rat(binomial_ext(2 + 4 - 3, 2)) == P_weight({Int(2)}, ld4));
    CHECK(P_weight({Int(-1)}, ld4) == 0);
    // on n <= -2 the polynomial and the binomial convention disagree
    CHECK(P_weight({Int(-2)}, ld4) == -1);
    CHECK(binomial_ext(-2 + 1, -2) == 1);
    // P_vertex is integral on all of Z
    for (long n = -9; n <= 9; ++n) {
        CHECK(denominator(Rat(P_vertex(Int(n), 5))) == 1);
        CHECK(denominator(Rat(P_vertex(Int(n), 6))) == 1);
    }
}

TEST_CASE("G_v closed form evaluation") {
    LinkingData ld = build_linking_data(graph_sigma_2_3_7());
    // deg 2 vertex with empty vbar evaluates to 1: use a blowup graph
    PlumbingGraph g = graph_sigma_2_3_7();
    MoveSite s;
    s.vertex = "c";
    s.other = "a";
    s.sign = -1;
    PlumbingGraph h = neumann_move(g, NeumannMove::A, s, MoveDir::Expand);
    LinkingData ldh = build_linking_data(h);
    Complex one = G_v_eval(ldh, h.index_of("n0"), Complex(Real(5)));
    CHECK(abs_diff(one, Complex::one()) < tol_at(55));

    // q = 1 with nonempty vbar at a deg-2 vertex vanishes
    PlumbingGraph path = graph_path_s3();
    LinkingData lp = build_linking_data(path);
    CHECK(G_v_eval(lp, 1, Complex(Real(1))).abs() < tol_at(55));

    // pole detection: deg > 2 at q with q^{2M} = 1
    CHECK_THROWS_AS(G_v_eval(ld, 0, Complex(Real(1))), PoleAtInput);

    // center of sigma(2,3,7) at real q: matches a hand-expanded product
    Complex q(Real(1) / 3);
    Complex direct = G_v_eval(ld, 0, q);
    // (q^-42 - q^42)^{-1} (q^21 - q^-21)(q^14 - q^-14)(q^6 - q^-6)
    auto ip = [&](long e) { return cpow(q, e) - cpow(q, -e); };
    Complex expect = ip(21) * ip(14) * ip(6) / ip(-42);
    CHECK(abs_diff(direct, expect) < tol_at(50));
}

TEST_CASE("laurent expansion matches evaluation in the region") {
    LinkingData ld = build_linking_data(graph_sigma_2_3_7());
    HalfCharacter hc = half_char(ld, 0);
    // M_c = -42 < 0: region |q| > 1
    GvLaurent gl = G_v_laurent(ld, hc, 0, Rat(2000));
    CHECK(gl.region_sign == -1);
    Real x = Real(1) + Real(1) / 8; // |q| = 9/8 > 1
    Complex via_series = gl.series.eval_at_real(x);
    Complex direct = G_v_eval(ld, 0, Complex(x));
    // tail of the truncated geometric-type series at (9/8)^{-2*42*...}
    CHECK(abs_diff(via_series, direct) < tol_at(6));

    // multiply back by (q^{2M}-1)^{deg-2} and compare with the character
    // series: G_v (q^{2M}-1)^{deg-2} = sum eps q^{2M alpha} exactly.
    QSeries factor = QSeries::monomial(Rat(-84), Rat(1)); // q^{2M}, M = -42
    factor.add_term(Rat(0), Rat(-1));
    QSeries lhs = gl.series * factor; // deg - 2 = 1 power
    QSeries rhs;
    for (auto& e : hc.entries) rhs.add_term(Rat(-84) * e.alpha, Rat(e.sign));
    // all rhs terms present with matching coefficients...
    for (auto& [kk, c] : rhs.terms())
        CHECK(lhs.coeff_at(Rat(kk, rhs.denominator_lcm())) == c);
    // ...and no junk away from the truncation boundary
    int extras = 0;
    for (auto& [kk, c] : lhs.terms()) {
        Rat e(kk, lhs.denominator_lcm());
        if (e > -1900 && rhs.coeff_at(e) != c) ++extras;
    }
    CHECK(extras == 0);

    // deg-2, vbar empty: series is exactly "1"
    PlumbingGraph g = graph_sigma_2_3_7();
    MoveSite s;
    s.vertex = "c";
    s.other = "a";
    s.sign = -1;
    PlumbingGraph h = neumann_move(g, NeumannMove::A, s, MoveDir::Expand);
    LinkingData ldh = build_linking_data(h);
    int mid = h.index_of("n0");
    GvLaurent g2 = G_v_laurent(ldh, half_char(ldh, mid), mid, Rat(50));
    CHECK(g2.series.size() == 1);
    CHECK(g2.series.coeff_at(Rat(0)) == 1);
}

TEST_CASE("laurent expansion of the single -1 vertex is the finite polynomial") {
    LinkingData ld = build_linking_data(graph_single_minus1());
    HalfCharacter hc = half_char(ld, 0);
    GvLaurent gl = G_v_laurent(ld, hc, 0, Rat(10));
    // (q - 1/q)^2 = q^{-2} - 2 + q^2
    CHECK(gl.series.coeff_at(Rat(-2)) == 1);
    CHECK(gl.series.coeff_at(Rat(0)) == -2);
    CHECK(gl.series.coeff_at(Rat(2)) == 1);
    CHECK(gl.series.size() == 3);
}

TEST_CASE("leading order at q = 1") {
    LinkingData ld = build_linking_data(graph_sigma_2_3_7());
    auto [order, coeff] = G_v_leading(ld, 0);
    CHECK(order == 2);
    CHECK(coeff == -168); // 2^2 * (-42)^1

    // numeric check: [G(1+h) - coeff h^order]/h^{order+1} stays bounded
    Real prev_ratio(0);
    bool bounded = true;
    for (int j = 2; j <= 6; ++j) {
        Real h = pow(Real(10), -j);
        Complex g = G_v_eval(ld, 0, Complex(Real(1) + h));
        Real ratio = (g - Complex(to_real(coeff) * pow(h, 2))).abs() / pow(h, 3);
        if (j > 2 && ratio > 4 * prev_ratio + 100) bounded = false;
        prev_ratio = ratio;
    }
    CHECK(bounded);

    // deg 3 with one leaf: order 0, coeff 1
    PlumbingGraph g = parse_graph(
        "vertex a -2\nvertex v -1\nvertex b -3\nvertex c -7\nvertex d -2\n"
        "edge a v\nedge v b\nedge b c\nedge b d\n");
    LinkingData lg = build_linking_data(g);
    auto [o3, c3] = G_v_leading(lg, g.index_of("b"));
    CHECK(o3 == 2 - 3 + 2);
    CHECK(c3 == Rat(2));
    auto [o2, c2] = G_v_leading(lg, g.index_of("v"));
    CHECK(o2 == 2 - 2 + 1);
    CHECK(c2 == Rat(2)); // 2^1 M_v^0
}

TEST_CASE("t-expansion order of G_v(e^{-t}) equals 2 - deg + |vbar|") {
    // Lemma-FIMT-style consequence, sampled numerically
    LinkingData ld = build_linking_data(graph_sigma_2_3_7());
    auto [order, coeff] = G_v_leading(ld, 0);
    REQUIRE(order == 2);
    for (int j = 4; j <= 6; ++j) {
        Real t = pow(Real(10), -j);
        Complex g = G_v_eval(ld, 0, Complex(exp(-t)));
        // G(e^{-t}) = coeff (e^{-t}-1)^2 + O(t^3) = coeff t^2 + O(t^3)
        Real rel = (g - Complex(to_real(coeff) * t * t)).abs() / (t * t);
        CHECK(rel < Real(1) / 50);
    }
}
