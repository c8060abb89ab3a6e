#include <doctest.h>

#include "plumb/qseries.hpp"

using namespace plumb;

TEST_CASE("qseries arithmetic with rational exponents") {
    QSeries a = QSeries::monomial(Rat(1, 4), Rat(1));
    a.add_term(Rat(-1, 4), Rat(-1));
    QSeries b = QSeries::monomial(Rat(1, 6), Rat(2));
    QSeries p = a * b;
    CHECK(p.coeff_at(Rat(5, 12)) == 2);
    CHECK(p.coeff_at(Rat(-1, 12)) == -2);
    CHECK(p.size() == 2);
    CHECK(p.denominator_lcm() == 12);

    // cancellation removes the stored term
    QSeries z = a - a;
    CHECK(z.empty());
}

TEST_CASE("truncation keeps products correct up to the bound") {
    QSeries a(Rat(3));
    for (int n = 0; n <= 3; ++n) a.add_term(Rat(n), Rat(1));
    QSeries sq = a * a; // bound 3
    // full square of 1+q+q^2+q^3 is 1+2q+3q^2+4q^3+...
    CHECK(sq.coeff_at(Rat(0)) == 1);
    CHECK(sq.coeff_at(Rat(1)) == 2);
    CHECK(sq.coeff_at(Rat(2)) == 3);
    CHECK(sq.coeff_at(Rat(3)) == 4);
    CHECK(sq.coeff_at(Rat(4)) == 0); // truncated away
    CHECK(*sq.bound() == 3);
}

TEST_CASE("radial evaluation uses exact phases") {
    // q^{1/2} - q^{-1/2} at q = e(1/k) e^{-t}
    QSeries s = QSeries::monomial(Rat(1, 2), Rat(1));
    s.add_term(Rat(-1, 2), Rat(-1));
    long k = 5;
    Real t = Real(1) / 64;
    Complex got = s.eval_radial(k, t);
    Complex q_half = e_of(Rat(1, 2 * k)) * exp(-t / 2);
    Complex expect = q_half - Complex::one() / q_half;
    CHECK(abs_diff(got, expect) < pow(Real(10), -55));
}

TEST_CASE("json dump shape") {
    QSeries s = QSeries::monomial(Rat(1, 168), Rat(1));
    s.add_term(Rat(3), Rat(-2));
    std::string j = s.to_json();
    CHECK(j.find("\"denominator\":\"168\"") != std::string::npos);
    CHECK(j.find("\"terms\"") != std::string::npos);
}
