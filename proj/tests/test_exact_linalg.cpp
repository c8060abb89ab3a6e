#include <doctest.h>

#include "plumb/exact_linalg.hpp"

using namespace plumb;

static IMat from(std::initializer_list<std::initializer_list<long>> rows) {
    IMat m(static_cast<int>(rows.size()), static_cast<int>(rows.begin()->size()));
    int i = 0;
    for (auto& r : rows) {
        int j = 0;
        for (long v : r) m(i, j++) = v;
        ++i;
    }
    return m;
}

TEST_CASE("bareiss determinant") {
    CHECK(det_bareiss(from({{-1}})) == -1);
    CHECK(det_bareiss(from({{-2, 1}, {1, -3}})) == 5);
    // sigma(2,3,7) linking matrix, order (c,a,b,d)
    IMat w = from({{-1, 1, 1, 1}, {1, -2, 0, 0}, {1, 0, -3, 0}, {1, 0, 0, -7}});
    CHECK(det_bareiss(w) == 1); // negative definite 4x4: det sign (-1)^4
    // zero pivot path
    CHECK(det_bareiss(from({{0, 1}, {1, 0}})) == -1);
}

TEST_CASE("negative definiteness via leading minors") {
    IMat w = from({{-1, 1, 1, 1}, {1, -2, 0, 0}, {1, 0, -3, 0}, {1, 0, 0, -7}});
    IMat neg(w.rows, w.cols);
    for (size_t i = 0; i < w.a.size(); ++i) neg.a[i] = -w.a[i];
    CHECK(is_positive_definite(neg));
    CHECK(!is_positive_definite(from({{0}})));
    // sigma(2,3,5) star with center -1 is not negative definite
    IMat w5 = from({{-1, 1, 1, 1}, {1, -2, 0, 0}, {1, 0, -3, 0}, {1, 0, 0, -5}});
    IMat neg5(w5.rows, w5.cols);
    for (size_t i = 0; i < w5.a.size(); ++i) neg5.a[i] = -w5.a[i];
    CHECK(!is_positive_definite(neg5));
}

TEST_CASE("exact inverse") {
    IMat w = from({{-2, 1}, {1, -3}});
    RMat inv = inverse(to_rat(w));
    RMat prod = mat_mul(to_rat(w), inv);
    CHECK(prod == RMat::identity(2));
    CHECK_THROWS_AS(inverse(to_rat(from({{1, 2}, {2, 4}}))), SingularMatrix);
}

TEST_CASE("congruence signature") {
    CHECK(signature(to_rat(from({{2}}))) == 1);
    CHECK(signature(to_rat(from({{-3}}))) == -1);
    CHECK(signature(to_rat(from({{0, 1}, {1, 0}}))) == 0); // hyperbolic plane
    CHECK(signature(to_rat(from({{2, 1}, {1, 2}}))) == 2);
    IMat w = from({{-1, 1, 1, 1}, {1, -2, 0, 0}, {1, 0, -3, 0}, {1, 0, 0, -7}});
    CHECK(signature(to_rat(w)) == -4);
}

TEST_CASE("unimodular integer inverse") {
    IMat u = from({{1, 2}, {0, 1}});
    IMat ui = inverse_unimodular(u);
    CHECK(mat_mul(u, ui) == IMat::identity(2));
    CHECK_THROWS_AS(inverse_unimodular(from({{2, 0}, {0, 1}})), Error);
}
