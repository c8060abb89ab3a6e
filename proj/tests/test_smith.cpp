#include <doctest.h>

#include <random>
#include <set>

#include "plumb/smith.hpp"

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

TEST_CASE("snf basics") {
    CosetSystem cs(from({{2}}));
    CHECK(cs.size() == 2);
    std::set<Int> reps;
    cs.for_each([&](const std::vector<Int>& r) { reps.insert(mod_euclid(r[0], Int(2))); });
    CHECK(reps == std::set<Int>{0, 1});

    CosetSystem cs2(from({{2, 0}, {0, 3}}));
    CHECK(cs2.size() == 6);

    CHECK_THROWS_AS(CosetSystem(from({{1, 1}, {1, 1}})), SingularMatrix);
}

TEST_CASE("every vector reduces to exactly one representative") {
    std::mt19937_64 rng(7);
    IMat A = from({{4, 1, 0}, {-2, 6, 3}, {1, 1, -5}});
    CosetSystem cs(A);
    CHECK(cs.size() == abs(det_bareiss(A)));

    // representatives are pairwise incongruent and cover
    std::set<std::vector<Int>> canon;
    cs.for_each([&](const std::vector<Int>& r) { canon.insert(cs.reduce(r)); });
    CHECK(Int(canon.size()) == cs.size());

    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Int> x(3), shift(3, Int(0));
        for (auto& xi : x) xi = Int(static_cast<long>(rng() % 41) - 20);
        // x and x + A z are congruent
        std::vector<Int> z(3);
        for (auto& zi : z) zi = Int(static_cast<long>(rng() % 7) - 3);
        std::vector<Int> y = x;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) y[i] += A(i, j) * z[j];
        CHECK(cs.congruent(x, y));
        CHECK(canon.count(cs.reduce(x)) == 1);
    }
}

TEST_CASE("chunked iteration matches full iteration") {
    IMat A = from({{6, 2}, {1, 5}});
    CosetSystem cs(A);
    std::vector<std::vector<Int>> all;
    cs.for_each([&](const std::vector<Int>& r) { all.push_back(r); });
    CHECK(Int(all.size()) == cs.size());

    std::vector<std::vector<Int>> chunked;
    for (auto& [b, e] : cs.chunks(5))
        cs.for_each(b, e, [&](const std::vector<Int>& r) { chunked.push_back(r); });
    CHECK(all == chunked);
}

TEST_CASE("2kS coset count for sigma(2,3,7) at k=5") {
    // |det(2*5*42)| = 420
    CosetSystem cs(from({{420}}));
    CHECK(cs.size() == 420);
}
