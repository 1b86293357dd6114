#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "xortho/combinatorics.hpp"

using namespace xortho;

TEST_CASE("pair construction and validation") {
    PairF F({1, 3}, {2});
    CHECK(F.k1() == 2);
    CHECK(F.k2() == 1);
    CHECK(F.k() == 3);
    CHECK(F.str() == "({1,3},{2})");
    CHECK_THROWS_AS(PairF({0}, {}), ParamViolation);
    CHECK_THROWS_AS(PairF({2, 2}, {}), ParamViolation);
    CHECK_THROWS_AS(PairF({3, 1}, {}), ParamViolation);
    CHECK(PairF({1, 3}, {2}).without(1, 2) == PairF({1}, {2}));
    CHECK(PairF({1, 3}, {2}).without(2, 1) == PairF({1, 3}, {}));
}

TEST_CASE("offset and half-width") {
    CHECK(u_of(PairF({}, {1})) == 1);
    CHECK(w_of(PairF({}, {1})) == 2);
    CHECK(u_of(PairF({1}, {})) == 0);
    CHECK(w_of(PairF({1}, {})) == 2);
    CHECK(w_of(PairF({}, {1, 2})) == 3);
    // 9 + 3 - C(4,2) - C(2,2); cross-checked by w = u + k1 + 1 below.
    CHECK(u_of(PairF({2, 3, 4}, {1, 2})) == 5);
    CHECK(w_of(PairF({2, 3, 4}, {1, 2})) == 9);

    std::mt19937 rng(42);
    std::uniform_int_distribution<int> pick(0, 1);
    for (int trial = 0; trial < 200; ++trial) {
        std::set<long> a, b;
        std::uniform_int_distribution<long> elem(1, 12);
        std::uniform_int_distribution<int> size(0, 4);
        int ka = size(rng), kb = size(rng);
        while (static_cast<int>(a.size()) < ka) a.insert(elem(rng));
        while (static_cast<int>(b.size()) < kb) b.insert(elem(rng));
        PairF F(FiniteSet(a.begin(), a.end()), FiniteSet(b.begin(), b.end()));
        CHECK(w_of(F) == u_of(F) + static_cast<long>(F.k1()) + 1);
        CHECK(u_of(F) >= 0);
    }
}

TEST_CASE("index set with gaps") {
    CHECK(sigma_of(PairF({1}, {}), 4) == std::vector<long>{0, 2, 3, 4});
    CHECK(sigma_of(PairF({}, {1}), 3) == std::vector<long>{1, 2, 3});
    // Offset 5, removing 5 + {2,3,4} = {7,8,9} from {5,6,7,...}.
    CHECK(sigma_of(PairF({2, 3, 4}, {1, 2}), 10) == std::vector<long>{5, 6, 10});
    CHECK(sigma_contains(PairF({1}, {}), 0));
    CHECK_FALSE(sigma_contains(PairF({1}, {}), 1));
    CHECK_FALSE(sigma_contains(PairF({}, {1}), 0));
}

TEST_CASE("truncated index set") {
    CHECK(sigma_N_of(PairF({1}, {}), 3) == std::vector<long>{0, 2, 3});
    CHECK(sigma_N_of(PairF({}, {1}), 2) == std::vector<long>{1, 2, 3});
    CHECK_THROWS_AS(sigma_N_of(PairF({1, 2, 3}, {}), 3), F1NotProper);
    CHECK_THROWS_AS(sigma_N_of(PairF({4}, {}), 3), F1NotProper);

    std::mt19937 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        std::uniform_int_distribution<long> Npick(2, 10);
        long N = Npick(rng);
        std::set<long> a;
        std::uniform_int_distribution<long> elem(1, N);
        std::uniform_int_distribution<long> size(0, N - 1);
        long ka = size(rng);
        while (static_cast<long>(a.size()) < ka) a.insert(elem(rng));
        FiniteSet f1(a.begin(), a.end());
        bool full_segment = static_cast<long>(f1.size()) == N;
        if (full_segment) continue;
        PairF F(f1, {1});
        auto s = sigma_N_of(F, N);
        CHECK(static_cast<long>(s.size()) == N - static_cast<long>(F.k1()) + 1);
    }
}

TEST_CASE("involution") {
    CHECK(involution({1}) == FiniteSet{1});
    CHECK(involution({2, 3}) == FiniteSet{2, 3});
    CHECK(involution({3}) == FiniteSet{1, 2, 3});
    CHECK_THROWS_AS(involution({}), EmptySet);

    std::mt19937 rng(11);
    for (int trial = 0; trial < 500; ++trial) {
        std::set<long> a;
        std::uniform_int_distribution<long> elem(1, 15);
        std::uniform_int_distribution<int> size(1, 6);
        int ka = size(rng);
        while (static_cast<int>(a.size()) < ka) a.insert(elem(rng));
        FiniteSet F(a.begin(), a.end());
        FiniteSet I = involution(F);
        CHECK(involution(I) == F);
        CHECK(I.back() == F.back());
        CHECK(static_cast<long>(I.size()) == F.back() - static_cast<long>(F.size()) + 1);
    }
}

TEST_CASE("initial-segment index and downward shift") {
    CHECK(s_of(FiniteSet{2, 3, 4}) == 1);
    CHECK(f_down(FiniteSet{2, 3, 4}) == FiniteSet{1, 2, 3});
    CHECK(s_of(FiniteSet{1, 2}) == 3);
    CHECK(f_down(FiniteSet{1, 2}) == FiniteSet{});
    CHECK(s_of(FiniteSet{}) == 1);
    CHECK(f_down(FiniteSet{}) == FiniteSet{});
    CHECK(s_of(FiniteSet{1, 2, 5, 6}) == 3);
    CHECK(f_down(FiniteSet{1, 2, 5, 6}) == FiniteSet{2, 3});

    PairF F({2, 3, 4}, {1, 2});
    CHECK(s_of(F) == 1);
    CHECK(pair_down(F) == PairF({1, 2, 3}, {1, 2}));
}

TEST_CASE("vandermonde products") {
    CHECK(vandermonde({5}) == Rat(1));
    CHECK(vandermonde({}) == Rat(1));
    CHECK(vandermonde({1, 2, 3}) == Rat(2));
    CHECK(vandermonde({1, 3, 6}) == Rat(30));
}

TEST_CASE("pair parsing from CLI syntax") {
    CHECK(parse_pair("F1=1,3;F2=2") == PairF({1, 3}, {2}));
    CHECK(parse_pair("F1=;F2=1") == PairF({}, {1}));
    CHECK(parse_pair("F1=1;F2=") == PairF({1}, {}));
    CHECK(parse_pair("F1=2,3,4;F2=1,2") == PairF({2, 3, 4}, {1, 2}));
    CHECK_THROWS_AS(parse_pair("F1=1"), ParamViolation);
    CHECK_THROWS_AS(parse_pair("F2=1;F1=2"), ParamViolation);
    CHECK_THROWS_AS(parse_pair("F1=a;F2="), ParamViolation);
    CHECK_THROWS_AS(parse_pair("F1=1,,2;F2="), ParamViolation);
    CHECK_THROWS_AS(parse_pair("F1=0;F2="), ParamViolation);
}
