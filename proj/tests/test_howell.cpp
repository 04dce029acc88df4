// Tests for the canonical lattice engine over Z_{p^e} with mixed column moduli.
#include <catch_amalgamated.hpp>

#include <random>

#include "chainring/howell.hpp"

using namespace chainring;

TEST_CASE("howell basis of simple spans over Z9") {
    Vec colmod{9, 9};
    auto L = lat_make(3, 2, colmod, {{3, 0}, {0, 3}});
    CHECK(lat_size_exp(L) == 2);  // 9 elements
    CHECK(lat_member(L, {3, 6}));
    CHECK(lat_member(L, {0, 0}));
    CHECK_FALSE(lat_member(L, {1, 0}));
    CHECK_FALSE(lat_member(L, {3, 1}));

    auto full = lat_make(3, 2, colmod, {{1, 0}, {0, 1}});
    CHECK(lat_size_exp(full) == 4);
    CHECK(lat_member(full, {7, 5}));
}

TEST_CASE("canonical form does not depend on the generating set") {
    Vec colmod{9, 9, 9};
    auto A = lat_make(3, 2, colmod, {{1, 2, 3}, {0, 3, 6}});
    // same span, messier generators: combinations and unit multiples
    auto B = lat_make(3, 2, colmod,
                      {{2, 4, 6}, {1, 5, 0}, {1, 2, 3}, {3, 3, 3}});
    // {1,5,0} = {1,2,3} + {0,3,6}; {3,3,3} = 3*{1,2,3} + 2*{0,3,6}
    REQUIRE(lat_member(A, {2, 4, 6}));
    REQUIRE(lat_member(A, {1, 5, 0}));
    REQUIRE(lat_member(A, {3, 3, 3}));
    CHECK(lat_equal(A, B));
    CHECK(lat_size_exp(A) == lat_size_exp(B));
}

TEST_CASE("sum and intersection over Z9^2") {
    Vec colmod{9, 9};
    auto A = lat_make(3, 2, colmod, {{1, 1}});
    auto B = lat_make(3, 2, colmod, {{1, 2}});
    CHECK(lat_size_exp(A) == 2);
    CHECK(lat_size_exp(B) == 2);
    auto S = lat_sum(A, B);
    CHECK(lat_size_exp(S) == 4);  // difference (0,1) generates everything with (1,1)
    auto I = lat_intersect(A, B);
    CHECK(lat_size_exp(I) == 0);  // only zero
    CHECK(lat_member(I, {0, 0}));
}

TEST_CASE("mixed column moduli") {
    Vec colmod{9, 3};
    auto L = lat_make(3, 2, colmod, {{1, 1}});
    CHECK(lat_size_exp(L) == 2);  // k*(1,1), k = 0..8
    CHECK(lat_member(L, {3, 0}));
    CHECK(lat_member(L, {4, 1}));
    CHECK_FALSE(lat_member(L, {1, 2}));

    // columns with modulus 1 are inert
    Vec degenerate{9, 1};
    auto D = lat_make(3, 2, degenerate, {{3, 0}});
    CHECK(lat_size_exp(D) == 1);
    CHECK(lat_member(D, {6, 0}));
}

TEST_CASE("kernel and solve") {
    // x -> 3x on Z9: kernel 3Z9
    Mat A{{3}};
    auto K = lat_kernel(3, 2, {9}, {9}, A);
    CHECK(lat_size_exp(K) == 1);
    CHECK(lat_member(K, {3}));
    CHECK_FALSE(lat_member(K, {1}));

    Vec sol;
    CHECK(lat_solve(3, 2, {9}, {9}, A, {6}, sol));
    CHECK(pmod(sol[0] * 3, 9) == 6);
    CHECK_FALSE(lat_solve(3, 2, {9}, {9}, A, {1}, sol));

    // map Z9 x Z3 -> Z9, (a, b) -> a*3 + b*6 ... kernel has index |image|
    Mat A2{{3}, {6}};
    auto K2 = lat_kernel(3, 2, {9, 3}, {9}, A2);
    // image = 3Z9 (3 elements), domain has 27: kernel 9
    CHECK(lat_size_exp(K2) == 2);
    CHECK(lat_member(K2, {1, 1}));   // 3 + 6 = 9 = 0
    CHECK_FALSE(lat_member(K2, {1, 0}));
}

TEST_CASE("random lattice identities over Z4^3") {
    std::mt19937 rng(20240811u);
    Vec colmod{4, 4, 4};
    auto randlat = [&] {
        int k = 1 + (int)(rng() % 3);
        Mat rows;
        for (int i = 0; i < k; ++i) {
            Vec r(3);
            for (auto& x : r) x = (i64)(rng() % 4);
            rows.push_back(r);
        }
        return lat_make(2, 2, colmod, rows);
    };
    for (int trial = 0; trial < 200; ++trial) {
        auto A = randlat(), B = randlat();
        auto S = lat_sum(A, B);
        auto I = lat_intersect(A, B);
        // |A| * |B| = |A+B| * |A cap B|
        CHECK(lat_size_exp(A) + lat_size_exp(B) == lat_size_exp(S) + lat_size_exp(I));
        // containments
        for (const auto& r : lat_natural_rows(A)) {
            CHECK(lat_member(S, r));
        }
        for (const auto& r : lat_natural_rows(I)) {
            CHECK(lat_member(A, r));
            CHECK(lat_member(B, r));
        }
        // idempotence of the canonical form
        auto S2 = lat_make(2, 2, colmod, lat_natural_rows(S));
        CHECK(lat_equal(S, S2));
    }
}

TEST_CASE("kernel composes with solve on random maps") {
    std::mt19937 rng(777u);
    Vec mv{8, 8}, mw{8, 8};
    for (int trial = 0; trial < 100; ++trial) {
        Mat A(2, Vec(2));
        for (auto& row : A)
            for (auto& x : row) x = (i64)(rng() % 8);
        auto K = lat_kernel(2, 3, mv, mw, A);
        // every kernel element maps to zero
        for (const auto& v : lat_natural_rows(K)) {
            Vec img{pmod(v[0] * A[0][0] + v[1] * A[1][0], 8),
                    pmod(v[0] * A[0][1] + v[1] * A[1][1], 8)};
            CHECK(img == Vec{0, 0});
        }
        // a random image point is solvable and the solution works
        Vec x{(i64)(rng() % 8), (i64)(rng() % 8)};
        Vec b{pmod(x[0] * A[0][0] + x[1] * A[1][0], 8),
              pmod(x[0] * A[0][1] + x[1] * A[1][1], 8)};
        Vec sol;
        REQUIRE(lat_solve(2, 3, mv, mw, A, b, sol));
        Vec img{pmod(sol[0] * A[0][0] + sol[1] * A[1][0], 8),
                pmod(sol[0] * A[0][1] + sol[1] * A[1][1], 8)};
        CHECK(img == b);
    }
}
