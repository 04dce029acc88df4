// Tower construction and the splitting maps xi, theta, chi.
#include <catch_amalgamated.hpp>

#include <map>
#include <random>

#include "chainring/split.hpp"

using namespace chainring;

namespace {

// S = Z9[gamma], gamma^2 = 3, 3 gamma = 0  (shape k = 2, t = 1 over R = Z9)
Tower make_z9gamma() {
    TowerSpec ts;
    ts.p = 3; ts.e = 2;
    ts.g2 = {{6}, {0}, {1}};
    ts.t2 = 1;
    return tower_build(ts);
}

// S = Z9[alpha, gamma]: R = Z9, R_a = GR(9,2) with x^2+4x+8, gamma^2 = 3
Tower make_z9alphagamma() {
    TowerSpec ts;
    ts.p = 3; ts.e = 2;
    ts.f = {{8}, {4}, {1}};
    ts.g2 = {{6, 0}, {0, 0}, {1, 0}};
    ts.t2 = 1;
    return tower_build(ts);
}

Elem rand_elem(const Ring& R, std::mt19937& rng) {
    Vec v((size_t)R.n);
    for (int i = 0; i < R.n; ++i) v[(size_t)i] = (i64)(rng() % (unsigned)R.mod[(size_t)i]);
    return {&R, std::move(v)};
}

}  // namespace

TEST_CASE("tower shapes and composite invariants") {
    Tower tz = make_z9gamma();
    CHECK(tz.s1 == 2);
    CHECK(tz.s2 == 3);
    CHECK(tz.ell == 1);
    auto inv = tower_invariants(tz);
    CHECK(inv.r == 1);
    CHECK(inv.k == 2);
    CHECK(inv.t == 1);

    Tower ta = make_z9alphagamma();
    CHECK(ta.s1 == 2);
    CHECK(ta.s2 == 3);
    CHECK(ta.ell == 2);
    auto inv2 = tower_invariants(ta);
    CHECK(inv2.r == 2);
    CHECK(inv2.k == 2);
    CHECK(inv2.t == 1);
    CHECK(ring_size_exp(*ta.s) == 6);  // |S| = 729
    // cardinality split: |R|^{t*ell} * |Rbar|^{(k-t)*ell} = |S|
    CHECK(ta.t2 * ta.ell * ring_size_exp(*ta.r) +
              (ta.k2 - ta.t2) * ta.ell * ring_size_exp(*ta.rbar) ==
          ring_size_exp(*ta.s));
}

TEST_CASE("projection to the quotient level and chi") {
    Tower tz = make_z9gamma();
    // R = Z9, Rbar = Z3
    CHECK(is_zero(project_bar(tz, elem_from_int(*tz.r, 3))));
    CHECK(project_bar(tz, elem_from_int(*tz.r, 5)) == elem_from_int(*tz.rbar, 2));
    // kernel of the projection has exactly 3 elements
    int kernel = 0;
    for (i64 x = 0; x < 9; ++x)
        if (is_zero(project_bar(tz, elem_from_int(*tz.r, x)))) ++kernel;
    CHECK(kernel == 3);
    // chi(xbar) = 3 * lift
    CHECK(chi_map(tz, elem_from_int(*tz.rbar, 1)) == elem_from_int(*tz.r, 3));
    CHECK(chi_map(tz, elem_from_int(*tz.rbar, 2)) == elem_from_int(*tz.r, 6));
    // chi is independent of the chosen lift: theta * theta^{s1-1} = 0
    for (i64 x = 0; x < 9; ++x) {
        Elem lifted = elem_from_int(*tz.r, x);
        CHECK(chi_map(tz, project_bar(tz, lifted)) == 3 * lifted);
    }
}

TEST_CASE("xi on Z9[gamma]: x0 + x1 gamma -> (x0 | x1 bar)") {
    Tower tz = make_z9gamma();
    Elem g = elem_unif(*tz.s);
    Elem x = elem_from_int(*tz.s, 5) + 4 * g;

    MixedVec v = split_xi(tz, x);
    REQUIRE(v.head.size() == 1);
    REQUIRE(v.tail.size() == 1);
    CHECK(v.head[0] == elem_from_int(*tz.ralpha, 5));
    CHECK(v.tail[0] == elem_from_int(*tz.ralphabar, 1));

    MixedVec vg = split_xi(tz, g);
    CHECK(is_zero(vg.head[0]));
    CHECK(vg.tail[0] == elem_one(*tz.ralphabar));

    MixedVec v0 = split_xi(tz, elem_zero(*tz.s));
    CHECK(is_zero(v0.head[0]));
    CHECK(is_zero(v0.tail[0]));

    // exhaustive bijection on |S| = 27
    std::map<std::pair<Vec, Vec>, int> seen;
    for (i64 a = 0; a < 9; ++a)
        for (i64 b = 0; b < 3; ++b) {
            Elem y{tz.s.get(), {a, b}};
            MixedVec w = split_xi(tz, y);
            ++seen[{w.head[0].c, w.tail[0].c}];
            CHECK(xi_inverse(tz, w) == y);
        }
    CHECK(seen.size() == 27);
}

TEST_CASE("theta on Z9[alpha, gamma]") {
    Tower ta = make_z9alphagamma();
    // theta(1) = ((1, 0) | (0, 0)): Tr(2a) = 1, Tr(2 + a) = 0
    MixedVec one = theta_map(ta, elem_one(*ta.s));
    REQUIRE(one.head.size() == 2);
    REQUIRE(one.tail.size() == 2);
    CHECK(one.head[0] == elem_from_int(*ta.r, 1));
    CHECK(is_zero(one.head[1]));
    CHECK(is_zero(one.tail[0]));
    CHECK(is_zero(one.tail[1]));

    // theta(gamma) = ((0,0) | (1, 0))
    MixedVec g = theta_map(ta, elem_unif(*ta.s));
    CHECK(is_zero(g.head[0]));
    CHECK(is_zero(g.head[1]));
    CHECK(g.tail[0] == elem_from_int(*ta.rbar, 1));
    CHECK(is_zero(g.tail[1]));

    // exhaustive bijectivity over |S| = 729 plus round trips
    std::map<std::vector<Vec>, int> seen;
    Vec idx((size_t)ta.s->n, 0);
    for (int count = 0; count < 729; ++count) {
        Elem x{ta.s.get(), idx};
        MixedVec w = theta_map(ta, x);
        std::vector<Vec> key;
        for (const auto& h : w.head) key.push_back(h.c);
        for (const auto& t : w.tail) key.push_back(t.c);
        ++seen[key];
        CHECK(theta_inverse(ta, w) == x);
        // odometer over coordinates
        for (int i = 0; i < ta.s->n; ++i) {
            if (++idx[(size_t)i] < ta.s->mod[(size_t)i]) break;
            idx[(size_t)i] = 0;
        }
    }
    CHECK(seen.size() == 729);
}

TEST_CASE("theta is additive and respects the mixed scalar action") {
    Tower ta = make_z9alphagamma();
    std::mt19937 rng(61u);
    for (int t = 0; t < 200; ++t) {
        Elem x = rand_elem(*ta.s, rng), y = rand_elem(*ta.s, rng);
        Elem lam = rand_elem(*ta.r, rng);

        MixedVec vx = theta_map(ta, x), vy = theta_map(ta, y);
        MixedVec vsum = theta_map(ta, x + y);
        for (size_t i = 0; i < vsum.head.size(); ++i)
            CHECK(vsum.head[i] == vx.head[i] + vy.head[i]);
        for (size_t i = 0; i < vsum.tail.size(); ++i)
            CHECK(vsum.tail[i] == vx.tail[i] + vy.tail[i]);

        Elem lx = ring_embed(*ta.s, lam) * x;
        CHECK(theta_map(ta, lx) == mixed_scale(ta, lam, vx));
    }
}

TEST_CASE("theta commutes with coefficientwise dual coordinates (diagram)") {
    Tower ta = make_z9alphagamma();
    const Ring& S = *ta.s;
    const int nR = ta.r->n, ell = ta.ell, k2 = ta.k2;

    // sigma extended to S: fixes R[gamma], sends alpha to the lifted root
    Elem sig_alpha = ring_embed(S, ta.gal.sig_pows[1]);
    auto alpha_coeff = [&](const Elem& x, int u) {
        // R[gamma]-part of the alpha^u coefficient, placed back at u = 0
        Elem cu = elem_zero(S);
        for (int j = 0; j < k2; ++j)
            for (int i = 0; i < nR; ++i)
                cu.c[(size_t)((j * ell) * nR + i)] = x.c[(size_t)((j * ell + u) * nR + i)];
        return elem_reduce(S, cu.c);
    };
    auto sigma_S = [&](const Elem& x) {
        Elem acc = elem_zero(S);
        for (int u = 0; u < ell; ++u)
            acc = acc + alpha_coeff(x, u) * elem_pow(sig_alpha, u);
        return acc;
    };
    auto trace_S = [&](const Elem& x) {
        Elem acc = x, y = x;
        for (int i = 1; i < ell; ++i) {
            y = sigma_S(y);
            acc = acc + y;
        }
        return acc;
    };

    std::mt19937 rng(17u);
    for (int t = 0; t < 100; ++t) {
        Elem x = rand_elem(S, rng);
        MixedVec direct = theta_map(ta, x);
        // other route: dual coordinates on S first, then xi per coordinate
        for (int u = 0; u < ell; ++u) {
            Elem du = trace_S(x * ring_embed(S, ta.basis.dual[(size_t)u]));
            // du lies in R[gamma]: alpha coefficients above 0 vanish
            for (int w = 1; w < ell; ++w) CHECK(is_zero(alpha_coeff(du, w)));
            MixedVec parts = split_xi(ta, du);
            for (int i = 0; i < ta.t2; ++i)
                CHECK(galois_coeff(ta.gal, parts.head[(size_t)i], 0) ==
                      direct.head[(size_t)(i * ell + u)]);
            for (int j = 0; j < k2 - ta.t2; ++j)
                CHECK(galois_coeff(ta.gal_bar, parts.tail[(size_t)j], 0) ==
                      direct.tail[(size_t)(j * ell + u)]);
        }
    }
}

TEST_CASE("five-level tower with both Eisenstein layers") {
    TowerSpec ts;
    ts.p = 3; ts.e = 2;
    ts.h = {8, 4, 1};                  // GR(9,2), generator a with a^2 = 5a + 1
    ts.g1 = {{6, 0}, {0, 0}, {1, 0}};  // gamma1^2 = 3 over GR
    ts.t1 = 1;
    // f = x^2 - a over R = GR[gamma1]: the residue of a generates F9*, so it
    // is a non-square there and x^2 - a is basic irreducible (integer
    // constants will not do: their residues land in F3* which consists of
    // squares of F9)
    ts.f = {{0, 8, 0, 0}, {0, 0, 0, 0}, {1, 0, 0, 0}};
    Tower tw = tower_build(ts);
    CHECK(tw.d == 2);
    CHECK(tw.k1 == 2);
    CHECK(tw.ell == 2);
    CHECK(tw.s1 == 3);
    CHECK(tw.s2 == 3);
    CHECK(tw.s->res_deg == 4);
    auto inv = tower_invariants(tw);
    CHECK(inv.r == 4);
    CHECK(inv.k == 2);
    CHECK(inv.t == 1);

    std::mt19937 rng(71u);
    for (int t = 0; t < 50; ++t) {
        Elem x = rand_elem(*tw.s, rng);
        CHECK(theta_inverse(tw, theta_map(tw, x)) == x);
        CHECK(xi_inverse(tw, split_xi(tw, x)) == x);
    }

    // chi at s1 = 3: one uniformizer power on the lift, so chi stays
    // injective (image theta * R_a, which has the same size as the quotient)
    Elem g1r = elem_unif(*tw.ralpha);
    CHECK(chi_map(tw, elem_one(*tw.ralphabar)) == g1r);
    CHECK(chi_map(tw, project_bar(tw, g1r)) == g1r * g1r);
    for (int t = 0; t < 30; ++t) {
        Elem x = rand_elem(*tw.ralpha, rng);
        CHECK(chi_map(tw, project_bar(tw, x)) == g1r * x);
    }
}

TEST_CASE("tower validation errors") {
    // truncated tail over a field first layer is rejected
    TowerSpec bad;
    bad.p = 3; bad.e = 1;
    bad.g2 = {{0}, {0}, {1}};
    bad.t2 = 1;
    CHECK_THROWS_AS(tower_build(bad), TruncationOutOfRange);

    Tower tz = make_z9gamma();
    CHECK_THROWS_AS(split_xi(tz, elem_one(*tz.r)), LevelMismatch);
    CHECK_THROWS_AS(chi_map(tz, elem_one(*tz.r)), LevelMismatch);
    MixedVec wrong;
    wrong.head = {elem_one(*tz.ralpha)};
    CHECK_THROWS_AS(xi_inverse(tz, wrong), LengthMismatch);
}
