#pragma once
// group.hpp -- finite groups as index tables.
//
// Elements are indices 0..n-1 with the identity fixed at index 0.  Products
// of cyclic groups are ordered lexicographically in exponent tuples (first
// factor most significant).  S3 uses the fixed order
//   1, r1, r1^2, r2, r1 r2, r1^2 r2
// (r1 a 3-cycle, r2 a transposition, composition (s*t)(x) = s(t(x))), so
// worked examples stay comparable entry for entry.  Larger symmetric groups
// order permutations lexicographically by one-line notation.

#include <algorithm>
#include <memory>
#include <numeric>

#include "base.hpp"

namespace chainring {

struct Group {
    int n = 1;
    std::vector<std::vector<int>> mul;
    std::vector<int> inv;
    std::vector<int> orders;  // cyclic factor orders when built as a product
    bool abelian = true;
    std::string name = "C1";
};

using GroupPtr = std::shared_ptr<const Group>;

constexpr int kGroupOrderBound = 64;

namespace detail {

inline void group_validate(Group& G) {
    const int n = G.n;
    if ((int)G.mul.size() != n) throw InvalidTable("table has " + std::to_string(G.mul.size()) + " rows");
    for (const auto& row : G.mul) {
        if ((int)row.size() != n) throw InvalidTable("ragged multiplication table");
        std::vector<char> seen((size_t)n, 0);
        for (int v : row) {
            if (v < 0 || v >= n || seen[(size_t)v]) throw InvalidTable("row is not a permutation");
            seen[(size_t)v] = 1;
        }
    }
    for (int j = 0; j < n; ++j)
        if (G.mul[0][(size_t)j] != j || G.mul[(size_t)j][0] != j)
            throw InvalidTable("index 0 is not a two-sided identity");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (G.mul[(size_t)G.mul[(size_t)i][(size_t)j]][(size_t)k] !=
                    G.mul[(size_t)i][(size_t)G.mul[(size_t)j][(size_t)k]])
                    throw InvalidTable("associativity fails at (" + std::to_string(i) + "," +
                                       std::to_string(j) + "," + std::to_string(k) + ")");
    G.inv.assign((size_t)n, -1);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            if (G.mul[(size_t)i][(size_t)j] == 0 && G.mul[(size_t)j][(size_t)i] == 0) {
                G.inv[(size_t)i] = j;
                break;
            }
        if (G.inv[(size_t)i] < 0) throw InvalidTable("element " + std::to_string(i) + " has no inverse");
    }
    G.abelian = true;
    for (int i = 0; i < n && G.abelian; ++i)
        for (int j = 0; j < i; ++j)
            if (G.mul[(size_t)i][(size_t)j] != G.mul[(size_t)j][(size_t)i]) { G.abelian = false; break; }
}

}  // namespace detail

inline GroupPtr group_product(const std::vector<int>& orders) {
    i64 n = 1;
    for (int m : orders) {
        if (m < 1) throw InvalidTable("cyclic factor of order " + std::to_string(m));
        n *= m;
        if (n > kGroupOrderBound) throw TooLarge("group order exceeds " + std::to_string(kGroupOrderBound));
    }
    auto G = std::make_shared<Group>();
    G->n = (int)n;
    G->orders = orders;
    const int nf = (int)orders.size();
    auto decode = [&](int idx) {
        std::vector<int> ex((size_t)nf);
        for (int a = nf - 1; a >= 0; --a) {
            ex[(size_t)a] = idx % orders[(size_t)a];
            idx /= orders[(size_t)a];
        }
        return ex;
    };
    auto encode = [&](const std::vector<int>& ex) {
        int idx = 0;
        for (int a = 0; a < nf; ++a) idx = idx * orders[(size_t)a] + ex[(size_t)a];
        return idx;
    };
    G->mul.assign((size_t)n, std::vector<int>((size_t)n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            auto ei = decode(i), ej = decode(j);
            for (int a = 0; a < nf; ++a) ei[(size_t)a] = (ei[(size_t)a] + ej[(size_t)a]) % orders[(size_t)a];
            G->mul[(size_t)i][(size_t)j] = encode(ei);
        }
    std::string nm;
    for (int m : orders) nm += (nm.empty() ? "C" : "xC") + std::to_string(m);
    G->name = orders.empty() ? "C1" : nm;
    detail::group_validate(*G);
    return G;
}

inline GroupPtr group_cyclic(int n) { return group_product({n}); }

inline GroupPtr group_symmetric(int m) {
    if (m < 1) throw InvalidTable("symmetric degree " + std::to_string(m));
    i64 fact = 1;
    for (int i = 2; i <= m; ++i) fact *= i;
    if (fact > kGroupOrderBound) throw TooLarge("group order exceeds " + std::to_string(kGroupOrderBound));

    std::vector<std::vector<int>> perms;
    if (m == 3) {
        // the fixed order 1, r1, r1^2, r2, r1 r2, r1^2 r2
        perms = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {1, 0, 2}, {2, 1, 0}};
    } else {
        std::vector<int> line((size_t)m);
        std::iota(line.begin(), line.end(), 0);
        do perms.push_back(line);
        while (std::next_permutation(line.begin(), line.end()));
    }
    auto G = std::make_shared<Group>();
    G->n = (int)perms.size();
    auto find = [&](const std::vector<int>& p) {
        for (int i = 0; i < G->n; ++i)
            if (perms[(size_t)i] == p) return i;
        throw InvalidTable("permutation closure failure");
    };
    G->mul.assign((size_t)G->n, std::vector<int>((size_t)G->n));
    for (int i = 0; i < G->n; ++i)
        for (int j = 0; j < G->n; ++j) {
            std::vector<int> comp((size_t)m);
            for (int x = 0; x < m; ++x) comp[(size_t)x] = perms[(size_t)i][(size_t)perms[(size_t)j][(size_t)x]];
            G->mul[(size_t)i][(size_t)j] = find(comp);
        }
    G->name = "S" + std::to_string(m);
    detail::group_validate(*G);
    return G;
}

inline GroupPtr group_from_table(const std::vector<std::vector<int>>& mul) {
    if ((int)mul.size() > kGroupOrderBound) throw TooLarge("group order exceeds " + std::to_string(kGroupOrderBound));
    auto G = std::make_shared<Group>();
    G->n = (int)mul.size();
    G->mul = mul;
    G->name = "table" + std::to_string(G->n);
    detail::group_validate(*G);
    return G;
}

inline int group_elem_order(const Group& G, int g) {
    int x = g, ord = 1;
    while (x != 0) {
        x = G.mul[(size_t)x][(size_t)g];
        ++ord;
    }
    return ord;
}

}  // namespace chainring
