#pragma once
// howell.hpp -- canonical lattices over Z_{p^e} with per-column moduli.
// Part of the chainring library (MIT license, see LICENSE).
//
// A Lattice is the Z-span of row vectors inside +_c Z_{m_c}, where every
// column modulus m_c is a power of one prime p dividing the master modulus
// M = p^e.  Column c is rescaled internally by M/m_c so that arithmetic is
// uniform mod M; the Howell form of the scaled rows is then canonical:
// two spans are equal iff their Howell rows are identical.  Howell rows
// have distinct pivot columns, pivots normalised to powers of p, entries
// above a pivot reduced below it, and annihilator combinations included,
// which yields exact membership, cardinality, kernel, sum and intersection.
// (See Howell, "Spans in the module (Z_m)^s", Lin. Multilin. Alg. 19.)

#include <algorithm>
#include <cassert>

#include "base.hpp"

namespace chainring {

using Vec = std::vector<i64>;
using Mat = std::vector<Vec>;

struct Lattice {
    i64 p = 2;
    int e = 1;
    i64 M = 2;        // p^e
    Vec colmod;       // natural per-column moduli (powers of p dividing M)
    Mat rows;         // canonical Howell rows in *scaled* coordinates
    std::vector<int> pivcol;  // pivot column of each row
    std::vector<int> pivval;  // valuation of each pivot (pivot entry = p^v)
};

namespace detail {

inline int first_nonzero(const Vec& r) {
    for (size_t c = 0; c < r.size(); ++c)
        if (r[c] != 0) return (int)c;
    return -1;
}

// In-place Howell reduction of scaled rows mod M. Pivot choice: lowest
// p-adic valuation, then lowest worklist index (deterministic).
inline void howellize(Lattice& L, Mat work) {
    const i64 M = L.M, p = L.p;
    const int e = L.e, C = (int)L.colmod.size();
    for (auto& r : work)
        for (auto& x : r) x = pmod(x, M);
    Mat R;
    std::vector<int> pivc, pivv;
    for (int c = 0; c < C; ++c) {
        // collect rows whose leading column is c
        std::vector<int> sel;
        for (int i = 0; i < (int)work.size(); ++i)
            if (first_nonzero(work[i]) == c) sel.push_back(i);
        if (sel.empty()) continue;
        int best = sel[0], bv = pval(work[sel[0]][c], p, e);
        for (int i : sel) {
            int v = pval(work[i][c], p, e);
            if (v < bv) { bv = v; best = i; }
        }
        Vec piv = work[best];
        // normalise pivot entry to exactly p^bv
        i64 u = piv[c] / ipow(p, bv);       // unit part
        i64 ui = modinv(u, M);
        for (auto& x : piv) x = pmod(x * ui, M);
        for (int i : sel)
            if (i != best) {
                i64 q = work[i][c] / ipow(p, bv);
                for (int j = c; j < C; ++j)
                    work[i][j] = pmod(work[i][j] - q * piv[j], M);
            }
        // the annihilator p^{e-v} * pivot keeps the span closed under the
        // column-c torsion; its support starts strictly right of c
        if (bv > 0) {
            Vec ann(C, 0);
            i64 a = ipow(p, e - bv);
            for (int j = c + 1; j < C; ++j) ann[j] = pmod(piv[j] * a, M);
            if (first_nonzero(ann) >= 0) work.push_back(ann);
        }
        R.push_back(std::move(piv));
        pivc.push_back(c);
        pivv.push_back(bv);
    }
    // reduce entries above each pivot below the pivot value
    for (int j = 0; j < (int)R.size(); ++j) {
        i64 pv = ipow(p, pivv[j]);
        for (int i = 0; i < j; ++i) {
            i64 q = R[i][pivc[j]] / pv;
            if (q != 0)
                for (int cc = pivc[j]; cc < C; ++cc)
                    R[i][cc] = pmod(R[i][cc] - q * R[j][cc], M);
        }
    }
    L.rows = std::move(R);
    L.pivcol = std::move(pivc);
    L.pivval = std::move(pivv);
}

}  // namespace detail

inline Vec lat_scale(const Lattice& L, const Vec& natural) {
    if (natural.size() != L.colmod.size())
        throw LengthMismatch("vector length " + std::to_string(natural.size()) +
                             " vs " + std::to_string(L.colmod.size()) + " columns");
    Vec s(natural.size());
    for (size_t c = 0; c < s.size(); ++c)
        s[c] = pmod(natural[c] * (L.M / L.colmod[c]), L.M);
    return s;
}

inline Vec lat_unscale(const Lattice& L, const Vec& scaled) {
    Vec nat(scaled.size());
    for (size_t c = 0; c < nat.size(); ++c) {
        i64 f = L.M / L.colmod[c];
        assert(scaled[c] % f == 0 && "scaled coordinate not in column image");
        nat[c] = pmod(scaled[c] / f, L.colmod[c]);
    }
    return nat;
}

inline Lattice lat_make(i64 p, int e, Vec colmod, const Mat& natural_rows) {
    Lattice L;
    L.p = p; L.e = e; L.M = ipow(p, e);
    L.colmod = std::move(colmod);
    Mat scaled;
    scaled.reserve(natural_rows.size());
    for (const auto& r : natural_rows) scaled.push_back(lat_scale(L, r));
    detail::howellize(L, std::move(scaled));
    return L;
}

inline bool lat_same_shape(const Lattice& A, const Lattice& B) {
    return A.p == B.p && A.e == B.e && A.colmod == B.colmod;
}

// Reduce a scaled vector by the Howell rows; the residual is zero iff the
// vector lies in the span.
inline Vec lat_reduce_scaled(const Lattice& L, Vec x) {
    const int C = (int)L.colmod.size();
    for (size_t j = 0; j < L.rows.size(); ++j) {
        i64 pv = ipow(L.p, L.pivval[j]);
        i64 q = x[L.pivcol[j]] / pv;
        if (q != 0)
            for (int c = L.pivcol[j]; c < C; ++c)
                x[c] = pmod(x[c] - q * L.rows[j][c], L.M);
    }
    return x;
}

inline bool lat_member(const Lattice& L, const Vec& natural) {
    Vec r = lat_reduce_scaled(L, lat_scale(L, natural));
    return detail::first_nonzero(r) < 0;
}

// log_p of the span cardinality: each Howell row with pivot p^v contributes
// a Z_{p^{e-v}} factor (the representation by Howell rows is unique).
inline int lat_size_exp(const Lattice& L) {
    int E = 0;
    for (int v : L.pivval) E += L.e - v;
    return E;
}

inline bool lat_equal(const Lattice& A, const Lattice& B) {
    return lat_same_shape(A, B) && A.rows == B.rows;
}

inline Mat lat_natural_rows(const Lattice& L) {
    Mat out;
    out.reserve(L.rows.size());
    for (const auto& r : L.rows) out.push_back(lat_unscale(L, r));
    return out;
}

inline Lattice lat_sum(const Lattice& A, const Lattice& B) {
    if (!lat_same_shape(A, B)) throw AmbientMismatch("lattice sum over different ambients");
    Lattice L = A;
    Mat work = A.rows;
    work.insert(work.end(), B.rows.begin(), B.rows.end());
    detail::howellize(L, std::move(work));
    return L;
}

// Intersection via the standard doubling trick: Howell-reduce the span of
// {(a,a) : a in A} + {(b,0) : b in B}; rows with zero left half have right
// half in A∩B, and every element of A∩B appears that way.
inline Lattice lat_intersect(const Lattice& A, const Lattice& B) {
    if (!lat_same_shape(A, B)) throw AmbientMismatch("lattice intersection over different ambients");
    const int C = (int)A.colmod.size();
    Lattice D;
    D.p = A.p; D.e = A.e; D.M = A.M;
    D.colmod = A.colmod;
    D.colmod.insert(D.colmod.end(), A.colmod.begin(), A.colmod.end());
    Mat work;
    for (const auto& r : A.rows) {
        Vec w(2 * C);
        std::copy(r.begin(), r.end(), w.begin());
        std::copy(r.begin(), r.end(), w.begin() + C);
        work.push_back(std::move(w));
    }
    for (const auto& r : B.rows) {
        Vec w(2 * C, 0);
        std::copy(r.begin(), r.end(), w.begin());
        work.push_back(std::move(w));
    }
    detail::howellize(D, std::move(work));
    Lattice L = A;
    Mat gens;
    for (size_t j = 0; j < D.rows.size(); ++j)
        if (D.pivcol[j] >= C)
            gens.emplace_back(D.rows[j].begin() + C, D.rows[j].end());
    detail::howellize(L, std::move(gens));
    return L;
}

// Kernel of the additive map x -> x*A from +_i Z_{mv_i} to +_j Z_{mw_j},
// where row i of A holds the natural target coordinates of the i-th unit
// vector.  The map must be well defined (mv_i * A_i = 0 in the target);
// this holds automatically for the bilinear maps built in this library.
// Returns the kernel as a canonical Lattice over the source moduli.
inline Lattice lat_kernel(i64 p, int e, const Vec& mv, const Vec& mw, const Mat& A) {
    const int nv = (int)mv.size(), nw = (int)mw.size();
    if ((int)A.size() != nv) throw LengthMismatch("kernel matrix row count");
    const i64 M = ipow(p, e);
    Lattice G;  // graph lattice in (target | source) coordinates
    G.p = p; G.e = e; G.M = M;
    G.colmod = mw;
    G.colmod.insert(G.colmod.end(), mv.begin(), mv.end());
    Mat work;
    for (int i = 0; i < nv; ++i) {
        Vec w(nw + nv, 0);
        for (int j = 0; j < nw; ++j) w[j] = pmod(A[i][j] * (M / mw[j]), M);
        w[nw + i] = M / mv[i];
        work.push_back(std::move(w));
    }
    detail::howellize(G, std::move(work));
    Lattice K;
    K.p = p; K.e = e; K.M = M;
    K.colmod = mv;
    Mat gens;
    for (size_t j = 0; j < G.rows.size(); ++j)
        if (G.pivcol[j] >= nw)
            gens.emplace_back(G.rows[j].begin() + nw, G.rows[j].end());
    detail::howellize(K, std::move(gens));
    return K;
}

// One solution x of x*A = b (same conventions as lat_kernel), if any.
inline bool lat_solve(i64 p, int e, const Vec& mv, const Vec& mw, const Mat& A,
                      const Vec& b, Vec& sol) {
    const int nv = (int)mv.size(), nw = (int)mw.size();
    const i64 M = ipow(p, e);
    Lattice G;
    G.p = p; G.e = e; G.M = M;
    G.colmod = mw;
    G.colmod.insert(G.colmod.end(), mv.begin(), mv.end());
    Mat work;
    for (int i = 0; i < nv; ++i) {
        Vec w(nw + nv, 0);
        for (int j = 0; j < nw; ++j) w[j] = pmod(A[i][j] * (M / mw[j]), M);
        w[nw + i] = M / mv[i];
        work.push_back(std::move(w));
    }
    detail::howellize(G, std::move(work));
    Vec z(nw + nv, 0);
    for (int j = 0; j < nw; ++j) z[j] = pmod(b[j] * (M / mw[j]), M);
    z = lat_reduce_scaled(G, std::move(z));
    for (int j = 0; j < nw; ++j)
        if (z[j] != 0) return false;
    sol.assign(nv, 0);
    for (int i = 0; i < nv; ++i) {
        i64 f = M / mv[i];
        i64 v = pmod(-z[nw + i], M);
        assert(v % f == 0);
        sol[i] = pmod(v / f, mv[i]);
    }
    return true;
}

}  // namespace chainring
