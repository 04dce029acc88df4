#pragma once
// Additive G-codes inside S[G].
//
// A code is an R-submodule of S[G] (R the base chain ring of the tower),
// optionally invariant under left/right translation by G.  Codes are stored
// as Howell-canonical lattices over Z_{p^e}: one column per (group element,
// tower coordinate) pair, group index major, each column carrying the modulus
// of its tower coordinate.  That makes membership, equality, sum,
// intersection and kernels exact and canonical.
//
// On top of the lattice layer this header provides the tower pairings
//   inner_ast  : v * w   in R_a   (gamma-digit streams, convolution
//                                  identity-coefficients, chi on the tail)
//   inner_star : v (*) w in R     (trace of inner_ast)
// the (*)-dual, the trace annihilator, the mixed-alphabet image under the
// coefficientwise digit map, module types, weak freeness, and ACP detection.

#include "groupring.hpp"
#include "split.hpp"

#include <numeric>

namespace chainring {

// -- flattening ---------------------------------------------------------------

inline Vec gr_flatten(const GrElem& x) {
    const int n = x.R->n;
    Vec v((size_t)x.G->n * n);
    for (int g = 0; g < x.G->n; ++g)
        for (int c = 0; c < n; ++c) v[(size_t)g * n + c] = x.a[(size_t)g].c[(size_t)c];
    return v;
}

inline GrElem gr_unflatten(const Ring& R, const Group& G, const Vec& v) {
    if ((int)v.size() != G.n * R.n) throw LengthMismatch("flat vector length");
    GrElem x = gr_zero(R, G);
    for (int g = 0; g < G.n; ++g) {
        Vec c(v.begin() + (size_t)g * R.n, v.begin() + (size_t)(g + 1) * R.n);
        x.a[(size_t)g] = elem_reduce(R, std::move(c));
    }
    return x;
}

inline Vec gr_ambient_moduli(const Ring& R, const Group& G) {
    Vec m;
    m.reserve((size_t)G.n * R.n);
    for (int g = 0; g < G.n; ++g) m.insert(m.end(), R.mod.begin(), R.mod.end());
    return m;
}

// -- the tower pairings ---------------------------------------------------------

namespace detail {

// gamma-digit streams of a group-ring element: head[i] over R_a and
// tail[j] over R_a bar, taken coefficientwise.
inline void digit_streams(const Tower& tw, const GrElem& x,
                          std::vector<GrElem>& head, std::vector<GrElem>& tail) {
    const Group& G = *x.G;
    head.assign((size_t)tw.t2, gr_zero(*tw.ralpha, G));
    tail.assign((size_t)(tw.k2 - tw.t2), gr_zero(tw.ralphabar ? *tw.ralphabar : *tw.ralpha, G));
    for (int g = 0; g < G.n; ++g) {
        MixedVec mv = split_xi(tw, x.a[(size_t)g]);
        for (int i = 0; i < tw.t2; ++i) head[(size_t)i].a[(size_t)g] = mv.head[(size_t)i];
        for (int j = 0; j < tw.k2 - tw.t2; ++j) tail[(size_t)j].a[(size_t)g] = mv.tail[(size_t)j];
    }
}

}  // namespace detail

// v * w = sum_i [[L_i(v) L_i(w)]] + chi(sum_j [[Lbar_j(v) Lbar_j(w)]]),
// where L_i / Lbar_j are the coefficientwise gamma-digit streams and [[.]]
// is the identity coefficient of the group-ring product.
inline Elem inner_ast(const Tower& tw, const GrElem& v, const GrElem& w) {
    gr_check(v, w);
    if (v.R != tw.s.get()) throw LevelMismatch("inner product expects S[G] elements");
    std::vector<GrElem> hv, tv, hw, twl;
    detail::digit_streams(tw, v, hv, tv);
    detail::digit_streams(tw, w, hw, twl);
    Elem acc = elem_zero(*tw.ralpha);
    for (int i = 0; i < tw.t2; ++i) acc = acc + coeff_id(hv[(size_t)i] * hw[(size_t)i]);
    if (tw.k2 > tw.t2) {
        Elem bar = elem_zero(*tw.ralphabar);
        for (int j = 0; j < tw.k2 - tw.t2; ++j)
            bar = bar + coeff_id(tv[(size_t)j] * twl[(size_t)j]);
        acc = acc + chi_map(tw, bar);
    }
    return acc;
}

// v (*) w = Tr(v * w), an R-bilinear symmetric form on S[G].
inline Elem inner_star(const Tower& tw, const GrElem& v, const GrElem& w) {
    return trace(tw.gal, inner_ast(tw, v, w));
}

// -- additive codes -------------------------------------------------------------

enum class Closure { none, left, right, two_sided };

struct AdditiveCode {
    const Tower* tw = nullptr;
    const Group* G = nullptr;
    std::vector<GrElem> gens;  // translate closure of these R-spans the code
    Closure requested = Closure::none;
    bool left_closed = false;
    bool right_closed = false;
    Lattice lat;
    int size_exp = 0;  // log_p |C|
};

namespace detail {

// A small generating set of the group: greedy sweep, each new element must
// enlarge the generated subgroup.
inline std::vector<int> group_generators(const Group& G) {
    std::vector<int> gens;
    std::vector<char> have((size_t)G.n, 0);
    have[0] = 1;
    int count = 1;
    for (int g = 1; g < G.n && count < G.n; ++g) {
        if (have[(size_t)g]) continue;
        gens.push_back(g);
        // close under products with everything reached so far
        std::vector<int> queue;
        for (int h = 0; h < G.n; ++h)
            if (have[(size_t)h]) queue.push_back(h);
        while (!queue.empty()) {
            int h = queue.back();
            queue.pop_back();
            int l = G.mul[(size_t)h][(size_t)g], r = G.mul[(size_t)g][(size_t)h];
            for (int x : {l, r})
                if (!have[(size_t)x]) {
                    have[(size_t)x] = 1;
                    ++count;
                    queue.push_back(x);
                }
        }
        // saturate: products of reached elements
        bool grew = true;
        while (grew) {
            grew = false;
            for (int a = 0; a < G.n; ++a) {
                if (!have[(size_t)a]) continue;
                for (int b = 0; b < G.n; ++b) {
                    if (!have[(size_t)b]) continue;
                    int ab = G.mul[(size_t)a][(size_t)b];
                    if (!have[(size_t)ab]) {
                        have[(size_t)ab] = 1;
                        ++count;
                        grew = true;
                    }
                }
            }
        }
    }
    return gens;
}

inline void verify_sidedness(AdditiveCode& C) {
    const std::vector<int> ggens = group_generators(*C.G);
    const Mat rows = lat_natural_rows(C.lat);
    C.left_closed = true;
    C.right_closed = true;
    for (const Vec& r : rows) {
        GrElem x = gr_unflatten(*C.tw->s, *C.G, r);
        for (int g : ggens) {
            if (C.left_closed && !lat_member(C.lat, gr_flatten(gr_translate_left(g, x))))
                C.left_closed = false;
            if (C.right_closed && !lat_member(C.lat, gr_flatten(gr_translate_right(x, g))))
                C.right_closed = false;
        }
        if (!C.left_closed && !C.right_closed) break;
    }
}

inline AdditiveCode code_from_lattice(const Tower& tw, const Group& G, Lattice lat) {
    AdditiveCode C;
    C.tw = &tw;
    C.G = &G;
    C.requested = Closure::none;
    C.lat = std::move(lat);
    C.size_exp = lat_size_exp(C.lat);
    for (const Vec& r : lat_natural_rows(C.lat)) C.gens.push_back(gr_unflatten(*tw.s, G, r));
    verify_sidedness(C);
    return C;
}

}  // namespace detail

inline void code_check_ambient(const AdditiveCode& A, const AdditiveCode& B) {
    if (A.tw != B.tw || A.G != B.G) throw AmbientMismatch("codes live in different ambients");
}

inline AdditiveCode code_from_generators(const Tower& tw, const Group& G,
                                         std::vector<GrElem> gens, Closure closure) {
    for (const GrElem& x : gens) {
        if (x.R != tw.s.get()) throw AmbientMismatch("generator is not over the S level");
        if (x.G != &G) throw AmbientMismatch("generator is over a different group");
    }
    // translate pool per the requested closure (for abelian groups one-sided
    // translates already give the two-sided span)
    std::vector<GrElem> pool;
    for (const GrElem& x : gens) {
        switch (closure) {
            case Closure::none: pool.push_back(x); break;
            case Closure::left:
                for (int g = 0; g < G.n; ++g) pool.push_back(gr_translate_left(g, x));
                break;
            case Closure::right:
                for (int g = 0; g < G.n; ++g) pool.push_back(gr_translate_right(x, g));
                break;
            case Closure::two_sided:
                if (G.abelian) {
                    for (int g = 0; g < G.n; ++g) pool.push_back(gr_translate_left(g, x));
                } else {
                    for (int g = 0; g < G.n; ++g)
                        for (int h = 0; h < G.n; ++h)
                            pool.push_back(gr_translate_left(g, gr_translate_right(x, h)));
                }
                break;
        }
    }
    // R-scalar closure: rows for every base-ring basis multiple
    Mat rows;
    for (const GrElem& t : pool)
        for (int sig = 0; sig < tw.r->n; ++sig) {
            Elem b = elem_zero(*tw.r);
            b.c[(size_t)sig] = 1;
            rows.push_back(gr_flatten(ring_embed(*tw.s, b) * t));
        }
    AdditiveCode C;
    C.tw = &tw;
    C.G = &G;
    C.gens = std::move(gens);
    C.requested = closure;
    C.lat = lat_make(tw.s->p, tw.s->e, gr_ambient_moduli(*tw.s, G), rows);
    C.size_exp = lat_size_exp(C.lat);
    detail::verify_sidedness(C);
    return C;
}

inline bool membership(const AdditiveCode& C, const GrElem& x) {
    if (x.R != C.tw->s.get() || x.G != C.G) throw AmbientMismatch("element outside the ambient");
    return lat_member(C.lat, gr_flatten(x));
}

inline AdditiveCode code_sum(const AdditiveCode& A, const AdditiveCode& B) {
    code_check_ambient(A, B);
    AdditiveCode C = detail::code_from_lattice(*A.tw, *A.G, lat_sum(A.lat, B.lat));
    // the union of the generator lists spans the sum under translate closure
    C.gens = A.gens;
    C.gens.insert(C.gens.end(), B.gens.begin(), B.gens.end());
    return C;
}

inline AdditiveCode code_intersect(const AdditiveCode& A, const AdditiveCode& B) {
    code_check_ambient(A, B);
    return detail::code_from_lattice(*A.tw, *A.G, lat_intersect(A.lat, B.lat));
}

inline int code_ambient_exp(const AdditiveCode& C) {
    return C.G->n * ring_size_exp(*C.tw->s);
}

// -- the (*)-dual ----------------------------------------------------------------

// C^perp = { w : c (*) w = 0 for all c in C }.  The canonical lattice rows
// Z-span C and (*) is Z-bilinear, so they are a complete constraint set;
// each constraint contributes an R-valued row of the kernel system.
//
// Only codes closed on at least one side are accepted: the dual of a
// one-sided code is a code closed on the opposite side (translate a
// constraint through the identity coefficient: c (*) gw = (cg) (*) w), and
// the dual of a two-sided code is two-sided.
inline AdditiveCode dual_code(const AdditiveCode& C) {
    if (!C.left_closed && !C.right_closed)
        throw NotLeftClosed("dual of a code that is closed on neither side");
    const Tower& tw = *C.tw;
    const Group& G = *C.G;
    const int nS = tw.s->n, nR = tw.r->n, N = G.n * nS;

    std::vector<GrElem> cons;
    for (const Vec& r : lat_natural_rows(C.lat)) cons.push_back(gr_unflatten(*tw.s, G, r));

    Vec mv = gr_ambient_moduli(*tw.s, G);
    Vec mw;
    for (size_t i = 0; i < cons.size(); ++i) mw.insert(mw.end(), tw.r->mod.begin(), tw.r->mod.end());

    Mat A((size_t)N, Vec(mw.size(), 0));
    for (int col = 0; col < N; ++col) {
        GrElem u = gr_zero(*tw.s, G);
        u.a[(size_t)(col / nS)].c[(size_t)(col % nS)] = 1;
        for (size_t ci = 0; ci < cons.size(); ++ci) {
            Elem val = inner_star(tw, cons[ci], u);
            for (int j = 0; j < nR; ++j) A[(size_t)col][ci * (size_t)nR + (size_t)j] = val.c[(size_t)j];
        }
    }
    return detail::code_from_lattice(tw, G, lat_kernel(tw.s->p, tw.s->e, mv, mw, A));
}

// Oracle: scan the whole ambient.  The canonical rows Z-span the code and
// (*) is Z-bilinear, so checking them is equivalent to checking all of C.
inline AdditiveCode brute_force_dual(const AdditiveCode& C, i64 max_card = 65536) {
    const Tower& tw = *C.tw;
    const Group& G = *C.G;
    i64 card = 1;
    for (int ex = code_ambient_exp(C); ex > 0; --ex) {
        card *= tw.s->p;
        if (card > max_card) throw TooLarge("ambient too large for exhaustive dual");
    }
    const Mat rows = lat_natural_rows(C.lat);
    std::vector<GrElem> cs;
    for (const Vec& r : rows) cs.push_back(gr_unflatten(*tw.s, G, r));
    const Vec mods = gr_ambient_moduli(*tw.s, G);
    const int N = (int)mods.size();
    Vec cur(mods.size(), 0);
    Mat found;
    for (;;) {
        GrElem w = gr_unflatten(*tw.s, G, cur);
        bool ok = true;
        for (const GrElem& c : cs)
            if (!is_zero(inner_star(tw, c, w))) {
                ok = false;
                break;
            }
        if (ok) found.push_back(cur);
        int i = 0;
        while (i < N && ++cur[(size_t)i] == mods[(size_t)i]) cur[(size_t)i++] = 0;
        if (i == N) break;
    }
    return detail::code_from_lattice(tw, G, lat_make(tw.s->p, tw.s->e, mods, found));
}

// -- trace annihilator ------------------------------------------------------------

// Coefficientwise trace S[G] -> S[G]: the Galois trace applied to every
// gamma digit (for a Galois tower this is the plain extended trace).
inline Elem trace_every_digit(const Tower& tw, const Elem& x) {
    MixedVec mv = split_xi(tw, x);
    for (Elem& h : mv.head) h = ring_embed(*tw.ralpha, trace(tw.gal, h));
    for (Elem& t : mv.tail) t = ring_embed(*tw.ralphabar, trace(tw.gal_bar, t));
    return xi_inverse(tw, mv);
}

// Ann(C) = { x : Tr(c x) = 0 in S[G] for all c in C }.  The canonical rows
// Z-span C and the condition is Z-bilinear, so they are a complete
// constraint set.
inline AdditiveCode trace_annihilator(const AdditiveCode& C) {
    const Tower& tw = *C.tw;
    const Group& G = *C.G;
    const int nS = tw.s->n, N = G.n * nS;
    const Mat rows = lat_natural_rows(C.lat);
    std::vector<GrElem> cs;
    for (const Vec& r : rows) cs.push_back(gr_unflatten(*tw.s, G, r));

    Vec mv = gr_ambient_moduli(*tw.s, G);
    Vec mw;
    for (size_t i = 0; i < cs.size(); ++i) mw.insert(mw.end(), mv.begin(), mv.end());

    Mat A((size_t)N, Vec(mw.size(), 0));
    for (int col = 0; col < N; ++col) {
        GrElem u = gr_zero(*tw.s, G);
        u.a[(size_t)(col / nS)].c[(size_t)(col % nS)] = 1;
        for (size_t ci = 0; ci < cs.size(); ++ci) {
            GrElem prod = cs[ci] * u;
            for (int g = 0; g < G.n; ++g) {
                Elem tr = trace_every_digit(tw, prod.a[(size_t)g]);
                for (int c = 0; c < nS; ++c)
                    A[(size_t)col][ci * (size_t)N + (size_t)(g * nS + c)] = tr.c[(size_t)c];
            }
        }
    }
    return detail::code_from_lattice(tw, G, lat_kernel(tw.s->p, tw.s->e, mv, mw, A));
}

// -- mixed-alphabet image ----------------------------------------------------------

inline Vec mixed_moduli(const Tower& tw, const Group& G) {
    Vec m;
    const int headstreams = tw.t2 * tw.ell, tailstreams = (tw.k2 - tw.t2) * tw.ell;
    for (int i = 0; i < headstreams; ++i)
        for (int g = 0; g < G.n; ++g) m.insert(m.end(), tw.r->mod.begin(), tw.r->mod.end());
    for (int j = 0; j < tailstreams; ++j)
        for (int g = 0; g < G.n; ++g) m.insert(m.end(), tw.rbar->mod.begin(), tw.rbar->mod.end());
    return m;
}

inline Vec mixed_flatten(const MixedGr& v) {
    Vec out;
    for (const GrElem& h : v.head) {
        Vec f = gr_flatten(h);
        out.insert(out.end(), f.begin(), f.end());
    }
    for (const GrElem& t : v.tail) {
        Vec f = gr_flatten(t);
        out.insert(out.end(), f.begin(), f.end());
    }
    return out;
}

inline MixedGr mixed_unflatten(const Tower& tw, const Group& G, const Vec& v) {
    MixedGr out;
    const int headstreams = tw.t2 * tw.ell, tailstreams = (tw.k2 - tw.t2) * tw.ell;
    const size_t hb = (size_t)G.n * tw.r->n, tb = (size_t)G.n * (tw.rbar ? tw.rbar->n : 0);
    if (v.size() != (size_t)headstreams * hb + (size_t)tailstreams * tb)
        throw LengthMismatch("mixed vector length");
    size_t pos = 0;
    for (int i = 0; i < headstreams; ++i, pos += hb)
        out.head.push_back(gr_unflatten(*tw.r, G, Vec(v.begin() + pos, v.begin() + pos + hb)));
    for (int j = 0; j < tailstreams; ++j, pos += tb)
        out.tail.push_back(gr_unflatten(*tw.rbar, G, Vec(v.begin() + pos, v.begin() + pos + tb)));
    return out;
}

struct CodeMixedImage {
    Lattice full;                     // the image as one mixed-column lattice
    std::vector<Lattice> head, tail;  // componentwise images
    bool product_matches = false;     // |C| equals the product of component sizes
};

inline CodeMixedImage mixed_image(const AdditiveCode& C) {
    const Tower& tw = *C.tw;
    const Group& G = *C.G;
    const int headstreams = tw.t2 * tw.ell, tailstreams = (tw.k2 - tw.t2) * tw.ell;
    const Mat rows = lat_natural_rows(C.lat);
    Mat fullrows;
    std::vector<Mat> headrows((size_t)headstreams), tailrows((size_t)tailstreams);
    for (const Vec& r : rows) {
        MixedGr th = big_theta(tw, gr_unflatten(*tw.s, G, r));
        fullrows.push_back(mixed_flatten(th));
        for (int i = 0; i < headstreams; ++i) headrows[(size_t)i].push_back(gr_flatten(th.head[(size_t)i]));
        for (int j = 0; j < tailstreams; ++j) tailrows[(size_t)j].push_back(gr_flatten(th.tail[(size_t)j]));
    }
    CodeMixedImage out;
    out.full = lat_make(tw.s->p, tw.s->e, mixed_moduli(tw, G), fullrows);
    int compexp = 0;
    for (int i = 0; i < headstreams; ++i) {
        out.head.push_back(lat_make(tw.s->p, tw.s->e, gr_ambient_moduli(*tw.r, G), headrows[(size_t)i]));
        compexp += lat_size_exp(out.head.back());
    }
    for (int j = 0; j < tailstreams; ++j) {
        out.tail.push_back(lat_make(tw.s->p, tw.s->e, gr_ambient_moduli(*tw.rbar, G), tailrows[(size_t)j]));
        compexp += lat_size_exp(out.tail.back());
    }
    out.product_matches = (compexp == lat_size_exp(out.full));
    return out;
}

// -- module type and weak freeness --------------------------------------------------

// Type of C as an R-module: C is isomorphic to a product of R/theta^{s-m}
// with multiplicities k_m.  Recovered from the filtration sizes
// |theta^j C|, which only depend on the abstract module.
inline std::vector<int> module_type(const AdditiveCode& C) {
    const Tower& tw = *C.tw;
    const Group& G = *C.G;
    const int s = tw.s1, dr = tw.r->res_deg;
    const Elem th = ring_embed(*tw.s, elem_unif(*tw.r));
    std::vector<int> L((size_t)s + 1, 0);
    Mat rows = lat_natural_rows(C.lat);
    Lattice cur = C.lat;
    for (int j = 0; j <= s; ++j) {
        int ex = lat_size_exp(cur);
        if (ex % dr != 0) throw error("Internal", "filtration size is not a residue-field power");
        L[(size_t)j] = ex / dr;
        if (j == s) break;
        for (Vec& r : rows) r = gr_flatten(th * gr_unflatten(*tw.s, G, r));
        cur = lat_make(tw.s->p, tw.s->e, gr_ambient_moduli(*tw.s, G), rows);
    }
    if (L[(size_t)s] != 0) throw error("Internal", "theta^s did not annihilate the code");
    auto delta = [&](int j) { return j >= s ? 0 : L[(size_t)j] - L[(size_t)j + 1]; };
    std::vector<int> k((size_t)s, 0);
    int total = 0;
    for (int m = 0; m < s; ++m) {
        k[(size_t)m] = delta(s - 1 - m) - delta(s - m);
        total += k[(size_t)m] * (s - m);
    }
    if (total != L[0]) throw error("Internal", "module type does not reproduce the cardinality");
    return k;
}

// Weakly free: only free summands and, when the image has a genuine
// truncated block, summands that are free over the truncated ring.
inline bool is_weakly_free(const AdditiveCode& C) {
    const Tower& tw = *C.tw;
    std::vector<int> k = module_type(C);
    const int s = tw.s1;
    if (s == 1) return true;  // the base ring is a field
    const int tail_cols = (tw.k2 - tw.t2) * tw.ell * C.G->n;
    for (int m = 2; m < s; ++m)
        if (k[(size_t)m] != 0) return false;
    if (tail_cols == 0 && k[1] != 0) return false;
    return true;
}

// -- ACP -----------------------------------------------------------------------------

struct AcpReport {
    bool is_acp = false;
    bool have_witness = false;
    GrElem witness;  // nonzero intersection element, or a vector missing from the sum
};

inline AcpReport acp_check(const AdditiveCode& C, const AdditiveCode& D) {
    code_check_ambient(C, D);
    const Tower& tw = *C.tw;
    const Group& G = *C.G;
    AcpReport rep;
    Lattice inter = lat_intersect(C.lat, D.lat);
    Lattice sum = lat_sum(C.lat, D.lat);
    const bool trivial_meet = lat_size_exp(inter) == 0;
    const bool full_join = lat_size_exp(sum) == code_ambient_exp(C);
    rep.is_acp = trivial_meet && full_join;
    if (!trivial_meet) {
        rep.have_witness = true;
        rep.witness = gr_unflatten(*tw.s, G, lat_natural_rows(inter).front());
    } else if (!full_join) {
        const int N = G.n * tw.s->n;
        for (int col = 0; col < N && !rep.have_witness; ++col) {
            Vec u((size_t)N, 0);
            u[(size_t)col] = 1;
            if (!lat_member(sum, u)) {
                rep.have_witness = true;
                rep.witness = gr_unflatten(*tw.s, G, u);
            }
        }
    }
    if (!rep.have_witness) rep.witness = gr_zero(*tw.s, G);
    return rep;
}

// Reduction to the residue field applied to every group-ring coefficient.
// The image of a code is returned as a lattice over the residue coordinates
// (every column modulus is p).  Complementarity survives this reduction, so
// the reduced pair is a necessary condition for acp_check; it is not
// sufficient (a torsion line and its radical complement reduce to
// complementary images without summing to the ambient).
inline Lattice pi_image_lattice(const AdditiveCode& C) {
    const Ring& S = *C.tw->s;
    const Ring& F = *S.resfield();
    const Group& G = *C.G;
    Vec mods((size_t)G.n * F.n, S.p);
    Mat rows;
    for (const Vec& r : lat_natural_rows(C.lat)) {
        GrElem x = gr_unflatten(S, G, r);
        Vec row;
        row.reserve(mods.size());
        for (int g = 0; g < G.n; ++g) {
            Elem xb = residue(x.a[(size_t)g]);
            row.insert(row.end(), xb.c.begin(), xb.c.end());
        }
        rows.push_back(std::move(row));
    }
    return lat_make(S.p, 1, mods, rows);
}

inline bool pi_acp(const AdditiveCode& C, const AdditiveCode& D) {
    code_check_ambient(C, D);
    Lattice pc = pi_image_lattice(C), pd = pi_image_lattice(D);
    const int full = C.G->n * C.tw->s->resfield()->n;
    return lat_size_exp(lat_intersect(pc, pd)) == 0 && lat_size_exp(lat_sum(pc, pd)) == full;
}

struct AcpDualityReport {
    bool mu_C_equals_D_dual = false;
    bool acp = false;
    bool consistent_with_theorems = true;
};

inline AdditiveCode code_mu(const AdditiveCode& C) {
    Mat rows;
    for (const Vec& r : lat_natural_rows(C.lat))
        rows.push_back(gr_flatten(mu_antimap(gr_unflatten(*C.tw->s, *C.G, r))));
    return detail::code_from_lattice(
        *C.tw, *C.G, lat_make(C.tw->s->p, C.tw->s->e, gr_ambient_moduli(*C.tw->s, *C.G), rows));
}

// True when the code is closed under coefficientwise multiplication by the
// alphabet ring (an ideal of S[G], not merely a translation-closed module).
// The duality theorems below hinge on this: ideal complements are unique,
// module complements are not.
inline bool is_scalar_ideal(const AdditiveCode& C) {
    const Ring& S = *C.tw->s;
    for (const Vec& r : lat_natural_rows(C.lat)) {
        GrElem x = gr_unflatten(S, *C.G, r);
        for (int m = 0; m < S.n; ++m) {
            Vec bv((size_t)S.n, 0);
            bv[(size_t)m] = 1;
            Elem b = elem_reduce(S, std::move(bv));
            GrElem y = x;
            for (auto& c : y.a) c = b * c;
            if (!lat_member(C.lat, gr_flatten(y))) return false;
        }
    }
    return true;
}

// Evaluates the duality relations behind complementary pairs.
//
//   mu_C_equals_D_dual  reports the literal relation mu(C) = D^perp.
//   acp                 reports C (+) D = S[G].
//   consistent_with_theorems verifies the two implications that hold for
//   this pairing, both restricted to scalar ideals:
//     forward:  ACP             =>  C = D^perp
//     converse: C = D^perp and gcd(|G|,p)=1 and both weakly free  =>  ACP
//
// The mu-twisted form of the forward implication belongs to the plain
// Euclidean pairing; under the convolution pairing the antipode drops out,
// and the two coincide exactly when conjugation fixes every component
// (e.g. it fails over Z9[C8], where conjugation swaps two components).
// Neither implication extends to pairs that are merely translation-closed:
// module complements are not unique, so an ACP constrains no dual.
inline AcpDualityReport acp_duality_check(const AdditiveCode& C, const AdditiveCode& D) {
    code_check_ambient(C, D);
    if (!C.left_closed || !C.right_closed || !D.left_closed || !D.right_closed)
        throw SidednessViolation("duality characterization needs two-sided codes");
    AcpDualityReport rep;
    AdditiveCode Dd = dual_code(D);
    rep.mu_C_equals_D_dual = lat_equal(code_mu(C).lat, Dd.lat);
    rep.acp = acp_check(C, D).is_acp;
    const bool coprime = std::gcd((long long)C.G->n, C.tw->s->p) == 1;
    const bool ideals = is_scalar_ideal(C) && is_scalar_ideal(D);
    const bool c_eq_dual = lat_equal(C.lat, Dd.lat);
    if (rep.acp && ideals && !c_eq_dual) rep.consistent_with_theorems = false;
    if (c_eq_dual && ideals && coprime && is_weakly_free(C) && is_weakly_free(D) && !rep.acp)
        rep.consistent_with_theorems = false;
    return rep;
}

// -- the mixed-alphabet dual side ----------------------------------------------------

// chi applied coefficientwise, R bar[G] -> R[G].
inline GrElem gr_chi(const Tower& tw, const GrElem& x) {
    GrElem z = gr_zero(*tw.r, *x.G);
    for (int g = 0; g < x.G->n; ++g) z.a[(size_t)g] = chi_map(tw, x.a[(size_t)g]);
    return z;
}

namespace detail {

// Recombines the ell basis streams of one digit back into a single
// group-ring element over the extension level (the inverse of the
// coordinate split, applied coefficientwise).
inline GrElem recombine_streams(const Ring& ext, const std::vector<Elem>& basis,
                                const std::vector<GrElem>& streams, int digit, int ell) {
    const Group& G = *streams.front().G;
    GrElem acc = gr_zero(ext, G);
    for (int u = 0; u < ell; ++u) {
        const GrElem& s = streams[(size_t)(digit * ell + u)];
        for (int g = 0; g < G.n; ++g)
            acc.a[(size_t)g] = acc.a[(size_t)g] + ring_embed(ext, s.a[(size_t)g]) * basis[(size_t)u];
    }
    return acc;
}

}  // namespace detail

// Pairing of mixed vectors with group-ring entries that transports the
// trace form through the coordinate split: per digit the basis streams
// are recombined, multiplied in the extension group ring, and traced
// coefficientwise back down; the truncated digits contribute through chi.
//   [a,b] = sum_i Tr(L_i(a) L_i(b)) + chi(sum_j Tr(Lbar_j(a) Lbar_j(b))).
// When the splitting basis is trace-orthonormal this collapses to the
// plain componentwise form sum v_i w_i + chi(sum vbar_j wbar_j); a basis
// like that does not exist for every extension, so the traced form is the
// one that works in general (and for a trivial extension it is already
// the plain form).
inline GrElem mixed_euclid(const Tower& tw, const MixedGr& a, const MixedGr& b) {
    if (a.head.size() != b.head.size() || a.tail.size() != b.tail.size())
        throw LengthMismatch("mixed vectors of different shape");
    const Group& G = *(a.head.empty() ? a.tail.front().G : a.head.front().G);
    GrElem acc = gr_zero(*tw.r, G);
    for (int i = 0; i < tw.t2; ++i) {
        GrElem prod = detail::recombine_streams(*tw.ralpha, tw.basis.basis, a.head, i, tw.ell) *
                      detail::recombine_streams(*tw.ralpha, tw.basis.basis, b.head, i, tw.ell);
        for (int g = 0; g < G.n; ++g)
            acc.a[(size_t)g] = acc.a[(size_t)g] + trace(tw.gal, prod.a[(size_t)g]);
    }
    if (!a.tail.empty()) {
        GrElem bar = gr_zero(*tw.rbar, G);
        for (int j = 0; j < tw.k2 - tw.t2; ++j) {
            GrElem prod =
                detail::recombine_streams(*tw.ralphabar, tw.basis_bar.basis, a.tail, j, tw.ell) *
                detail::recombine_streams(*tw.ralphabar, tw.basis_bar.basis, b.tail, j, tw.ell);
            for (int g = 0; g < G.n; ++g)
                bar.a[(size_t)g] = bar.a[(size_t)g] + trace(tw.gal_bar, prod.a[(size_t)g]);
        }
        acc = acc + gr_chi(tw, bar);
    }
    return acc;
}

// The Euclidean dual of a mixed-column lattice (rows Z-span the code and the
// pairing is Z-bilinear, so the canonical rows are a complete constraint set).
inline Lattice mixed_e_dual(const Tower& tw, const Group& G, const Lattice& code) {
    const Vec mv = mixed_moduli(tw, G);
    const Mat rows = lat_natural_rows(code);
    std::vector<MixedGr> cs;
    for (const Vec& r : rows) cs.push_back(mixed_unflatten(tw, G, r));

    const int nR = tw.r->n, N = (int)mv.size();
    Vec mw;
    for (size_t i = 0; i < cs.size(); ++i)
        for (int g = 0; g < G.n; ++g) mw.insert(mw.end(), tw.r->mod.begin(), tw.r->mod.end());

    Mat A((size_t)N, Vec(mw.size(), 0));
    for (int col = 0; col < N; ++col) {
        Vec u((size_t)N, 0);
        u[(size_t)col] = 1;
        MixedGr uv = mixed_unflatten(tw, G, u);
        for (size_t ci = 0; ci < cs.size(); ++ci) {
            Vec val = gr_flatten(mixed_euclid(tw, cs[ci], uv));
            for (size_t j = 0; j < val.size(); ++j)
                A[(size_t)col][ci * (size_t)(G.n * nR) + j] = val[j];
        }
    }
    return lat_kernel(tw.s->p, tw.s->e, mv, mw, A);
}

// The duality-compatible involution on mixed vectors: mu on every stream.
inline MixedGr wp_map(const MixedGr& v) {
    MixedGr out;
    for (const GrElem& h : v.head) out.head.push_back(mu_antimap(h));
    for (const GrElem& t : v.tail) out.tail.push_back(mu_antimap(t));
    return out;
}

inline Lattice wp_image(const Tower& tw, const Group& G, const Lattice& code) {
    Mat rows;
    for (const Vec& r : lat_natural_rows(code))
        rows.push_back(mixed_flatten(wp_map(mixed_unflatten(tw, G, r))));
    return lat_make(tw.s->p, tw.s->e, mixed_moduli(tw, G), rows);
}

}  // namespace chainring
