#pragma once
// groupring.hpp -- group rings S[G] over a tower level: convolution
// arithmetic, the anti-automorphism mu, augmentation, the identity-coefficient
// functional, the standard bilinear form, residue projection, coefficientwise
// trace, and the coefficientwise splitting Theta of the full tower.

#include "group.hpp"
#include "split.hpp"

namespace chainring {

struct GrElem {
    const Ring* R = nullptr;
    const Group* G = nullptr;
    std::vector<Elem> a;  // coefficient of g_i at position i
};

inline void gr_check(const GrElem& x, const GrElem& y) {
    if (x.R != y.R) throw LevelMismatch("group-ring coefficients at different levels");
    if (x.G != y.G) throw LevelMismatch("group-ring elements over different groups");
}

inline GrElem gr_zero(const Ring& R, const Group& G) {
    return {&R, &G, std::vector<Elem>((size_t)G.n, elem_zero(R))};
}

inline GrElem gr_group(const Ring& R, const Group& G, int g) {
    GrElem x = gr_zero(R, G);
    x.a[(size_t)g] = elem_one(R);
    return x;
}

inline GrElem gr_scalar(const Ring& R, const Group& G, const Elem& c) {
    GrElem x = gr_zero(R, G);
    x.a[0] = c;
    return x;
}

inline GrElem gr_one(const Ring& R, const Group& G) { return gr_group(R, G, 0); }

inline bool gr_is_zero(const GrElem& x) {
    for (const auto& c : x.a)
        if (!is_zero(c)) return false;
    return true;
}

inline bool operator==(const GrElem& x, const GrElem& y) {
    return x.R == y.R && x.G == y.G && x.a == y.a;
}
inline bool operator!=(const GrElem& x, const GrElem& y) { return !(x == y); }

inline GrElem operator+(const GrElem& x, const GrElem& y) {
    gr_check(x, y);
    GrElem z = x;
    for (size_t i = 0; i < z.a.size(); ++i) z.a[i] = z.a[i] + y.a[i];
    return z;
}

inline GrElem operator-(const GrElem& x, const GrElem& y) {
    gr_check(x, y);
    GrElem z = x;
    for (size_t i = 0; i < z.a.size(); ++i) z.a[i] = z.a[i] - y.a[i];
    return z;
}

inline GrElem operator-(const GrElem& x) {
    GrElem z = x;
    for (auto& c : z.a) c = -c;
    return z;
}

inline GrElem operator*(const Elem& c, const GrElem& x) {
    if (c.R != x.R) throw LevelMismatch("scalar level in group ring");
    GrElem z = x;
    for (auto& v : z.a) v = c * v;
    return z;
}

inline GrElem operator*(i64 k, const GrElem& x) {
    GrElem z = x;
    for (auto& v : z.a) v = k * v;
    return z;
}

// convolution: (xy)_k = sum over gh = k of x_g y_h
inline GrElem operator*(const GrElem& x, const GrElem& y) {
    gr_check(x, y);
    GrElem z = gr_zero(*x.R, *x.G);
    const auto& mul = x.G->mul;
    for (int g = 0; g < x.G->n; ++g) {
        if (is_zero(x.a[(size_t)g])) continue;
        for (int h = 0; h < x.G->n; ++h) {
            if (is_zero(y.a[(size_t)h])) continue;
            int k = mul[(size_t)g][(size_t)h];
            z.a[(size_t)k] = z.a[(size_t)k] + x.a[(size_t)g] * y.a[(size_t)h];
        }
    }
    return z;
}

// left and right translates g*x and x*g
inline GrElem gr_translate_left(int g, const GrElem& x) {
    GrElem z = gr_zero(*x.R, *x.G);
    for (int h = 0; h < x.G->n; ++h)
        z.a[(size_t)x.G->mul[(size_t)g][(size_t)h]] = x.a[(size_t)h];
    return z;
}

inline GrElem gr_translate_right(const GrElem& x, int g) {
    GrElem z = gr_zero(*x.R, *x.G);
    for (int h = 0; h < x.G->n; ++h)
        z.a[(size_t)x.G->mul[(size_t)h][(size_t)g]] = x.a[(size_t)h];
    return z;
}

// mu(sum a_g g) = sum a_g g^{-1}: an involutive ring anti-automorphism
inline GrElem mu_antimap(const GrElem& x) {
    GrElem z = gr_zero(*x.R, *x.G);
    for (int g = 0; g < x.G->n; ++g) z.a[(size_t)x.G->inv[(size_t)g]] = x.a[(size_t)g];
    return z;
}

inline Elem augmentation(const GrElem& x) {
    Elem s = elem_zero(*x.R);
    for (const auto& c : x.a) s = s + c;
    return s;
}

// the coefficient of the identity; with it, a = sum_g [[g^{-1} a]] g
inline Elem coeff_id(const GrElem& x) { return x.a[0]; }

// <x, y> = sum_g x_g y_g = [[x mu(y)]]
inline Elem bilinear(const GrElem& x, const GrElem& y) {
    gr_check(x, y);
    Elem s = elem_zero(*x.R);
    for (size_t i = 0; i < x.a.size(); ++i) s = s + x.a[i] * y.a[i];
    return s;
}

// Phi: S^n -> S[G] and its inverse (coefficient lists in group order)
inline GrElem phi_iso(const Ring& R, const Group& G, const std::vector<Elem>& v) {
    if ((int)v.size() != G.n) throw LengthMismatch("vector length != group order");
    for (const auto& c : v)
        if (c.R != &R) throw LevelMismatch("vector entries off level");
    return {&R, &G, v};
}

inline std::vector<Elem> phi_inverse(const GrElem& x) { return x.a; }

// coefficientwise level embedding and quotient projection
inline GrElem gr_embed(const Ring& big, const GrElem& x) {
    GrElem z;
    z.R = &big;
    z.G = x.G;
    for (const auto& c : x.a) z.a.push_back(ring_embed(big, c));
    return z;
}

inline GrElem gr_to_quotient(const Ring& Q, const GrElem& x) {
    GrElem z;
    z.R = &Q;
    z.G = x.G;
    for (const auto& c : x.a) z.a.push_back(to_quotient(Q, c));
    return z;
}

// residue projection pi: S[G] -> F_{p^r}[G]
inline GrElem pi_residue(const GrElem& x) {
    GrElem z;
    z.R = x.R->resfield();
    z.G = x.G;
    for (const auto& c : x.a) z.a.push_back(residue(c));
    return z;
}

// coefficientwise Galois trace R_a[G] -> R[G]
inline GrElem extended_trace(const GaloisContext& ctx, const GrElem& x) {
    if (x.R != ctx.big.get()) throw LevelMismatch("trace argument not over " + ctx.big->name);
    GrElem z;
    z.R = ctx.small.get();
    z.G = x.G;
    for (const auto& c : x.a) z.a.push_back(trace(ctx, c));
    return z;
}

inline GrElem gr_frobenius(const GaloisContext& ctx, const GrElem& x) {
    if (x.R != ctx.big.get()) throw LevelMismatch("Frobenius argument not over " + ctx.big->name);
    GrElem z;
    z.R = x.R;
    z.G = x.G;
    for (const auto& c : x.a) z.a.push_back(frobenius(ctx, c));
    return z;
}

// -- coefficientwise tower splitting -------------------------------------------

// Theta of a group-ring element: t*ell streams over R[G] and (k-t)*ell
// streams over Rbar[G], entry m of stream list = component map Theta_m
struct MixedGr {
    std::vector<GrElem> head, tail;
};

inline bool operator==(const MixedGr& a, const MixedGr& b) {
    return a.head == b.head && a.tail == b.tail;
}

inline MixedGr big_theta(const Tower& tw, const GrElem& x) {
    if (x.R != tw.s.get()) throw LevelMismatch("Theta expects coefficients in S");
    MixedGr out;
    const int nh = tw.t2 * tw.ell, nt = (tw.k2 - tw.t2) * tw.ell;
    for (int m = 0; m < nh; ++m) out.head.push_back(gr_zero(*tw.r, *x.G));
    for (int m = 0; m < nt; ++m) out.tail.push_back(gr_zero(*tw.rbar, *x.G));
    for (int g = 0; g < x.G->n; ++g) {
        MixedVec v = theta_map(tw, x.a[(size_t)g]);
        for (int m = 0; m < nh; ++m) out.head[(size_t)m].a[(size_t)g] = v.head[(size_t)m];
        for (int m = 0; m < nt; ++m) out.tail[(size_t)m].a[(size_t)g] = v.tail[(size_t)m];
    }
    return out;
}

inline GrElem big_theta_inverse(const Tower& tw, const MixedGr& v) {
    if (v.head.empty() && v.tail.empty()) throw LengthMismatch("empty Theta image");
    const Group* G = v.head.empty() ? v.tail[0].G : v.head[0].G;
    GrElem x = gr_zero(*tw.s, *G);
    for (int g = 0; g < G->n; ++g) {
        MixedVec w;
        for (const auto& hs : v.head) {
            if (hs.G != G) throw LevelMismatch("Theta streams over different groups");
            w.head.push_back(hs.a[(size_t)g]);
        }
        for (const auto& tsd : v.tail) {
            if (tsd.G != G) throw LevelMismatch("Theta streams over different groups");
            w.tail.push_back(tsd.a[(size_t)g]);
        }
        x.a[(size_t)g] = theta_inverse(tw, w);
    }
    return x;
}

}  // namespace chainring
