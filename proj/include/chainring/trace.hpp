#pragma once
// trace.hpp -- Frobenius automorphisms, traces and trace-dual bases for a
// Galois layer big = small[x]/(f), f basic irreducible of degree ell.
//
// The generator sigma of the automorphism group over `small` is pinned by
// its residue action x -> x^q (q the residue size of `small`) and computed
// exactly: sigma(alpha) is the root of f obtained by Newton lifting from
// alpha^q.  Transporting basis monomials alpha^u -> alpha^{qu} directly is
// only a ring map when alpha^q happens to be a root of f, so the lifted
// root is the canonical choice for every admissible f.

#include "ring.hpp"

namespace chainring {

struct GaloisContext {
    RingPtr big, small;
    int ell = 1;                 // [big : small]
    std::vector<Elem> f;         // defining polynomial over small
    std::vector<Elem> sig_pows;  // sigma(alpha)^u for u < ell, over big
};

namespace detail {

inline Elem poly_eval_big(const GaloisContext& ctx, const std::vector<Elem>& poly, const Elem& y) {
    Elem acc = elem_zero(*ctx.big);
    for (int i = (int)poly.size() - 1; i >= 0; --i)
        acc = acc * y + ring_embed(*ctx.big, poly[(size_t)i]);
    return acc;
}

}  // namespace detail

inline GaloisContext galois_context(RingPtr big, RingPtr small, const std::vector<Elem>& f) {
    GaloisContext ctx;
    ctx.big = big;
    ctx.small = small;
    ctx.ell = (int)f.size() - 1;
    ctx.f = f;
    if (ctx.ell < 1) throw NotBasicIrreducible("defining polynomial of degree < 1");
    if (ctx.ell == 1) {
        if (big != small) throw LevelMismatch("degree-1 layer must collapse to its base");
        ctx.sig_pows = {elem_one(*big)};
        return ctx;
    }
    if (big->base != small || big->n != ctx.ell * small->n)
        throw LevelMismatch(big->name + " is not the Galois layer of " + small->name);

    const Ring& B = *big;
    Elem alpha = elem_zero(B);
    alpha.c[(size_t)small->n] = 1;  // the class of x

    // derivative of f over small
    std::vector<Elem> df;
    for (int i = 1; i <= ctx.ell; ++i) df.push_back(i * f[(size_t)i]);

    i64 q = small->qres();
    Elem y = elem_pow(alpha, q);
    int steps = 1;
    while ((1 << steps) < B.s + 1) ++steps;
    for (int it = 0; it <= steps; ++it) {
        Elem fy = detail::poly_eval_big(ctx, ctx.f, y);
        Elem dfy = detail::poly_eval_big(ctx, df, y);
        y = y - fy * elem_inverse(dfy);
    }
    if (!is_zero(detail::poly_eval_big(ctx, ctx.f, y)))
        throw error("Internal", "Newton lift of the Frobenius root did not converge in " + big->name);
    if (!(residue(y) == residue(elem_pow(alpha, q))))
        throw error("Internal", "Frobenius root drifted off its residue class in " + big->name);

    ctx.sig_pows.assign(1, elem_one(B));
    for (int u = 1; u < ctx.ell; ++u) ctx.sig_pows.push_back(ctx.sig_pows.back() * y);
    return ctx;
}

// coefficient of alpha^u in x, as an element of small (coordinate slice)
inline Elem galois_coeff(const GaloisContext& ctx, const Elem& x, int u) {
    if (x.R != ctx.big.get()) throw LevelMismatch("coefficient slice in " + ctx.big->name);
    const int nb = ctx.small->n;
    Vec v((size_t)nb);
    for (int i = 0; i < nb; ++i) v[(size_t)i] = x.c[(size_t)(u * nb + i)];
    return {ctx.small.get(), std::move(v)};
}

inline Elem frobenius(const GaloisContext& ctx, const Elem& x) {
    if (ctx.ell == 1) return x;
    if (x.R != ctx.big.get()) throw LevelMismatch("Frobenius argument not in " + ctx.big->name);
    Elem acc = elem_zero(*ctx.big);
    for (int u = 0; u < ctx.ell; ++u)
        acc = acc + ring_embed(*ctx.big, galois_coeff(ctx, x, u)) * ctx.sig_pows[(size_t)u];
    return acc;
}

// Tr(x) = sum of sigma^i(x), returned at the `small` level.
inline Elem trace(const GaloisContext& ctx, const Elem& x) {
    if (ctx.ell == 1) return x;
    Elem acc = x, y = x;
    for (int i = 1; i < ctx.ell; ++i) {
        y = frobenius(ctx, y);
        acc = acc + y;
    }
    for (int i = ctx.small->n; i < ctx.big->n; ++i)
        if (acc.c[(size_t)i] != 0)
            throw error("Internal", "trace left the base level of " + ctx.big->name);
    return galois_coeff(ctx, acc, 0);
}

// -- trace-dual bases ---------------------------------------------------------

using ElemMat = std::vector<std::vector<Elem>>;

// Inverse of a square matrix over a finite chain ring by unit-pivot
// elimination; throws SingularGram when no unit pivot exists.
inline ElemMat local_matrix_inverse(const Ring& R, ElemMat M) {
    const int n = (int)M.size();
    ElemMat I((size_t)n, std::vector<Elem>((size_t)n, elem_zero(R)));
    for (int i = 0; i < n; ++i) I[(size_t)i][(size_t)i] = elem_one(R);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (is_unit(M[(size_t)r][(size_t)col])) { piv = r; break; }
        if (piv < 0) throw SingularGram("no unit pivot in column " + std::to_string(col));
        std::swap(M[(size_t)col], M[(size_t)piv]);
        std::swap(I[(size_t)col], I[(size_t)piv]);
        Elem inv = elem_inverse(M[(size_t)col][(size_t)col]);
        for (int j = 0; j < n; ++j) {
            M[(size_t)col][(size_t)j] = inv * M[(size_t)col][(size_t)j];
            I[(size_t)col][(size_t)j] = inv * I[(size_t)col][(size_t)j];
        }
        for (int r = 0; r < n; ++r) {
            if (r == col || is_zero(M[(size_t)r][(size_t)col])) continue;
            Elem fac = M[(size_t)r][(size_t)col];
            for (int j = 0; j < n; ++j) {
                M[(size_t)r][(size_t)j] = M[(size_t)r][(size_t)j] - fac * M[(size_t)col][(size_t)j];
                I[(size_t)r][(size_t)j] = I[(size_t)r][(size_t)j] - fac * I[(size_t)col][(size_t)j];
            }
        }
    }
    return I;
}

struct GaloisBasis {
    std::vector<Elem> basis, dual;  // over big; Tr(basis_i * dual_j) = delta_ij
    ElemMat gram, gram_inv;         // over small
};

inline GaloisBasis dual_basis(const GaloisContext& ctx, const std::vector<Elem>& basis) {
    if ((int)basis.size() != ctx.ell)
        throw LengthMismatch("basis size " + std::to_string(basis.size()) + " != degree " + std::to_string(ctx.ell));
    for (const auto& b : basis)
        if (b.R != ctx.big.get()) throw LevelMismatch("basis element not in " + ctx.big->name);
    GaloisBasis out;
    out.basis = basis;
    const int n = ctx.ell;
    out.gram.assign((size_t)n, std::vector<Elem>((size_t)n, elem_zero(*ctx.small)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out.gram[(size_t)i][(size_t)j] = trace(ctx, basis[(size_t)i] * basis[(size_t)j]);
    out.gram_inv = local_matrix_inverse(*ctx.small, out.gram);
    for (int j = 0; j < n; ++j) {
        Elem d = elem_zero(*ctx.big);
        for (int m = 0; m < n; ++m)
            d = d + ring_embed(*ctx.big, out.gram_inv[(size_t)j][(size_t)m]) * basis[(size_t)m];
        out.dual.push_back(d);
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Elem t = trace(ctx, basis[(size_t)i] * out.dual[(size_t)j]);
            Elem expect = (i == j) ? elem_one(*ctx.small) : elem_zero(*ctx.small);
            if (!(t == expect)) throw SingularGram("dual-basis verification failed");
        }
    return out;
}

// coordinates of x in `basis`, extracted through the dual basis
inline std::vector<Elem> coords_dual(const GaloisContext& ctx, const GaloisBasis& gb, const Elem& x) {
    std::vector<Elem> out;
    for (int i = 0; i < ctx.ell; ++i) out.push_back(trace(ctx, x * gb.dual[(size_t)i]));
    return out;
}

}  // namespace chainring
