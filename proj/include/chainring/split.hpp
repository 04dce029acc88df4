#pragma once
// split.hpp -- the full ring tower and its splitting maps.
//
// A tower is Z_{p^e} -> GR(p^e,d) -> R = GR[g1] -> R_a = R[f] -> S = R_a[g2]
// with the truncation relation theta_R^{s1-1} gamma^{t2} = 0 at the top.
// Degree-1 layers collapse to their base, so every special case (plain
// Z_{p^e}, a single Galois extension, a single Eisenstein extension) is the
// same code path.
//
// The splitting maps implemented here:
//   project_bar : R -> Rbar = R/theta^{s1-1}   (also R_a -> R_a bar)
//   chi_map     : Rbar -> R, xbar -> theta * lift(xbar)  (injective, image theta*R)
//   split_xi    : S -> R_a^t x (R_a bar)^{k-t}  (gamma-coefficient slices)
//   theta_map   : S -> R^{t*ell} x (Rbar)^{(k-t)*ell}
// theta composes split_xi with the trace-dual coordinate maps of the Galois
// layer; its output is ordered gamma-coefficient major, basis minor, so the
// entry for (coefficient i, basis index u) sits at position i*ell + u.

#include "trace.hpp"

namespace chainring {

struct TowerSpec {
    i64 p = 2;
    int e = 1;
    std::vector<i64> h;   // basic irreducible over Z_{p^e}; empty = degree 1
    std::vector<Vec> g1;  // Eisenstein over GR, coords per coefficient; empty = degree 1
    int t1 = 1;
    std::vector<Vec> f;   // basic irreducible over R; empty = degree 1
    std::vector<Vec> g2;  // Eisenstein over R_a; empty = degree 1
    int t2 = 1;
};

struct Tower {
    RingPtr zpe, gr, r, ralpha, s;
    RingPtr rbar, ralphabar;  // quotients by theta_R^{s1-1}; null when s1 = 1
    GaloisContext gal;        // ralpha | r
    GaloisContext gal_bar;    // ralphabar | rbar
    GaloisBasis basis;        // polynomial basis of ralpha|r and its trace dual
    GaloisBasis basis_bar;
    int d = 1, k1 = 1, t1 = 1, ell = 1, k2 = 1, t2 = 1;
    int s1 = 1, s2 = 1;
};

// head entries live at one level, tail entries at its theta^{s1-1} quotient
struct MixedVec {
    std::vector<Elem> head, tail;
};

inline bool operator==(const MixedVec& a, const MixedVec& b) {
    return a.head == b.head && a.tail == b.tail;
}

namespace detail {

inline std::vector<Elem> coeffs_over(const Ring& B, const std::vector<Vec>& cs) {
    std::vector<Elem> out;
    for (const Vec& c : cs) {
        if ((int)c.size() != B.n)
            throw LengthMismatch("coefficient width " + std::to_string(c.size()) + " over " + B.name);
        out.push_back(elem_reduce(B, c));
    }
    return out;
}

inline bool ring_layout_equal(const Ring& A, const Ring& B) {
    return A.n == B.n && A.mod == B.mod && A.one == B.one && A.unif == B.unif && A.tab == B.tab;
}

}  // namespace detail

inline Tower tower_build(const TowerSpec& ts) {
    Tower tw;
    tw.zpe = ring_zpe(ts.p, ts.e);

    if (ts.h.size() >= 2) {
        std::vector<Elem> h;
        for (i64 c : ts.h) h.push_back(elem_from_int(*tw.zpe, c));
        tw.gr = ring_galois_layer(tw.zpe, h);
        tw.d = (int)ts.h.size() - 1;
    } else {
        tw.gr = tw.zpe;
    }

    if (ts.g1.size() >= 3) {  // degree >= 2
        tw.r = ring_eisenstein_layer(tw.gr, detail::coeffs_over(*tw.gr, ts.g1), ts.t1);
        tw.k1 = (int)ts.g1.size() - 1;
        tw.t1 = ts.t1;
    } else {
        tw.r = tw.gr;
    }
    tw.s1 = tw.r->s;

    std::vector<Elem> f;
    if (ts.f.size() >= 2) {
        f = detail::coeffs_over(*tw.r, ts.f);
        tw.ralpha = ring_galois_layer(tw.r, f);
        tw.ell = (int)ts.f.size() - 1;
    } else {
        tw.ralpha = tw.r;
        f = {elem_zero(*tw.r), elem_one(*tw.r)};  // x
    }

    if (ts.g2.size() >= 3) {
        tw.s = ring_eisenstein_layer(tw.ralpha, detail::coeffs_over(*tw.ralpha, ts.g2), ts.t2);
        tw.k2 = (int)ts.g2.size() - 1;
        tw.t2 = ts.t2;
    } else {
        tw.s = tw.ralpha;
    }
    tw.s2 = tw.s->s;

    if (tw.s1 == 1 && tw.k2 > tw.t2)
        throw TruncationOutOfRange("truncated tail needs a non-field first layer (s1 >= 2)");

    if (tw.s1 >= 2) {
        tw.rbar = ring_quotient(tw.r, tw.s1 - 1);
        if (tw.ell >= 2) {
            std::vector<Elem> fbar;
            for (const auto& c : f) fbar.push_back(to_quotient(*tw.rbar, c));
            tw.ralphabar = ring_galois_layer(tw.rbar, fbar);
            // the Galois layer of the quotient must coincide with the quotient
            // of the Galois layer, slot for slot
            auto qcheck = ring_quotient(tw.ralpha, tw.s1 - 1);
            if (!detail::ring_layout_equal(*tw.ralphabar, *qcheck))
                throw error("Internal", "quotient and Galois layer do not commute");
            tw.gal_bar = galois_context(tw.ralphabar, tw.rbar, fbar);
        } else {
            tw.ralphabar = tw.rbar;
            tw.gal_bar = galois_context(tw.rbar, tw.rbar, {elem_zero(*tw.rbar), elem_one(*tw.rbar)});
        }
    }

    if (tw.ell >= 2) {
        tw.gal = galois_context(tw.ralpha, tw.r, f);
    } else {
        tw.gal = galois_context(tw.r, tw.r, f);
    }

    // default polynomial basis (1, alpha, ..., alpha^{ell-1}) and its dual
    std::vector<Elem> basis;
    for (int u = 0; u < tw.ell; ++u) {
        Elem b = elem_zero(*tw.ralpha);
        b.c[(size_t)(u * tw.r->n)] = 1;
        basis.push_back(b);
    }
    tw.basis = dual_basis(tw.gal, basis);
    if (tw.rbar) {
        std::vector<Elem> bb;
        for (const auto& b : basis) bb.push_back(to_quotient(*tw.ralphabar, b));
        tw.basis_bar = dual_basis(tw.gal_bar, bb);
    }

    // the tail slots of S carry exactly the quotient moduli
    if (tw.k2 > tw.t2) {
        const int nra = tw.ralpha->n;
        for (int j = tw.t2; j < tw.k2; ++j)
            for (int m = 0; m < nra; ++m)
                if (tw.s->mod[(size_t)(j * nra + m)] != tw.ralphabar->mod[(size_t)m])
                    throw error("Internal", "tail slot moduli do not match the quotient level");
    }
    return tw;
}

// replace the default polynomial basis; the change matrix must be invertible
inline void tower_set_basis(Tower& tw, const std::vector<Elem>& basis) {
    tw.basis = dual_basis(tw.gal, basis);
    if (tw.rbar) {
        std::vector<Elem> bb;
        for (const auto& b : basis) bb.push_back(to_quotient(*tw.ralphabar, b));
        tw.basis_bar = dual_basis(tw.gal_bar, bb);
    }
}

// composite chain-ring invariants (p, e, r, k, t) of S
struct TowerInvariants {
    i64 p;
    int e, r, k, t;
};

inline TowerInvariants tower_invariants(const Tower& tw) {
    TowerInvariants inv;
    inv.p = tw.s->p;
    inv.e = tw.s->e;
    inv.r = tw.d * tw.ell;
    inv.k = tw.k1 * tw.k2;
    inv.t = tw.s2 - inv.k * (inv.e - 1);
    return inv;
}

// -- quotient projections and the section chi --------------------------------

inline Elem project_bar(const Tower& tw, const Elem& x) {
    if (!tw.rbar) throw LevelMismatch("no proper quotient level: s1 = 1");
    if (x.R == tw.ralpha.get()) return to_quotient(*tw.ralphabar, x);
    if (x.R == tw.r.get()) return to_quotient(*tw.rbar, x);
    throw LevelMismatch("project_bar expects the R or R_a level");
}

// chi(xbar) = theta^{s1-1} * lift(xbar); independent of the lift because
// theta^{s1-1} annihilates the kernel theta^{s1-1}R of the projection.
inline Elem chi_map(const Tower& tw, const Elem& xbar) {
    if (!tw.rbar) throw LevelMismatch("no proper quotient level: s1 = 1");
    const Ring* target = nullptr;
    if (xbar.R == tw.ralphabar.get()) target = tw.ralpha.get();
    else if (xbar.R == tw.rbar.get()) target = tw.r.get();
    else throw LevelMismatch("chi expects a quotient-level element");
    // Multiplying any lift by one power of the uniformizer is well defined:
    // lift ambiguity theta^{s1-1}*(...) is killed since theta^{s1} = 0.
    Elem lift = lift_from_quotient(*target, xbar);
    return elem_unif(*target) * lift;
}

// -- xi: gamma-coefficient slicing --------------------------------------------

inline MixedVec split_xi(const Tower& tw, const Elem& x) {
    if (x.R != tw.s.get()) throw LevelMismatch("xi expects the S level");
    MixedVec out;
    const int nra = tw.ralpha->n;
    for (int j = 0; j < tw.k2; ++j) {
        Vec block((size_t)nra);
        for (int m = 0; m < nra; ++m) block[(size_t)m] = x.c[(size_t)(j * nra + m)];
        if (j < tw.t2) {
            out.head.push_back(elem_reduce(*tw.ralpha, std::move(block)));
        } else {
            out.tail.push_back(elem_reduce(*tw.ralphabar, std::move(block)));
        }
    }
    return out;
}

inline Elem xi_inverse(const Tower& tw, const MixedVec& v) {
    if ((int)v.head.size() != tw.t2 || (int)v.tail.size() != tw.k2 - tw.t2)
        throw LengthMismatch("xi^{-1} expects shape (" + std::to_string(tw.t2) + "," +
                             std::to_string(tw.k2 - tw.t2) + ")");
    const int nra = tw.ralpha->n;
    Vec coords((size_t)tw.s->n, 0);
    for (int j = 0; j < tw.k2; ++j) {
        const Elem& src = j < tw.t2 ? v.head[(size_t)j] : v.tail[(size_t)(j - tw.t2)];
        if (j < tw.t2 && src.R != tw.ralpha.get()) throw LevelMismatch("head entry level");
        if (j >= tw.t2 && src.R != tw.ralphabar.get()) throw LevelMismatch("tail entry level");
        for (int m = 0; m < nra; ++m) coords[(size_t)(j * nra + m)] = src.c[(size_t)m];
    }
    return elem_reduce(*tw.s, std::move(coords));
}

// -- theta: xi followed by trace-dual coordinates ------------------------------

inline MixedVec theta_map(const Tower& tw, const Elem& x) {
    MixedVec xi = split_xi(tw, x);
    MixedVec out;
    for (const Elem& h : xi.head) {
        auto cs = coords_dual(tw.gal, tw.basis, h);
        for (auto& c : cs) out.head.push_back(std::move(c));
    }
    for (const Elem& t : xi.tail) {
        auto cs = coords_dual(tw.gal_bar, tw.basis_bar, t);
        for (auto& c : cs) out.tail.push_back(std::move(c));
    }
    return out;
}

inline Elem theta_inverse(const Tower& tw, const MixedVec& v) {
    if ((int)v.head.size() != tw.t2 * tw.ell || (int)v.tail.size() != (tw.k2 - tw.t2) * tw.ell)
        throw LengthMismatch("theta^{-1} expects shape (" + std::to_string(tw.t2 * tw.ell) + "," +
                             std::to_string((tw.k2 - tw.t2) * tw.ell) + ")");
    MixedVec xi;
    for (int i = 0; i < tw.t2; ++i) {
        Elem acc = elem_zero(*tw.ralpha);
        for (int u = 0; u < tw.ell; ++u) {
            const Elem& c = v.head[(size_t)(i * tw.ell + u)];
            if (c.R != tw.r.get()) throw LevelMismatch("theta head entry level");
            acc = acc + ring_embed(*tw.ralpha, c) * tw.basis.basis[(size_t)u];
        }
        xi.head.push_back(acc);
    }
    for (int j = 0; j < tw.k2 - tw.t2; ++j) {
        Elem acc = elem_zero(*tw.ralphabar);
        for (int u = 0; u < tw.ell; ++u) {
            const Elem& c = v.tail[(size_t)(j * tw.ell + u)];
            if (c.R != tw.rbar.get()) throw LevelMismatch("theta tail entry level");
            acc = acc + ring_embed(*tw.ralphabar, c) * tw.basis_bar.basis[(size_t)u];
        }
        xi.tail.push_back(acc);
    }
    return xi_inverse(tw, xi);
}

// the mixed scalar action of lambda in R: lambda on heads, lambda-bar on tails
inline MixedVec mixed_scale(const Tower& tw, const Elem& lam, const MixedVec& v) {
    if (lam.R != tw.r.get()) throw LevelMismatch("mixed scalars live in R");
    MixedVec out;
    for (const Elem& h : v.head) out.head.push_back(ring_embed(*h.R, lam) * h);
    if (!v.tail.empty()) {
        Elem lb = to_quotient(*tw.rbar, lam);
        for (const Elem& t : v.tail) out.tail.push_back(ring_embed(*t.R, lb) * t);
    }
    return out;
}

}  // namespace chainring
