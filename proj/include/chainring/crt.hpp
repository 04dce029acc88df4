#pragma once
// crt.hpp -- semisimple structure of S[G] for abelian G with gcd(|G|, p) = 1:
// cyclotomic cosets, primitive central idempotents at the R and S levels,
// component decompositions of additive G-codes, and the component-wise dual.
//
// Everything is driven by one deterministic root-of-unity construction per
// cyclic factor C_{n_a} of G: extend S by a basic irreducible of degree
// m_a = ord(q^ell mod n_a), locate the first Teichmueller generator zeta in
// the canonical enumeration of Gamma(S_a), and put eta_a = zeta^{(Q-1)/n_a}.
// Coset-summed coefficients are then *checked* to land in the expected
// subring (coordinate prefix) instead of being truncated on faith; a failed
// check raises DescentFailure.
//
// Conventions that matter downstream:
//   - refined cosets of a class are indexed by j: piece j is the q^ell-orbit
//     of rep*q^j, so multiplying the root by q cycles pieces, not classes;
//   - a class is negation-fixed when the *refined* piece j = 0 equals its own
//     negative mod n (for unsplit classes this is the plain coset test);
//   - component exponents live in [0, s] with s the nilpotency index of the
//     maximal ideal of S; exponent s means the summand is absent (unit flag 0).

#include "code.hpp"

#include <map>
#include <mutex>
#include <tuple>

namespace chainring {

// -- cyclotomic cosets --------------------------------------------------------

struct FactorCosets {
    i64 n = 1;  // cyclic factor order
    i64 q = 1;  // residue size of R (orbit base)
    int ell = 1;
    std::vector<std::vector<i64>> classes;               // q-cosets, sorted; front is the minimal rep
    std::vector<int> kappa;                              // class sizes
    std::vector<std::vector<std::vector<i64>>> refined;  // [class][piece]: q^ell-orbit of rep*q^piece
    std::vector<bool> splits;                            // more than one refined piece
    std::vector<bool> negation_fixed;                    // -refined[i][0] == refined[i][0]
    std::vector<int> neg_class;                          // class index of -classes[i]
    std::vector<std::vector<int>> neg_piece;             // piece index of -refined[i][j] within neg_class[i]
};

inline FactorCosets cyclotomic_cosets(i64 n, i64 q, int ell) {
    if (n < 1) throw InvalidTable("cyclic factor of order " + std::to_string(n));
    if (ell < 1) throw InvalidTable("Galois degree " + std::to_string(ell));
    const i64 qmod = pmod(q, n);
    if (n > 1 && std::gcd(qmod, n) != 1)
        throw NotCoprime("orbit base " + std::to_string(q) + " is not a unit mod " + std::to_string(n));
    FactorCosets fc;
    fc.n = n;
    fc.q = q;
    fc.ell = ell;
    const i64 ql = modpow(q, ell, n);

    auto orbit = [&](i64 start, i64 base) {
        std::vector<i64> o;
        i64 x = pmod(start, n);
        do {
            o.push_back(x);
            x = (x * base) % n;
        } while (x != pmod(start, n));
        std::sort(o.begin(), o.end());
        return o;
    };

    std::vector<char> seen((size_t)n, 0);
    for (i64 i = 0; i < n; ++i) {
        if (seen[(size_t)i]) continue;
        std::vector<i64> cls = orbit(i, qmod);
        for (i64 z : cls) seen[(size_t)z] = 1;
        fc.classes.push_back(cls);
        fc.kappa.push_back((int)cls.size());
        // refined pieces: piece j is the q^ell-orbit of rep * q^j, and
        // multiplication by q cycles the pieces transitively
        std::vector<std::vector<i64>> pieces{orbit(i, ql)};
        const size_t npieces = cls.size() / pieces[0].size();
        i64 rep = i;
        for (size_t j = 1; j < npieces; ++j) {
            rep = (rep * qmod) % n;
            pieces.push_back(orbit(rep, ql));
        }
        {  // the pieces must tile the class exactly
            std::vector<i64> all;
            for (const auto& pc : pieces) all.insert(all.end(), pc.begin(), pc.end());
            std::sort(all.begin(), all.end());
            if (all != cls) throw error("Internal", "refined orbits do not tile their coset");
        }
        fc.refined.push_back(std::move(pieces));
        fc.splits.push_back(fc.refined.back().size() > 1);
    }

    auto find_class = [&](const std::vector<i64>& set) {
        for (size_t k = 0; k < fc.classes.size(); ++k)
            if (fc.classes[k] == set) return (int)k;
        throw error("Internal", "negated coset is not a coset mod " + std::to_string(n));
    };
    for (size_t i = 0; i < fc.classes.size(); ++i) {
        std::vector<i64> neg;
        for (i64 z : fc.classes[i]) neg.push_back(pmod(-z, n));
        std::sort(neg.begin(), neg.end());
        fc.neg_class.push_back(find_class(neg));
        std::vector<int> np;
        for (size_t j = 0; j < fc.refined[i].size(); ++j) {
            std::vector<i64> pneg;
            for (i64 z : fc.refined[i][(size_t)j]) pneg.push_back(pmod(-z, n));
            std::sort(pneg.begin(), pneg.end());
            const auto& target = fc.refined[(size_t)fc.neg_class[i]];
            int hit = -1;
            for (size_t j2 = 0; j2 < target.size(); ++j2)
                if (target[j2] == pneg) { hit = (int)j2; break; }
            if (hit < 0) throw error("Internal", "negated refined piece missing mod " + std::to_string(n));
            np.push_back(hit);
        }
        fc.neg_piece.push_back(np);
        fc.negation_fixed.push_back(fc.neg_class[i] == (int)i && fc.neg_piece[i][0] == 0);
    }
    return fc;
}

// -- root-of-unity host -------------------------------------------------------

namespace detail {

struct RootHost {
    RingPtr shat;  // S itself, or a Galois layer over S
    Elem zeta;     // canonical Teichmueller generator of Gamma(shat)
    Elem eta;      // primitive n-th root of unity
    int m = 1;
};

// first monic residue-irreducible polynomial of degree m, coefficients
// enumerated low-degree-fastest, lifted coordinatewise to S
inline std::vector<Elem> canonical_irreducible(const Ring& S, int m) {
    const Ring& F = *S.resfield();
    const int slots = (int)F.n;
    const i64 per = ipow(F.p, slots);  // elements of F
    auto elem_at = [&](i64 t) {
        Vec v((size_t)slots);
        for (int i = 0; i < slots; ++i) {
            v[(size_t)i] = t % F.p;
            t /= F.p;
        }
        return elem_reduce(F, std::move(v));
    };
    std::vector<i64> digits((size_t)m, 0);
    while (true) {
        polyf::FPoly f;
        for (int i = 0; i < m; ++i) f.push_back(elem_at(digits[(size_t)i]));
        f.push_back(elem_one(F));
        if (polyf::irreducible(F, f)) {
            std::vector<Elem> lift;
            for (const Elem& c : f) lift.push_back(res_lift(S, c));
            return lift;
        }
        int pos = 0;
        while (pos < m && ++digits[(size_t)pos] == per) digits[(size_t)pos++] = 0;
        if (pos == m) throw error("Internal", "no irreducible polynomial of degree " + std::to_string(m));
    }
}

inline RootHost root_host(const Tower& tw, i64 n) {
    RootHost h;
    if (std::gcd(n, tw.s->p) != 1)
        throw NotCoprime("factor order " + std::to_string(n) + " shares the characteristic " +
                         std::to_string(tw.s->p));
    const i64 ql = tw.s->qres();
    h.m = (int)mul_order(ql, n);

    // keep the Teichmueller enumeration of the host tractable
    i64 qhat = 1;
    for (int i = 0; i < h.m; ++i) {
        qhat *= ql;
        if (qhat > (1 << 20))
            throw TooLarge("root-of-unity host needs " + std::to_string(ql) + "^" +
                           std::to_string(h.m) + " Teichmueller elements");
    }
    h.shat = h.m == 1 ? tw.s : ring_galois_layer(tw.s, canonical_irreducible(*tw.s, h.m));
    const Ring& H = *h.shat;
    if (H.qres() != qhat || (qhat - 1) % n != 0)
        throw error("Internal", "root-of-unity host has the wrong residue size");

    // canonical generator: first Teichmueller element of full order Q-1
    const std::vector<i64> facs = prime_factors(qhat - 1);
    bool found = false;
    for (const Vec& tv : teichmuller_set(H)) {
        Elem t{&H, tv};
        if (!is_unit(t)) continue;
        bool full = true;
        for (i64 r : facs)
            if (elem_pow(t, (qhat - 1) / r) == elem_one(H)) { full = false; break; }
        if (full) {
            h.zeta = t;
            found = true;
            break;
        }
    }
    if (!found) throw error("Internal", "Gamma(" + H.name + ") has no generator");
    h.eta = elem_pow(h.zeta, (qhat - 1) / n);
    if (!(elem_pow(h.eta, n) == elem_one(H)))
        throw error("Internal", "eta is not an n-th root of unity");
    for (i64 r : prime_factors(n))
        if (elem_pow(h.eta, n / r) == elem_one(H))
            throw error("Internal", "eta has order below " + std::to_string(n));
    return h;
}

// extract the coordinate prefix of x as an element of `target`, failing
// loudly when any higher coordinate survives
inline Elem descend(const Ring& target, const Elem& x, const std::string& what) {
    if (x.R == &target) return x;
    if ((int)x.c.size() < target.n) throw LevelMismatch("descent of " + what + " into " + target.name);
    for (int i = 0; i < target.n; ++i)
        if (x.R->mod[(size_t)i] != target.mod[(size_t)i])
            throw LevelMismatch(target.name + " is not a coordinate prefix of " + x.R->name);
    for (size_t i = (size_t)target.n; i < x.c.size(); ++i)
        if (x.c[i] != 0) throw DescentFailure(what + " does not lie in " + target.name);
    Vec v(x.c.begin(), x.c.begin() + target.n);
    return elem_reduce(target, std::move(v));
}

}  // namespace detail

// -- primitive idempotents ----------------------------------------------------

struct IdempotentSet {
    const Tower* tw = nullptr;
    const Group* G = nullptr;
    bool refined = false;                    // S-level (q^ell pieces) vs R-level (q-cosets)
    std::vector<FactorCosets> factors;       // one per cyclic factor of G
    std::vector<GrElem> eps;                 // idempotents, coefficients embedded into S
    std::vector<std::vector<int>> class_of;  // per idempotent: class index per factor
    std::vector<std::vector<int>> piece_of;  // per idempotent: refined piece per factor (0 when unrefined)
    std::vector<int> mu_image;               // index of mu(eps[k]) within eps
};

namespace detail {

// (1/n) sum_y (sum_{z in piece} eta^{-yz}) c_a^y, descended to `target`
inline GrElem factor_idempotent(const Tower& tw, const Group& G, int factor, const RootHost& host,
                                const std::vector<i64>& piece, const Ring& target) {
    const Ring& H = *host.shat;
    const i64 n = (i64)G.orders[(size_t)factor];
    std::vector<Elem> etapow{elem_one(H)};
    for (i64 k = 1; k < n; ++k) etapow.push_back(etapow.back() * host.eta);
    const Elem inv_n = elem_inverse(elem_from_int(H, n));

    // index of the factor generator inside the product group
    int gen = 0;
    {
        std::vector<int> ex(G.orders.size(), 0);
        ex[(size_t)factor] = 1;
        for (size_t a = 0; a < G.orders.size(); ++a) gen = gen * G.orders[a] + ex[a];
    }

    GrElem out = gr_zero(*tw.s, G);
    int gidx = 0;
    for (i64 y = 0; y < n; ++y) {
        Elem acc = elem_zero(H);
        for (i64 z : piece) acc = acc + etapow[(size_t)pmod(-y * z, n)];
        acc = inv_n * acc;
        const Elem low = descend(target, acc, "idempotent coefficient");
        out.a[(size_t)gidx] = out.a[(size_t)gidx] + ring_embed(*tw.s, low);
        gidx = G.mul[(size_t)gidx][(size_t)gen];
    }
    return out;
}

inline void check_cyclic_structure(const Group& G) {
    if (!G.abelian) throw NotAbelian(G.name + " is not abelian");
    if (G.orders.empty() && G.n > 1)
        throw InvalidTable(G.name + " lacks a cyclic factor decomposition; build it as a product");
}

inline IdempotentSet build_idempotents(const Tower& tw, const Group& G, bool refined) {
    check_cyclic_structure(G);
    if (std::gcd((i64)G.n, tw.s->p) != 1)
        throw NotCoprime("|G| = " + std::to_string(G.n) + " shares the characteristic " +
                         std::to_string(tw.s->p));
    IdempotentSet set;
    set.tw = &tw;
    set.G = &G;
    set.refined = refined;

    const i64 q = tw.r->qres();
    // per-factor idempotents, grouped factor by factor
    std::vector<std::vector<GrElem>> parts;    // [factor][piece]
    std::vector<std::vector<int>> part_class;  // [factor][piece] -> class
    std::vector<std::vector<int>> part_piece;  // [factor][piece] -> refined index
    const std::vector<int> orders = G.orders.empty() ? std::vector<int>{1} : G.orders;
    for (size_t a = 0; a < orders.size(); ++a) {
        FactorCosets fc = cyclotomic_cosets(orders[a], q, tw.ell);
        RootHost host = root_host(tw, orders[a]);
        std::vector<GrElem> fp;
        std::vector<int> fcls, fpc;
        for (size_t i = 0; i < fc.classes.size(); ++i) {
            if (refined) {
                for (size_t j = 0; j < fc.refined[i].size(); ++j) {
                    fp.push_back(factor_idempotent(tw, G, (int)a, host, fc.refined[i][j], *tw.s));
                    fcls.push_back((int)i);
                    fpc.push_back((int)j);
                }
            } else {
                fp.push_back(factor_idempotent(tw, G, (int)a, host, fc.classes[i], *tw.r));
                fcls.push_back((int)i);
                fpc.push_back(0);
            }
        }
        set.factors.push_back(std::move(fc));
        parts.push_back(std::move(fp));
        part_class.push_back(std::move(fcls));
        part_piece.push_back(std::move(fpc));
    }

    // products over all factor tuples, odometer with the last factor fastest
    std::vector<size_t> pick(parts.size(), 0);
    while (true) {
        GrElem e = gr_one(*tw.s, G);
        std::vector<int> cls, pc;
        for (size_t a = 0; a < parts.size(); ++a) {
            e = e * parts[a][pick[a]];
            cls.push_back(part_class[a][pick[a]]);
            pc.push_back(part_piece[a][pick[a]]);
        }
        set.eps.push_back(std::move(e));
        set.class_of.push_back(std::move(cls));
        set.piece_of.push_back(std::move(pc));
        size_t a = parts.size();
        while (a > 0 && ++pick[a - 1] == parts[a - 1].size()) pick[--a] = 0;
        if (a == 0) break;
    }

    // the defining algebra facts are cheap to confirm, so confirm them
    GrElem sum = gr_zero(*tw.s, G);
    for (size_t i = 0; i < set.eps.size(); ++i) {
        sum = sum + set.eps[i];
        for (size_t k = i; k < set.eps.size(); ++k) {
            GrElem prod = set.eps[i] * set.eps[k];
            if (i == k ? !(prod == set.eps[i]) : !gr_is_zero(prod))
                throw error("Internal", "idempotent system of " + G.name + " fails orthogonality");
        }
    }
    if (!(sum == gr_one(*tw.s, G)))
        throw error("Internal", "idempotent system of " + G.name + " does not sum to 1");

    // mu permutes the system by coset negation; record and verify the table
    for (size_t k = 0; k < set.eps.size(); ++k) {
        GrElem m = mu_antimap(set.eps[k]);
        int at = -1;
        for (size_t i = 0; i < set.eps.size(); ++i)
            if (set.eps[i] == m) { at = (int)i; break; }
        if (at < 0) throw error("Internal", "mu image of an idempotent escapes the system");
        for (size_t a = 0; a < set.factors.size(); ++a) {
            const FactorCosets& fc = set.factors[a];
            const int ci = set.class_of[k][a], pj = set.piece_of[k][a];
            if (set.class_of[(size_t)at][a] != fc.neg_class[(size_t)ci] ||
                (refined && set.piece_of[(size_t)at][a] != fc.neg_piece[(size_t)ci][(size_t)pj]))
                throw error("Internal", "mu action disagrees with coset negation");
        }
        set.mu_image.push_back(at);
    }
    return set;
}

}  // namespace detail

inline IdempotentSet primitive_idempotents_R(const Tower& tw, const Group& G) {
    return detail::build_idempotents(tw, G, false);
}

inline IdempotentSet primitive_idempotents_S(const Tower& tw, const Group& G) {
    return detail::build_idempotents(tw, G, true);
}

// memoised systems; safe for concurrent lookup, callers keep tower and group alive
inline std::shared_ptr<const IdempotentSet> idempotent_system(const Tower& tw, const Group& G,
                                                              bool refined) {
    using Key = std::tuple<const Ring*, const Ring*, const Group*, bool>;
    static std::map<Key, std::shared_ptr<const IdempotentSet>> memo;
    static std::mutex mx;
    const Key key{tw.s.get(), tw.r.get(), &G, refined};
    std::lock_guard<std::mutex> lock(mx);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    auto built = std::make_shared<const IdempotentSet>(detail::build_idempotents(tw, G, refined));
    memo.emplace(key, built);
    return built;
}

// -- code decomposition -------------------------------------------------------

// Component summand shapes inside one idempotent piece e:
//   ideal             gamma^b * S[G]e                       exp = {b}
//   galois_graded     sum_j gamma^{a_j} beta_j K_e          exp = {a_j}, K_e = R[gamma][G]e
//   eisenstein_graded sum_i gamma^{a_i + i} * R-span(e c^g) exp = {a_i}, one slot per gamma power
// Exponents live in [0, s]; the value s encodes an absent summand.
enum class PieceForm { ideal, galois_graded, eisenstein_graded };

struct PieceDecomp {
    std::vector<int> cls;    // class label per cyclic factor
    std::vector<int> piece;  // refined piece label per cyclic factor
    int idem = -1;           // index into the idempotent system
    PieceForm form = PieceForm::ideal;
    std::vector<int> exp;
};

struct Decomposition {
    const Tower* tw = nullptr;
    const Group* G = nullptr;
    std::shared_ptr<const IdempotentSet> sys;  // refined system, one piece record per idempotent
    std::vector<Elem> beta;                    // basis of the Galois layer over R (elements of R_alpha)
    int s = 0;
    std::vector<PieceDecomp> pieces;
};

namespace detail {

inline void scalar_closed_rows(Mat& rows, const Tower& tw, const Group& G, const GrElem& base) {
    for (int g = 0; g < G.n; ++g) {
        GrElem t = gr_translate_left(g, base);
        for (int sig = 0; sig < tw.r->n; ++sig) {
            Elem b = elem_zero(*tw.r);
            b.c[(size_t)sig] = 1;
            rows.push_back(gr_flatten(ring_embed(*tw.s, b) * t));
        }
    }
}

inline Lattice rows_lattice(const Tower& tw, const Group& G, const Mat& rows) {
    return lat_make(tw.s->p, tw.s->e, gr_ambient_moduli(*tw.s, G), rows);
}

inline void ideal_rows(Mat& rows, const Tower& tw, const Group& G, const GrElem& e, int b) {
    const Elem gb = elem_pow(elem_unif(*tw.s), b);
    for (int sig = 0; sig < tw.s->n; ++sig) {
        Elem m = elem_zero(*tw.s);
        m.c[(size_t)sig] = 1;
        GrElem base = (gb * m) * e;
        for (int g = 0; g < G.n; ++g) rows.push_back(gr_flatten(gr_translate_left(g, base)));
    }
}

inline void galois_atom_rows(Mat& rows, const Tower& tw, const Group& G, const GrElem& e,
                             const Elem& beta_s, int a, int s) {
    for (int c = a; c < s; ++c)
        scalar_closed_rows(rows, tw, G, (elem_pow(elem_unif(*tw.s), c) * beta_s) * e);
}

inline void eisenstein_atom_rows(Mat& rows, const Tower& tw, const Group& G, const GrElem& e,
                                 int slot, int a) {
    scalar_closed_rows(rows, tw, G, elem_pow(elem_unif(*tw.s), a + slot) * e);
}

inline Lattice piece_projection(const AdditiveCode& C, const GrElem& e) {
    Mat rows;
    for (const Vec& r : lat_natural_rows(C.lat))
        rows.push_back(gr_flatten(gr_unflatten(*C.tw->s, *C.G, r) * e));
    return rows_lattice(*C.tw, *C.G, rows);
}

inline std::string piece_label(const PieceDecomp& pd) {
    std::string out = "(";
    for (size_t a = 0; a < pd.cls.size(); ++a)
        out += (a ? "," : "") + std::to_string(pd.cls[a]) + ":" + std::to_string(pd.piece[a]);
    return out + ")";
}

}  // namespace detail

inline std::vector<Elem> default_galois_basis(const Tower& tw) {
    std::vector<Elem> beta;
    for (int u = 0; u < tw.ell; ++u) {
        Elem b = elem_zero(*tw.ralpha);
        b.c[(size_t)(u * tw.r->n)] = 1;  // alpha^u
        beta.push_back(b);
    }
    return beta;
}

inline AdditiveCode reconstruct_code(const Decomposition& dec) {
    const Tower& tw = *dec.tw;
    const Group& G = *dec.G;
    Mat rows;
    for (const PieceDecomp& pd : dec.pieces) {
        const GrElem& e = dec.sys->eps[(size_t)pd.idem];
        switch (pd.form) {
            case PieceForm::ideal:
                detail::ideal_rows(rows, tw, G, e, pd.exp[0]);
                break;
            case PieceForm::galois_graded:
                for (size_t j = 0; j < dec.beta.size(); ++j)
                    detail::galois_atom_rows(rows, tw, G, e, ring_embed(*tw.s, dec.beta[j]),
                                             pd.exp[j], dec.s);
                break;
            case PieceForm::eisenstein_graded:
                for (size_t i = 0; i < pd.exp.size(); ++i)
                    detail::eisenstein_atom_rows(rows, tw, G, e, (int)i, pd.exp[(size_t)i]);
                break;
        }
    }
    return detail::code_from_lattice(tw, G, detail::rows_lattice(tw, G, rows));
}

inline Decomposition decompose_code(const AdditiveCode& C, std::vector<Elem> beta = {}) {
    const Tower& tw = *C.tw;
    const Group& G = *C.G;
    detail::check_cyclic_structure(G);
    if (std::gcd((i64)G.n, tw.s->p) != 1)
        throw NotCoprime("|G| = " + std::to_string(G.n) + " shares the characteristic " +
                         std::to_string(tw.s->p));
    if (!C.left_closed || !C.right_closed)
        throw SidednessViolation("decomposition needs a translation-invariant code");
    if (beta.empty()) beta = default_galois_basis(tw);
    if ((int)beta.size() != tw.ell) throw LengthMismatch("basis size != Galois degree");
    for (const Elem& b : beta)
        if (b.R != tw.ralpha.get()) throw LevelMismatch("basis element is not in " + tw.ralpha->name);

    Decomposition dec;
    dec.tw = &tw;
    dec.G = &G;
    dec.sys = idempotent_system(tw, G, true);
    dec.beta = beta;
    dec.s = tw.s->s;
    const int s = dec.s;

    std::vector<Lattice> proj;
    Lattice sum = detail::rows_lattice(tw, G, {});
    for (const GrElem& e : dec.sys->eps) {
        proj.push_back(detail::piece_projection(C, e));
        sum = lat_sum(sum, proj.back());
    }
    if (!lat_equal(sum, C.lat))
        throw NotComponentAligned("component projections do not reassemble the code");

    for (size_t k = 0; k < dec.sys->eps.size(); ++k) {
        const GrElem& e = dec.sys->eps[k];
        PieceDecomp pd;
        pd.cls = dec.sys->class_of[k];
        pd.piece = dec.sys->piece_of[k];
        pd.idem = (int)k;

        bool fitted = false;
        for (int b = 0; b <= s && !fitted; ++b) {
            Mat rows;
            detail::ideal_rows(rows, tw, G, e, b);
            if (lat_equal(proj[k], detail::rows_lattice(tw, G, rows))) {
                pd.form = PieceForm::ideal;
                pd.exp = {b};
                fitted = true;
            }
        }

        bool piece_splits = false;
        for (size_t a = 0; a < pd.cls.size(); ++a)
            piece_splits = piece_splits || dec.sys->factors[a].splits[(size_t)pd.cls[a]];

        if (!fitted) {
            // graded shapes: one exponent per basis direction, odometer search
            const int slots = piece_splits ? tw.k2 : tw.ell;
            std::vector<Elem> beta_s;
            if (!piece_splits)
                for (const Elem& b : beta) beta_s.push_back(ring_embed(*tw.s, b));
            auto graded_lattice = [&](const std::vector<int>& a) {
                Mat rows;
                for (int j = 0; j < slots; ++j) {
                    if (piece_splits)
                        detail::eisenstein_atom_rows(rows, tw, G, e, j, a[(size_t)j]);
                    else
                        detail::galois_atom_rows(rows, tw, G, e, beta_s[(size_t)j], a[(size_t)j], s);
                }
                return detail::rows_lattice(tw, G, rows);
            };
            std::vector<int> a((size_t)slots, 0);
            while (!fitted) {
                if (lat_equal(proj[k], graded_lattice(a))) {
                    fitted = true;
                    break;
                }
                int pos = slots;
                while (pos > 0 && ++a[(size_t)pos - 1] > s) a[(size_t)--pos] = 0;
                if (pos == 0) break;
            }
            if (fitted) {
                // canonicalise: raise each exponent as far as the projection
                // allows, so atoms absorbed by lower gamma powers read as absent
                for (int j = 0; j < slots; ++j) {
                    std::vector<int> probe = a;
                    for (int hi = s; hi > a[(size_t)j]; --hi) {
                        probe[(size_t)j] = hi;
                        if (lat_equal(proj[k], graded_lattice(probe))) {
                            a[(size_t)j] = hi;
                            break;
                        }
                    }
                }
                pd.form = piece_splits ? PieceForm::eisenstein_graded : PieceForm::galois_graded;
                pd.exp = a;
            }
        }
        if (!fitted)
            throw NotComponentAligned("component " + detail::piece_label(pd) +
                                      " is outside the graded family");
        dec.pieces.push_back(std::move(pd));
    }
    return dec;
}

// -- component-wise dual ------------------------------------------------------

// exponents mirror a -> s - a within each component; the Galois basis is
// replaced by its trace-dual. Only ideal and galois_graded components keep
// their shape under duality (the eisenstein_graded family is not dual-closed).
inline Decomposition dual_decomposition(const Decomposition& dec) {
    Decomposition out = dec;
    out.beta = dual_basis(dec.tw->gal, dec.beta).dual;
    for (PieceDecomp& pd : out.pieces) {
        if (pd.form == PieceForm::eisenstein_graded)
            throw NotComponentAligned(
                "component " + detail::piece_label(pd) +
                " has no closed-form mirrored dual; use the kernel dual instead");
        for (int& a : pd.exp) a = dec.s - a;
    }
    return out;
}

inline AdditiveCode abelian_dual(const Decomposition& dec) {
    return reconstruct_code(dual_decomposition(dec));
}

// flag-form complement: every exponent is 0 or s, and the complement flips
// each summand. With a trace self-dual basis this yields an ACP partner.
inline AdditiveCode abelian_acp_complement(const Decomposition& dec) {
    const Tower& tw = *dec.tw;
    for (size_t i = 0; i < dec.beta.size(); ++i)
        for (size_t j = 0; j < dec.beta.size(); ++j) {
            Elem t = trace(tw.gal, dec.beta[i] * dec.beta[j]);
            if (!(t == (i == j ? elem_one(*tw.r) : elem_zero(*tw.r))))
                throw SingularGram("basis is not trace self-dual");
        }
    Decomposition out = dec;
    for (PieceDecomp& pd : out.pieces)
        for (int& a : pd.exp) {
            if (a != 0 && a != dec.s)
                throw NotFlagForm("component " + detail::piece_label(pd) +
                                  " carries a proper gamma power");
            a = a == 0 ? dec.s : 0;
        }
    return reconstruct_code(out);
}

}  // namespace chainring
