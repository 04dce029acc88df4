#pragma once
// ring.hpp -- finite chain rings and their Galois/Eisenstein layers.
// Part of the chainring library (MIT license, see LICENSE).
//
// Every ring level is represented the same way: as the additive group
// +_sigma Z_{m_sigma} on a fixed monomial basis b_sigma, together with the
// multiplication table tab[i][j] = canonical coordinates of b_i * b_j.
// The layers are
//
//   Z_{p^e}  -->  GR(p^e,d) = Z_{p^e}[x]/(h)          (unramified)
//            -->  R   = GR[g1]  with g1 Eisenstein     (totally ramified)
//            -->  R_a = R[f]    with f basic irreducible
//            -->  S   = R_a[g]  with g Eisenstein and the truncation
//                                relation theta^{s1-1} gamma^t = 0.
//
// Slot nesting is generator-power major: an S slot is
//   ((j * ell + u) * dim(R) + j1 * d + i)
// for gamma^j a^u gamma1^{j1} x^i, so each lower level is a coordinate
// prefix of the next and embeddings are identity maps on coordinates.
//
// Slot moduli follow from the valuation filtration.  Writing theta for the
// uniformizer, ram = val(p) and uval[sigma] = val(b_sigma) (always < ram),
// the ideal theta^M is coordinate aligned:
//   theta^M = +_sigma p^{ceil((M - uval[sigma]) / ram)} Z_{m_sigma} b_sigma,
// because the numbers a*ram + uval[sigma] are distinct across slots of
// distinct uval and the valuation of a sum is the minimum over its
// monomial parts.  This gives quotient rings, truncation moduli and the
// gamma-adic digit stream in plain coordinate arithmetic.

#include <memory>

#include "base.hpp"
#include "howell.hpp"

namespace chainring {

struct Ring;
using RingPtr = std::shared_ptr<const Ring>;

struct Ring {
    i64 p = 2;
    int e = 1;            // characteristic p^e
    int n = 1;            // number of coordinate slots
    Vec mod;              // per-slot modulus, a p-power dividing p^e (1 allowed)
    std::vector<std::vector<Vec>> tab;  // tab[i][j] = coords of b_i b_j
    Vec one, unif;        // coords of 1 and of the uniformizer theta
    int s = 1;            // nilpotency index of the maximal ideal (1 = field)
    int ram = 1;          // val(p); for char-p fields a formal value >= s
    std::vector<int> uval;  // val(b_sigma), in [0, ram)
    int res_deg = 1;        // residue field F_{p^res_deg}
    std::vector<int> res_slots;  // slots whose residues span the residue field
    std::shared_ptr<const Ring> residue_field;  // null when this is a field
    RingPtr base;         // the layer below (null for Z_{p^e})
    std::string name;

    mutable std::vector<Vec> teich;  // cached Teichmueller set (lazy)

    const Ring* resfield() const { return residue_field ? residue_field.get() : this; }
    i64 qres() const { return ipow(p, res_deg); }
};

struct Elem {
    const Ring* R = nullptr;
    Vec c;
};

inline void check_same(const Elem& a, const Elem& b) {
    if (a.R != b.R)
        throw LevelMismatch((a.R ? a.R->name : "?") + " vs " + (b.R ? b.R->name : "?"));
}

inline Elem elem_zero(const Ring& R) { return {&R, Vec(R.n, 0)}; }
inline Elem elem_one(const Ring& R) { return {&R, R.one}; }
inline Elem elem_unif(const Ring& R) { return {&R, R.unif}; }

inline Elem elem_reduce(const Ring& R, Vec v) {
    for (int i = 0; i < R.n; ++i) v[i] = pmod(v[i], R.mod[i]);
    return {&R, std::move(v)};
}

inline Elem elem_from_int(const Ring& R, i64 k) {
    Vec v(R.n);
    for (int i = 0; i < R.n; ++i) v[i] = pmod(R.one[i] * k, R.mod[i]);
    return {&R, std::move(v)};
}

inline bool is_zero(const Elem& a) {
    for (i64 x : a.c)
        if (x != 0) return false;
    return true;
}

inline bool operator==(const Elem& a, const Elem& b) { return a.R == b.R && a.c == b.c; }
inline bool operator!=(const Elem& a, const Elem& b) { return !(a == b); }

inline Elem operator+(const Elem& a, const Elem& b) {
    check_same(a, b);
    Vec v(a.c.size());
    for (size_t i = 0; i < v.size(); ++i) v[i] = pmod(a.c[i] + b.c[i], a.R->mod[i]);
    return {a.R, std::move(v)};
}

inline Elem operator-(const Elem& a, const Elem& b) {
    check_same(a, b);
    Vec v(a.c.size());
    for (size_t i = 0; i < v.size(); ++i) v[i] = pmod(a.c[i] - b.c[i], a.R->mod[i]);
    return {a.R, std::move(v)};
}

inline Elem operator-(const Elem& a) {
    Vec v(a.c.size());
    for (size_t i = 0; i < v.size(); ++i) v[i] = pmod(-a.c[i], a.R->mod[i]);
    return {a.R, std::move(v)};
}

inline Elem operator*(i64 k, const Elem& a) {
    Vec v(a.c.size());
    for (size_t i = 0; i < v.size(); ++i) v[i] = pmod(k * a.c[i], a.R->mod[i]);
    return {a.R, std::move(v)};
}

inline Elem operator*(const Elem& a, const Elem& b) {
    check_same(a, b);
    const Ring& R = *a.R;
    const i64 PE = ipow(R.p, R.e);
    Vec acc(R.n, 0);
    for (int i = 0; i < R.n; ++i) {
        if (a.c[i] == 0) continue;
        for (int j = 0; j < R.n; ++j) {
            if (b.c[j] == 0) continue;
            i64 w = (a.c[i] * b.c[j]) % PE;
            const Vec& t = R.tab[i][j];
            for (int k = 0; k < R.n; ++k) acc[k] += w * t[k];
        }
        for (int k = 0; k < R.n; ++k) acc[k] = pmod(acc[k], R.mod[k]);
    }
    return {&R, std::move(acc)};
}

inline Elem elem_pow(Elem a, i64 k) {
    Elem r = elem_one(*a.R);
    while (k > 0) {
        if (k & 1) r = r * a;
        a = a * a;
        k >>= 1;
    }
    return r;
}

// -- residue field maps -----------------------------------------------------

inline Elem residue(const Elem& a) {
    const Ring& R = *a.R;
    if (!R.residue_field) return a;  // the ring is its own residue field
    const Ring* F = R.residue_field.get();
    Vec v((size_t)F->n);
    for (size_t i = 0; i < R.res_slots.size(); ++i) v[i] = pmod(a.c[(size_t)R.res_slots[i]], R.p);
    return {F, std::move(v)};
}

inline Elem res_lift(const Ring& R, const Elem& rbar) {
    if (rbar.R != R.resfield()) throw LevelMismatch("residue lift into " + R.name);
    if (!R.residue_field) return rbar;
    Vec v((size_t)R.n, 0);
    for (size_t i = 0; i < R.res_slots.size(); ++i) v[(size_t)R.res_slots[i]] = rbar.c[i];
    return elem_reduce(R, std::move(v));
}

inline bool is_unit(const Elem& a) { return !is_zero(residue(a)); }

// -- division and inversion -------------------------------------------------

// One solution x of den*x = num, if any (unique only up to ann(den)).
inline bool elem_divide(const Elem& num, const Elem& den, Elem& out) {
    check_same(num, den);
    const Ring& R = *num.R;
    Mat A(R.n);
    for (int i = 0; i < R.n; ++i) {
        Elem bi{&R, Vec(R.n, 0)};
        bi.c[i] = 1;
        A[i] = (bi * den).c;
    }
    Vec sol;
    if (!lat_solve(R.p, R.e, R.mod, R.mod, A, num.c, sol)) return false;
    out = {&R, std::move(sol)};
    return true;
}

// The Teichmueller representative with the same residue as a: iterate the
// q-power map from a coordinate lift; the fixed point is reached within s
// steps because val(x - omega) strictly grows under x -> x^q.
inline Elem teich_lift(const Elem& a) {
    const Ring& R = *a.R;
    i64 Q = R.qres();
    Elem y = res_lift(R, residue(a));
    for (int i = 0; i < R.s + 1; ++i) y = elem_pow(y, Q);
    return y;
}

inline Elem elem_inverse(const Elem& a) {
    const Ring& R = *a.R;
    if (!is_unit(a)) throw NotAUnit("element of the maximal ideal in " + R.name);
    i64 Q = R.qres();
    Elem w = teich_lift(a);
    Elem winv = elem_pow(w, Q >= 2 ? Q - 2 : 0);  // w^{Q-1} = 1 on units of Gamma
    Elem m = winv * a - elem_one(R);              // val(m) >= 1
    Elem series = elem_zero(R), mp = elem_one(R);
    for (int i = 0; i < R.s; ++i) {               // (1+m)^{-1} = sum (-m)^i
        series = (i % 2 == 0) ? series + mp : series - mp;
        mp = mp * m;
    }
    Elem inv = winv * series;
    if (!(inv * a == elem_one(R))) throw NotAUnit("inverse verification failed in " + R.name);
    return inv;
}

// -- Teichmueller set and gamma-adic digits ---------------------------------

// Gamma(R) enumerated in the canonical order of residue-field coordinates
// (first residue slot fastest).  Cached per ring.
inline const std::vector<Vec>& teichmuller_set(const Ring& R) {
    if (!R.teich.empty()) return R.teich;
    i64 Q = R.qres();
    std::vector<Vec> out;
    out.reserve((size_t)Q);
    int k = (int)R.res_slots.size();
    Vec digits(k, 0);
    for (i64 cnt = 0; cnt < Q; ++cnt) {
        Vec v(R.n, 0);
        for (int i = 0; i < k; ++i) v[R.res_slots[i]] = digits[i];
        Elem y = elem_reduce(R, std::move(v));
        for (int it = 0; it < R.s + 1; ++it) y = elem_pow(y, Q);
        if (!(elem_pow(y, Q) == y)) throw error("Internal", "Teichmueller iteration did not converge in " + R.name);
        out.push_back(y.c);
        for (int i = 0; i < k; ++i) {  // odometer over residue coordinates
            if (++digits[i] < R.p) break;
            digits[i] = 0;
        }
    }
    R.teich = std::move(out);
    return R.teich;
}

// a = sum_i digit_i * theta^i with digit_i in Gamma(R); length s.  The
// division ambiguity theta^{s-i} ann never reaches the residues of later
// digits, so the stream is canonical.
inline std::vector<Elem> gamma_adic(const Elem& a) {
    const Ring& R = *a.R;
    std::vector<Elem> digits;
    Elem v = a;
    for (int i = 0; i < R.s; ++i) {
        Elem x = teich_lift(v);
        digits.push_back(x);
        if (i + 1 == R.s) break;
        Elem next = elem_zero(R);
        if (!elem_divide(v - x, elem_unif(R), next))
            throw error("Internal", "gamma-adic division failed in " + R.name);
        v = next;
    }
    return digits;
}

inline Elem gamma_adic_assemble(const Ring& R, const std::vector<Elem>& digits) {
    Elem acc = elem_zero(R), tp = elem_one(R);
    for (const Elem& d : digits) {
        acc = acc + d * tp;
        tp = tp * elem_unif(R);
    }
    return acc;
}

// -- polynomial helpers over a residue field --------------------------------

namespace polyf {

using FPoly = std::vector<Elem>;  // little-endian coefficients over one Ring

inline int deg(const FPoly& f) {
    for (int i = (int)f.size() - 1; i >= 0; --i)
        if (!is_zero(f[i])) return i;
    return -1;
}

inline FPoly trim(FPoly f) {
    f.resize((size_t)(deg(f) + 1), f.empty() ? Elem{} : elem_zero(*f[0].R));
    return f;
}

inline FPoly mul(const Ring& F, const FPoly& a, const FPoly& b) {
    if (deg(a) < 0 || deg(b) < 0) return {};
    FPoly c((size_t)(deg(a) + deg(b) + 1), elem_zero(F));
    for (int i = 0; i <= deg(a); ++i)
        for (int j = 0; j <= deg(b); ++j) c[(size_t)(i + j)] = c[(size_t)(i + j)] + a[(size_t)i] * b[(size_t)j];
    return c;
}

// remainder of a modulo monic-normalisable m (field coefficients)
inline FPoly rem(const Ring& F, FPoly a, const FPoly& m) {
    int dm = deg(m);
    Elem lead_inv = elem_inverse(m[(size_t)dm]);
    while (deg(a) >= dm) {
        int da = deg(a);
        Elem q = a[(size_t)da] * lead_inv;
        for (int i = 0; i <= dm; ++i)
            a[(size_t)(da - dm + i)] = a[(size_t)(da - dm + i)] - q * m[(size_t)i];
    }
    return trim(std::move(a));
}

inline FPoly gcd(const Ring& F, FPoly a, FPoly b) {
    a = trim(std::move(a));
    b = trim(std::move(b));
    while (deg(b) >= 0) {
        FPoly r = rem(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (deg(a) >= 0) {
        Elem li = elem_inverse(a[(size_t)deg(a)]);
        for (auto& x : a) x = x * li;
    }
    return a;
}

inline FPoly powmod_x(const Ring& F, i64 E, const FPoly& m) {
    // x^E mod m by square and multiply
    FPoly r{elem_one(F)}, b{elem_zero(F), elem_one(F)};
    b = rem(F, b, m);
    while (E > 0) {
        if (E & 1) r = rem(F, mul(F, r, b), m);
        b = rem(F, mul(F, b, b), m);
        E >>= 1;
    }
    return r;
}

// Irreducibility of monic f over the field F with |F| = Q:
// x^{Q^m} = x mod f, and gcd(x^{Q^{m/r}} - x, f) = 1 for prime r | m.
inline bool irreducible(const Ring& F, const FPoly& f) {
    int m = deg(f);
    if (m <= 0) return false;
    if (m == 1) return true;
    i64 Q = F.qres();
    auto xq_minus_x = [&](int k) {
        i64 E = 1;
        for (int i = 0; i < k; ++i) E *= Q;
        FPoly g = powmod_x(F, E, f);
        g.resize(std::max<size_t>(g.size(), 2), elem_zero(F));
        g[1] = g[1] - elem_one(F);
        return trim(std::move(g));
    };
    if (deg(xq_minus_x(m)) >= 0) return false;
    for (i64 r : prime_factors(m))
        if (deg(gcd(F, xq_minus_x((int)(m / r)), f)) != 0) return false;
    return true;
}

}  // namespace polyf

// -- layer builders ----------------------------------------------------------

inline RingPtr ring_zpe(i64 p, int e) {
    if (!is_prime(p)) throw NotPrime(std::to_string(p));
    if (e < 1) throw TruncationOutOfRange("characteristic exponent e = " + std::to_string(e));
    auto R = std::make_shared<Ring>();
    R->p = p; R->e = e; R->n = 1;
    R->mod = {ipow(p, e)};
    R->tab = {{{1}}};
    R->one = {1};
    R->unif = {e > 1 ? p : 0};
    R->s = e;
    R->ram = 1;
    R->uval = {0};
    R->res_deg = 1;
    R->res_slots = {0};
    if (e > 1) R->residue_field = ring_zpe(p, 1);
    R->name = "Z" + std::to_string(ipow(p, e));
    return R;
}

// B[x]/(f) for monic basic-irreducible f of degree ell over B; ell = 1
// collapses to B itself.
inline RingPtr ring_galois_layer(RingPtr B, const std::vector<Elem>& f) {
    int ell = (int)f.size() - 1;
    if (ell < 1 || f.empty()) throw NotBasicIrreducible("defining polynomial of degree < 1");
    for (const auto& c : f)
        if (c.R != B.get()) throw LevelMismatch("f coefficients not over " + B->name);
    if (!(f[(size_t)ell] == elem_one(*B))) throw NotBasicIrreducible("f is not monic over " + B->name);
    // reduction of f must be irreducible over the residue field
    const Ring* F = B->resfield();
    polyf::FPoly fbar;
    for (const auto& c : f) fbar.push_back(residue(c));
    if (ell >= 2 && !polyf::irreducible(*F, fbar))
        throw NotBasicIrreducible("f reduces to a reducible polynomial over " + F->name);
    if (ell == 1) return B;

    auto R = std::make_shared<Ring>();
    const int nb = B->n;
    R->p = B->p; R->e = B->e;
    R->n = ell * nb;
    R->mod.resize((size_t)R->n);
    R->uval.resize((size_t)R->n);
    for (int u = 0; u < ell; ++u)
        for (int s = 0; s < nb; ++s) {
            R->mod[(size_t)(u * nb + s)] = B->mod[(size_t)s];
            R->uval[(size_t)(u * nb + s)] = B->uval[(size_t)s];
        }

    // alpha^m mod f for m <= 2(ell-1), coefficients in B
    std::vector<std::vector<Elem>> xpow((size_t)(2 * ell - 1));
    for (int m = 0; m <= 2 * ell - 2; ++m) {
        std::vector<Elem>& xp = xpow[(size_t)m];
        if (m < ell) {
            xp.assign((size_t)ell, elem_zero(*B));
            xp[(size_t)m] = elem_one(*B);
            continue;
        }
        // alpha * xpow[m-1], reduced by monic f
        xp.assign((size_t)(ell + 1), elem_zero(*B));
        for (int i = 0; i < ell; ++i) xp[(size_t)(i + 1)] = xpow[(size_t)(m - 1)][(size_t)i];
        Elem top = xp[(size_t)ell];
        for (int i = 0; i < ell; ++i) xp[(size_t)i] = xp[(size_t)i] - top * f[(size_t)i];
        xp.resize((size_t)ell, elem_zero(*B));
    }

    R->tab.assign((size_t)R->n, std::vector<Vec>((size_t)R->n));
    for (int u = 0; u < ell; ++u)
        for (int su = 0; su < nb; ++su)
            for (int v = 0; v < ell; ++v)
                for (int sv = 0; sv < nb; ++sv) {
                    Elem prod{B.get(), B->tab[(size_t)su][(size_t)sv]};
                    Vec out((size_t)R->n, 0);
                    for (int w = 0; w < ell; ++w) {
                        Elem cw = xpow[(size_t)(u + v)][(size_t)w] * prod;
                        for (int t = 0; t < nb; ++t) out[(size_t)(w * nb + t)] = cw.c[(size_t)t];
                    }
                    R->tab[(size_t)(u * nb + su)][(size_t)(v * nb + sv)] = std::move(out);
                }

    R->one.assign((size_t)R->n, 0);
    R->unif.assign((size_t)R->n, 0);
    for (int t = 0; t < nb; ++t) {
        R->one[(size_t)t] = B->one[(size_t)t];
        R->unif[(size_t)t] = B->unif[(size_t)t];
    }
    R->s = B->s;
    R->ram = B->ram;
    R->res_deg = ell * B->res_deg;
    for (int u = 0; u < ell; ++u)
        for (int sr : B->res_slots) R->res_slots.push_back(u * nb + sr);
    if (R->s > 1) {
        std::vector<Elem> fres;
        for (const auto& c : fbar) fres.push_back(c);
        RingPtr Fq = B->residue_field ? B->residue_field : B;  // f over the residue field
        R->residue_field = ring_galois_layer(Fq, fres);
    }
    R->base = B;
    R->name = B->name + "[x^" + std::to_string(ell) + "]";
    return R;
}

// B[x]/(g, theta^{s_B - 1} x^t) for Eisenstein g = x^k - theta*(a_{k-1}x^{k-1}
// + ... + a_0), a_0 a unit.  k = 1 collapses to B itself.
inline RingPtr ring_eisenstein_layer(RingPtr B, const std::vector<Elem>& g, int t) {
    int k = (int)g.size() - 1;
    if (k < 1 || g.empty()) throw NotEisenstein("defining polynomial of degree < 1");
    if (t < 1 || t > k)
        throw TruncationOutOfRange("t = " + std::to_string(t) + " outside [1," + std::to_string(k) + "]");
    for (const auto& c : g)
        if (c.R != B.get()) throw LevelMismatch("g coefficients not over " + B->name);
    if (!(g[(size_t)k] == elem_one(*B))) throw NotEisenstein("g is not monic over " + B->name);

    const bool charp = (B->s == 1);  // base is a field: theta = 0
    std::vector<Elem> mcoef;         // m_w = theta * a_w with gamma^k = sum m_w gamma^w
    for (int i = 0; i < k; ++i) {
        Elem ci = g[(size_t)i];
        if (!is_zero(residue(ci)))
            throw NotEisenstein("coefficient of x^" + std::to_string(i) + " is not divisible by the uniformizer");
        if (charp) {
            // residue-zero over a field base means the coefficient is zero
            mcoef.push_back(elem_zero(*B));
            continue;
        }
        Elem ai = elem_zero(*B);
        if (!elem_divide(-ci, elem_unif(*B), ai))
            throw NotEisenstein("coefficient of x^" + std::to_string(i) + " is not a uniformizer multiple");
        if (i == 0 && !is_unit(ai))
            throw NotEisenstein("constant term of g is not uniformizer times a unit");
        mcoef.push_back(-ci);  // theta * a_i, canonical
    }
    if (k == 1) return B;  // gamma = theta * a_0: no new element

    auto R = std::make_shared<Ring>();
    const int nb = B->n;
    R->p = B->p; R->e = B->e;
    R->n = k * nb;
    R->s = t + (B->s - 1) * k;
    R->ram = charp ? R->s : B->ram * k;
    R->mod.resize((size_t)R->n);
    R->uval.resize((size_t)R->n);
    for (int j = 0; j < k; ++j)
        for (int sb = 0; sb < nb; ++sb) {
            size_t idx = (size_t)(j * nb + sb);
            R->uval[idx] = j + k * B->uval[(size_t)sb];
            if (j < t) {
                R->mod[idx] = B->mod[(size_t)sb];
            } else {
                // coefficient of gamma^j lives in B / theta^{s_B - 1}
                int eb = 0; for (i64 m = B->mod[(size_t)sb]; m > 1; m /= B->p) ++eb;
                int cut = (int)std::max<i64>(0, ceil_div(B->s - 1 - B->uval[(size_t)sb], B->ram));
                R->mod[idx] = ipow(B->p, std::min(eb, cut));
            }
        }

    // reduce a polynomial in gamma with B coefficients to degree < k
    auto reduce_poly = [&](std::vector<Elem>& coef) {
        while (true) {
            int D = -1;
            for (int i = (int)coef.size() - 1; i >= k; --i)
                if (!is_zero(coef[(size_t)i])) { D = i; break; }
            if (D < 0) break;
            Elem cD = coef[(size_t)D];
            coef[(size_t)D] = elem_zero(*B);
            for (int w = 0; w < k; ++w)
                coef[(size_t)(D - k + w)] = coef[(size_t)(D - k + w)] + cD * mcoef[(size_t)w];
        }
    };

    R->tab.assign((size_t)R->n, std::vector<Vec>((size_t)R->n));
    for (int j = 0; j < k; ++j)
        for (int sj = 0; sj < nb; ++sj)
            for (int j2 = 0; j2 < k; ++j2)
                for (int s2 = 0; s2 < nb; ++s2) {
                    std::vector<Elem> coef((size_t)(2 * k - 1), elem_zero(*B));
                    coef[(size_t)(j + j2)] = Elem{B.get(), B->tab[(size_t)sj][(size_t)s2]};
                    reduce_poly(coef);
                    Vec out((size_t)R->n, 0);
                    for (int w = 0; w < k; ++w)
                        for (int sb = 0; sb < nb; ++sb) {
                            size_t idx = (size_t)(w * nb + sb);
                            out[idx] = pmod(coef[(size_t)w].c[(size_t)sb], R->mod[idx]);
                        }
                    R->tab[(size_t)(j * nb + sj)][(size_t)(j2 * nb + s2)] = std::move(out);
                }

    R->one.assign((size_t)R->n, 0);
    R->unif.assign((size_t)R->n, 0);
    for (int sb = 0; sb < nb; ++sb) {
        R->one[(size_t)sb] = B->one[(size_t)sb];
        R->unif[(size_t)(nb + sb)] = pmod(B->one[(size_t)sb], R->mod[(size_t)(nb + sb)]);  // gamma
    }
    R->res_deg = B->res_deg;
    for (int sr : B->res_slots) R->res_slots.push_back(sr);
    R->residue_field = B->residue_field ? B->residue_field : B;
    R->base = B;
    R->name = B->name + "[g^" + std::to_string(k) + ",t" + std::to_string(t) + "]";
    return R;
}

// A / theta^m as a ring on the same slots (moduli shrink, some may become 1).
inline RingPtr ring_quotient(RingPtr A, int m) {
    if (m < 1 || m > A->s)
        throw TruncationOutOfRange("quotient exponent " + std::to_string(m) + " outside [1," + std::to_string(A->s) + "]");
    auto R = std::make_shared<Ring>(*A);
    R->teich.clear();
    R->s = m;
    for (int i = 0; i < R->n; ++i) {
        int eb = 0; for (i64 mm = A->mod[(size_t)i]; mm > 1; mm /= A->p) ++eb;
        int cut = (int)std::max<i64>(0, ceil_div(m - A->uval[(size_t)i], A->ram));
        R->mod[(size_t)i] = ipow(A->p, std::min(eb, cut));
    }
    for (int i = 0; i < R->n; ++i) {
        R->one[(size_t)i] = pmod(R->one[(size_t)i], R->mod[(size_t)i]);
        R->unif[(size_t)i] = pmod(R->unif[(size_t)i], R->mod[(size_t)i]);
    }
    for (auto& row : R->tab)
        for (auto& entry : row)
            for (int i = 0; i < R->n; ++i) entry[(size_t)i] = pmod(entry[(size_t)i], R->mod[(size_t)i]);
    if (m == 1) R->residue_field = nullptr;  // the quotient is the residue field itself
    R->base = A;
    R->name = A->name + "/th^" + std::to_string(m);
    return R;
}

// -- level maps ---------------------------------------------------------------

// Lower levels are coordinate prefixes of higher ones.
inline Elem ring_embed(const Ring& big, const Elem& x) {
    if (x.R == &big) return x;
    if (x.R->n > big.n) throw LevelMismatch("embedding " + x.R->name + " into " + big.name);
    Vec v((size_t)big.n, 0);
    for (int i = 0; i < x.R->n; ++i) {
        if (big.mod[(size_t)i] != x.R->mod[(size_t)i])
            throw LevelMismatch(x.R->name + " is not a prefix of " + big.name);
        v[(size_t)i] = x.c[(size_t)i];
    }
    return {&big, std::move(v)};
}

// Projection onto a quotient built by ring_quotient (same slot layout).
inline Elem to_quotient(const Ring& Q, const Elem& x) {
    if ((int)x.c.size() != Q.n) throw LevelMismatch("projection into " + Q.name);
    Vec v = x.c;
    for (int i = 0; i < Q.n; ++i) v[(size_t)i] = pmod(v[(size_t)i], Q.mod[(size_t)i]);
    return {&Q, std::move(v)};
}

// The canonical coordinate section of to_quotient.
inline Elem lift_from_quotient(const Ring& A, const Elem& xbar) {
    if ((int)xbar.c.size() != A.n) throw LevelMismatch("lift into " + A.name);
    return elem_reduce(A, xbar.c);
}

inline int ring_size_exp(const Ring& R) {
    int E = 0;
    for (i64 m : R.mod) { int v = 0; while (m > 1) { m /= R.p; ++v; } E += v; }
    return E;
}

}  // namespace chainring
