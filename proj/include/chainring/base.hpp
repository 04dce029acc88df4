#pragma once
// base.hpp -- shared scalar utilities and the error hierarchy.
// Part of the chainring library (MIT license, see LICENSE).

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace chainring {

using i64 = long long;

// All library errors derive from chainring::error and carry a short stable
// kind tag ("NotAUnit", "LevelMismatch", ...) that the CLI maps onto exit
// codes and JSON diagnostics.
struct error : std::runtime_error {
    std::string kind;
    error(std::string k, const std::string& msg)
        : std::runtime_error(k + ": " + msg), kind(std::move(k)) {}
};

#define CHAINRING_ERROR(NAME)                                          \
    struct NAME : error {                                              \
        explicit NAME(const std::string& msg) : error(#NAME, msg) {}   \
    }

CHAINRING_ERROR(NotPrime);
CHAINRING_ERROR(NotBasicIrreducible);
CHAINRING_ERROR(NotEisenstein);
CHAINRING_ERROR(TruncationOutOfRange);
CHAINRING_ERROR(LevelMismatch);
CHAINRING_ERROR(NotAUnit);
CHAINRING_ERROR(AmbientMismatch);
CHAINRING_ERROR(LengthMismatch);
CHAINRING_ERROR(SingularGram);
CHAINRING_ERROR(NotLeftClosed);
CHAINRING_ERROR(InvalidTable);
CHAINRING_ERROR(TooLarge);
CHAINRING_ERROR(NotCoprime);
CHAINRING_ERROR(DescentFailure);
CHAINRING_ERROR(NotAbelian);
CHAINRING_ERROR(NotComponentAligned);
CHAINRING_ERROR(NotFlagForm);
CHAINRING_ERROR(SidednessViolation);

#undef CHAINRING_ERROR

// x mod m normalised into [0, m).
inline i64 pmod(i64 x, i64 m) {
    i64 r = x % m;
    return r < 0 ? r + m : r;
}

inline i64 ipow(i64 b, int e) {
    i64 r = 1;
    while (e-- > 0) r *= b;
    return r;
}

inline i64 modpow(i64 b, i64 e, i64 m) {
    i64 r = 1 % m;
    b = pmod(b, m);
    while (e > 0) {
        if (e & 1) r = (r * b) % m;
        b = (b * b) % m;
        e >>= 1;
    }
    return r;
}

// Inverse of a mod m for gcd(a,m)=1 (extended Euclid); used for scalar
// constants like 1/n_a mod p^e.  Ring-element inversion lives in ring.hpp.
inline i64 modinv(i64 a, i64 m) {
    i64 t = 0, nt = 1, r = m, nr = pmod(a, m);
    while (nr != 0) {
        i64 q = r / nr;
        t -= q * nt; std::swap(t, nt);
        r -= q * nr; std::swap(r, nr);
    }
    if (r != 1) throw NotAUnit("no inverse of " + std::to_string(a) + " mod " + std::to_string(m));
    return pmod(t, m);
}

inline bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// p-adic valuation of x within Z_{p^e}: largest v <= e with p^v | x.
// By convention val(0) = e (the additive order exponent of 0 is 0).
inline int pval(i64 x, i64 p, int e) {
    x = pmod(x, ipow(p, e));
    if (x == 0) return e;
    int v = 0;
    while (x % p == 0) { x /= p; ++v; }
    return v;
}

inline i64 ceil_div(i64 a, i64 b) { return (a + b - 1) / b; }

// Multiplicative order of a mod n (gcd(a,n)=1 assumed small inputs).
inline i64 mul_order(i64 a, i64 n) {
    if (n == 1) return 1;
    if (std::gcd(pmod(a, n), n) != 1)
        throw NotCoprime("order of non-unit " + std::to_string(a) + " mod " + std::to_string(n));
    i64 x = pmod(a, n), o = 1;
    while (x != 1) { x = (x * a) % n; ++o; }
    return o;
}

inline std::vector<i64> prime_factors(i64 n) {
    std::vector<i64> fs;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            fs.push_back(d);
            while (n % d == 0) n /= d;
        }
    if (n > 1) fs.push_back(n);
    return fs;
}

}  // namespace chainring
