// Exact integer and modular arithmetic: primality, Jacobi symbols, square
// roots and primitive roots mod p, and integer factorization at the sizes the
// sieves need.  BigInt is GMP's mpz_class; everything here is a pure function.
#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ppgaps/base.hpp"

namespace ppg {

using BigInt = mpz_class;

struct domain_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline bool fits_u64(const BigInt& n) { return n >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64; }

inline u64 to_u64(const BigInt& n) {
    u64 lo = mpz_get_ui(n.get_mpz_t());
    if (mpz_sizeinbase(n.get_mpz_t(), 2) > 32) {
        BigInt hi = n >> 32;
        lo = (mpz_get_ui(hi.get_mpz_t()) << 32) | (lo & 0xffffffffULL);
    }
    return lo;
}

inline BigInt mod_big(const BigInt& x, u64 l) {
    BigInt r = x % (unsigned long)l;
    if (r < 0) r += (unsigned long)l;
    return r;
}

inline u64 big_residue(const BigInt& x, u64 l) { return to_u64(mod_big(x, l)); }

inline BigInt big_pow(const BigInt& b, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline BigInt big_pow_u(u64 b, unsigned long e) { return big_pow(BigInt((unsigned long)b), e); }

// --- primality ---------------------------------------------------------

namespace detail {
inline bool mr_witness(u64 n, u64 a, u64 d, int s) {
    a %= n;
    if (a == 0) return false;
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return false;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return false;
    }
    return true;  // a witnesses compositeness
}
}  // namespace detail

// Deterministic for all n < 2^64 (12-base Miller-Rabin set, proven up to
// 3.3e24).
inline bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = __builtin_ctzll(d);
    d >>= s;
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (detail::mr_witness(n, a, d, s)) return false;
    }
    return true;
}

// Deterministic below 2^64; BPSW-based (GMP) with extra Miller-Rabin rounds
// above, which has no known counterexample.
inline bool is_prime(const BigInt& n) {
    if (n < 0) throw domain_error("is_prime: negative input");
    if (fits_u64(n)) return is_prime_u64(to_u64(n));
    return mpz_probab_prime_p(n.get_mpz_t(), 30) != 0;
}

// --- factorization (64-bit) --------------------------------------------

namespace detail {
inline u64 pollard_brent(u64 n, Rng& rng) {
    if (!(n & 1)) return 2;
    Mont m(n);
    for (;;) {
        u64 y = rng.below(n - 2) + 1, c = rng.below(n - 2) + 1;
        u64 ym = m.to(y), cm = m.to(c);
        u64 g = 1, r = 1, q = m.one();
        u64 x = 0, ys = 0;
        while (g == 1) {
            x = ym;
            for (u64 i = 0; i < r; ++i) ym = m.add(m.sqr(ym), cm);
            u64 k = 0;
            while (k < r && g == 1) {
                ys = ym;
                u64 lim = std::min<u64>(128, r - k);
                for (u64 i = 0; i < lim; ++i) {
                    ym = m.add(m.sqr(ym), cm);
                    q = m.mul(q, m.sub(x, ym));
                }
                g = gcd_u64(m.from(q), n);
                k += lim;
            }
            r <<= 1;
        }
        if (g == n) {
            g = 1;
            while (g == 1) {
                ys = m.add(m.sqr(ys), cm);
                g = gcd_u64(m.from(m.sub(x, ys)), n);
            }
        }
        if (g != n) return g;
    }
}
}  // namespace detail

// Prime factorization of n, sorted with multiplicity.
inline std::vector<u64> factor_u64(u64 n, u64 seed = 0xfac7) {
    std::vector<u64> out;
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
        while (n % p == 0) {
            out.push_back(p);
            n /= p;
        }
    }
    for (u64 p = 17; p < 10000 && p * p <= n; p += 2) {
        while (n % p == 0) {
            out.push_back(p);
            n /= p;
        }
    }
    std::vector<u64> stack;
    if (n > 1) stack.push_back(n);
    Rng rng(seed);
    while (!stack.empty()) {
        u64 m = stack.back();
        stack.pop_back();
        if (m == 1) continue;
        if (is_prime_u64(m)) {
            out.push_back(m);
            continue;
        }
        u64 d = detail::pollard_brent(m, rng);
        stack.push_back(d);
        stack.push_back(m / d);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<u64> distinct_prime_factors(u64 n, u64 seed = 0xfac7) {
    auto f = factor_u64(n, seed);
    f.erase(std::unique(f.begin(), f.end()), f.end());
    return f;
}

namespace detail {
inline void mpz_rho(const BigInt& n, std::vector<BigInt>& out, Rng& rng) {
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 30)) {
        out.push_back(n);
        return;
    }
    for (;;) {
        BigInt x = (long)(rng.below(1 << 30) + 2), y = x, c = (long)(rng.below(1 << 30) + 1), d = 1;
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            BigInt diff = x - y;
            if (diff < 0) diff = -diff;
            if (diff == 0) break;
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (d != 1 && d != n) {
            mpz_rho(d, out, rng);
            mpz_rho(n / d, out, rng);
            return;
        }
    }
}
}  // namespace detail

// Distinct prime factors of |value|; trial division then rho.
inline std::vector<BigInt> factor_distinct(const BigInt& value, u64 seed = 0x10ca5) {
    BigInt n = value < 0 ? BigInt(-value) : value;
    std::vector<BigInt> out;
    if (n <= 1) return out;
    for (u64 p = 2; p < 1000000 && !fits_u64(n); p = (p == 2 ? 3 : p + 2)) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            out.push_back(BigInt((unsigned long)p));
            while (mpz_divisible_ui_p(n.get_mpz_t(), p)) n /= (unsigned long)p;
        }
    }
    if (fits_u64(n)) {
        for (u64 p : distinct_prime_factors(to_u64(n))) out.push_back(BigInt((unsigned long)p));
    } else {
        Rng rng(seed);
        std::vector<BigInt> rest;
        detail::mpz_rho(n, rest, rng);
        for (auto& p : rest) out.push_back(p);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// --- Jacobi / Legendre --------------------------------------------------

// Jacobi symbol (a/n); n must be odd and positive.
inline int jacobi(const BigInt& a, const BigInt& n) {
    if (n <= 0 || mpz_even_p(n.get_mpz_t())) throw domain_error("jacobi: modulus must be odd and positive");
    return mpz_jacobi(a.get_mpz_t(), n.get_mpz_t());
}

// --- square roots mod an odd prime --------------------------------------

// Tonelli-Shanks.  Returns the canonical root r with 0 <= r <= (l-1)/2, or
// nullopt when a is a non-residue.  l must be an odd prime.
inline std::optional<u64> sqrt_mod_u64(u64 a, u64 l) {
    a %= l;
    if (a == 0) return u64(0);
    if (jacobi_u64(a, l) != 1) return std::nullopt;
    u64 r;
    if ((l & 3) == 3) {
        r = powmod(a, (l + 1) / 4, l);
    } else {
        u64 q = l - 1;
        int s = __builtin_ctzll(q);
        q >>= s;
        u64 z = 2;
        while (jacobi_u64(z, l) != -1) ++z;
        u64 m = s, c = powmod(z, q, l), t = powmod(a, q, l), rr = powmod(a, (q + 1) / 2, l);
        while (t != 1) {
            u64 t2 = t;
            u64 i = 0;
            while (t2 != 1) {
                t2 = mulmod(t2, t2, l);
                ++i;
            }
            u64 b = powmod(c, u64(1) << (m - i - 1), l);
            m = i;
            c = mulmod(b, b, l);
            t = mulmod(t, c, l);
            rr = mulmod(rr, b, l);
        }
        r = rr;
    }
    if (r > l - r) r = l - r;
    return r;
}

inline std::optional<BigInt> sqrt_mod(const BigInt& a, const BigInt& l) {
    if (!fits_u64(l)) throw domain_error("sqrt_mod: modulus too large for this build");
    u64 lm = to_u64(l);
    BigInt r = a % l;
    if (r < 0) r += l;
    auto s = sqrt_mod_u64(to_u64(r), lm);
    if (!s) return std::nullopt;
    return BigInt((unsigned long)*s);
}

// --- primitive roots -----------------------------------------------------

// Smallest primitive root mod prime l.
inline u64 primitive_root_u64(u64 l) {
    if (!is_prime_u64(l)) throw domain_error("primitive_root: modulus not prime");
    if (l == 2) return 1;
    auto ps = distinct_prime_factors(l - 1);
    for (u64 g = 2;; ++g) {
        bool ok = true;
        for (u64 p : ps) {
            if (powmod(g, (l - 1) / p, l) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
}

// --- integer roots and perfect powers ------------------------------------

inline BigInt isqrt_big(const BigInt& n) {
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

// Floor n-th root of x >= 0.
inline u64 iroot_u64(u64 x, unsigned n) {
    if (x == 0 || n == 1) return x;
    u64 r = (u64)std::pow((double)x, 1.0 / n);
    while (r > 0) {
        u128 p = 1;
        bool over = false;
        for (unsigned i = 0; i < n; ++i) {
            p *= r;
            if (p > x) {
                over = true;
                break;
            }
        }
        if (!over) break;
        --r;
    }
    for (;;) {
        u128 p = 1;
        bool over = false;
        for (unsigned i = 0; i < n; ++i) {
            p *= (r + 1);
            if (p > x) {
                over = true;
                break;
            }
        }
        if (over) break;
        ++r;
    }
    return r;
}

// If v = y^n for an integer y (y allowed negative when n odd), returns y.
inline std::optional<i64> exact_nth_root_i64(i64 v, unsigned n) {
    if (v == 0) return i64(0);
    bool neg = v < 0;
    if (neg && n % 2 == 0) return std::nullopt;
    u64 a = neg ? (u64)(-(i128)v) : (u64)v;
    u64 r = iroot_u64(a, n);
    u128 p = 1;
    for (unsigned i = 0; i < n; ++i) p *= r;
    if (p != a) return std::nullopt;
    return neg ? -(i64)r : (i64)r;
}

// --- CRT ------------------------------------------------------------------

// Merge x = r1 mod m1 with x = r2 mod m2; nullopt when incompatible.
inline std::optional<std::pair<BigInt, BigInt>> crt_merge(const BigInt& r1, const BigInt& m1,
                                                          const BigInt& r2, const BigInt& m2) {
    BigInt g, p, q;
    mpz_gcdext(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t(), m1.get_mpz_t(), m2.get_mpz_t());
    if ((r2 - r1) % g != 0) return std::nullopt;
    BigInt lcm = m1 / g * m2;
    BigInt diff = (r2 - r1) / g;
    BigInt x = r1 + m1 * (diff * p % (m2 / g));
    x %= lcm;
    if (x < 0) x += lcm;
    return std::make_pair(x, lcm);
}

}  // namespace ppg
