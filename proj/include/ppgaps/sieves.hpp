// The five elimination sieves: the elementary (X+2)^n - X^n sieve, the
// Gaussian-integer f_n sieve, the Fermat-Mersenne sieve for q in {31,127,257},
// Kraus-style crude and refined sieves driven by Frey-curve traces, and the
// final descent sieve for the six large-exponent q values.  Each maps a
// problem family and auxiliary primes l to a surviving residue set; an empty
// set is a non-existence certificate for that exponent.
#pragma once

#include <chrono>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ppgaps/ecff.hpp"
#include "ppgaps/quadfield.hpp"
#include "ppgaps/registry.hpp"

namespace ppg {

// (q, delta, kappa, v) with the exponent n under test.
struct ProblemFamily {
    int q = 0;
    int delta = 0;
    int kappa = 0;
    int v = 0;
    u64 n = 0;
};

struct ResidueSet {
    BigInt modulus = 1;
    std::vector<BigInt> residues;  // sorted, reduced mod modulus
    bool empty() const { return residues.empty(); }
};

struct resource_error : std::runtime_error {
    BigInt partial_modulus;
    explicit resource_error(BigInt m)
        : std::runtime_error("residue working set exceeded the configured cap"),
          partial_modulus(std::move(m)) {}
};

struct SieveOptions {
    u64 t_max = 200;
    u64 prime_budget = 64;
    u64 prime_cap = 101;  // elementary/gauss: odd primes <= cap
    u64 seed = 0x5eed;
    bool fast_filter = true;
    bool symplectic = true;
    unsigned threads = 1;
    u64 residue_cap = 10000000;
};

struct SieveCertificate {
    std::string kind;
    int q = 0, delta = -1, kappa = -1, v = -1, eta = 0;
    std::string curve;
    u64 n = 0;
    std::vector<u64> primes;
    ResidueSet surviving;
    u64 seed = 0;
    double duration_ms = 0;
    int threads = 1;
    bool exhausted = false;
    bool symplectic = true;
    bool empty() const { return surviving.empty(); }
};

namespace detail {
struct Stopwatch {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    }
};

inline ResidueSet to_residue_set(const std::vector<u64>& vals, u64 modulus) {
    ResidueSet r;
    r.modulus = BigInt((unsigned long)modulus);
    for (u64 v : vals) r.residues.push_back(BigInt((unsigned long)v));
    return r;
}
}  // namespace detail

// --- elementary sieve (odd y, even power of q) --------------------------------

// Z_l: odd beta mod l-1 with (X+2)^n - X^n - 2 q^beta having a root in F_l.
inline std::vector<u64> elementary_zset(u64 q, u64 n, u64 l) {
    if (l < 3 || !is_prime_u64(l) || l == 2 || n % l == 0 || q % l == 0)
        throw domain_error("elementary_zset: need an odd prime l not dividing 2nq");
    std::vector<u8> hit(l, 0);
    u64 ne = n % (l - 1);
    for (u64 x = 0; x < l; ++x) {
        u64 xp = x == 0 ? 0 : powmod(x, ne == 0 ? l - 1 : ne, l);
        u64 x2 = (x + 2) % l;
        u64 x2p = x2 == 0 ? 0 : powmod(x2, ne == 0 ? l - 1 : ne, l);
        hit[submod(x2p, xp, l)] = 1;
    }
    std::vector<u64> out;
    u64 q2 = mulmod(q % l, q % l, l);
    u64 qb = q % l;  // q^1
    for (u64 beta = 1; beta < l - 1; beta += 2) {
        if (hit[mulmod(2, qb, l)]) out.push_back(beta);
        qb = mulmod(qb, q2, l);
    }
    return out;
}

// Progressive CRT merge of the Z_l over the given primes; the modulus grows to
// lcm(l_i - 1).  Starts from the odd classes mod 2 (beta = k is odd).
inline ResidueSet elementary_sieve(u64 q, u64 n, const std::vector<u64>& primes, const SieveOptions& opts = {}) {
    ResidueSet cur;
    cur.modulus = 2;
    cur.residues = {BigInt(1)};
    for (u64 l : primes) {
        auto z = elementary_zset(q, n, l);
        std::set<u64> zs(z.begin(), z.end());
        BigInt m2((unsigned long)(l - 1));
        BigInt g;
        mpz_gcd(g.get_mpz_t(), cur.modulus.get_mpz_t(), m2.get_mpz_t());
        BigInt lcm = cur.modulus / g * m2;
        std::vector<BigInt> next;
        u64 steps = to_u64(lcm / cur.modulus);
        for (const BigInt& r0 : cur.residues) {
            for (u64 j = 0; j < steps; ++j) {
                BigInt r = r0 + cur.modulus * (unsigned long)j;
                if (zs.count(big_residue(r, l - 1))) {
                    next.push_back(r);
                    if (next.size() > opts.residue_cap) throw resource_error(lcm);
                }
            }
        }
        cur.modulus = lcm;
        cur.residues = std::move(next);
        std::sort(cur.residues.begin(), cur.residues.end());
        if (cur.residues.empty()) break;
    }
    return cur;
}

// (q, n) with q, n prime, n >= 5, n | q - 1.
inline std::vector<std::pair<u64, u64>> admissible_pairs_elementary(u64 qmin, u64 qmax) {
    std::vector<std::pair<u64, u64>> out;
    for (u64 q = qmin | 1; q <= qmax; q += 2) {
        if (!is_prime_u64(q)) continue;
        for (u64 n = 5; n <= q - 1; n += 2) {
            if ((q - 1) % n == 0 && is_prime_u64(n)) out.emplace_back(q, n);
        }
    }
    return out;
}

inline std::vector<u64> odd_primes_up_to(u64 cap, u64 skip1, u64 skip2) {
    std::vector<u64> out;
    for (u64 l = 3; l <= cap; l += 2)
        if (is_prime_u64(l) && l != skip1 && l != skip2) out.push_back(l);
    return out;
}

// --- Gaussian sieve (x^2 + q^{2k} = y^n, Lucas side) ---------------------------

// f_n(X) = ((X+i)^n - (X-i)^n)/(2i) = sum (-1)^i binom(n,2i+1) X^{n-1-2i}.
inline std::vector<BigInt> gauss_polynomial(u64 n) {
    std::vector<BigInt> coeff(n, 0);  // degree n-1: index j <-> X^{n-1-j}
    BigInt binom = (long)n;           // binom(n,1)
    int sign = 1;
    for (u64 i = 0; 2 * i + 1 <= n; ++i) {
        coeff[2 * i] = sign * binom;
        // binom(n, 2i+3) = binom(n,2i+1) (n-2i-1)(n-2i-2)/((2i+2)(2i+3))
        binom = binom * (long)(n - 2 * i - 1) * (long)(n - 2 * i - 2) / ((long)(2 * i + 2) * (long)(2 * i + 3));
        sign = -sign;
    }
    return coeff;
}

inline std::vector<u64> gauss_zset(u64 q, u64 n, int eta, u64 l) {
    if (l < 3 || !is_prime_u64(l) || n % l == 0 || q % l == 0)
        throw domain_error("gauss_zset: need an odd prime l not dividing 2nq");
    auto coeff = gauss_polynomial(n);
    std::vector<u64> c(n);
    for (u64 j = 0; j < n; ++j) c[j] = big_residue(coeff[j], l);
    std::vector<u8> hit(l, 0);
    for (u64 x = 0; x < l; ++x) {
        u64 v = 0;
        for (u64 j = 0; j < n; ++j) v = addmod(mulmod(v, x, l), c[j], l);
        hit[v] = 1;
    }
    std::vector<u64> out;
    u64 q2 = mulmod(q % l, q % l, l);
    u64 qb = q % l;
    for (u64 beta = 1; beta < l - 1; beta += 2) {
        u64 val = eta == 1 ? qb : l - qb;
        if (val == l) val = 0;
        if (hit[val]) out.push_back(beta);
        qb = mulmod(qb, q2, l);
    }
    return out;
}

inline ResidueSet gauss_sieve(u64 q, u64 n, int eta, const std::vector<u64>& primes,
                              const SieveOptions& opts = {}) {
    ResidueSet cur;
    cur.modulus = 2;
    cur.residues = {BigInt(1)};
    for (u64 l : primes) {
        auto z = gauss_zset(q, n, eta, l);
        std::set<u64> zs(z.begin(), z.end());
        BigInt m2((unsigned long)(l - 1));
        BigInt g;
        mpz_gcd(g.get_mpz_t(), cur.modulus.get_mpz_t(), m2.get_mpz_t());
        BigInt lcm = cur.modulus / g * m2;
        std::vector<BigInt> next;
        u64 steps = to_u64(lcm / cur.modulus);
        for (const BigInt& r0 : cur.residues) {
            for (u64 j = 0; j < steps; ++j) {
                BigInt r = r0 + cur.modulus * (unsigned long)j;
                if (zs.count(big_residue(r, l - 1))) {
                    next.push_back(r);
                    if (next.size() > opts.residue_cap) throw resource_error(lcm);
                }
            }
        }
        cur.modulus = lcm;
        cur.residues = std::move(next);
        std::sort(cur.residues.begin(), cur.residues.end());
        if (cur.residues.empty()) break;
    }
    return cur;
}

// (q, n), n >= 5 prime, n | q-1 if q = 1 (4), n | q+1 if q = 3 (4).
inline std::vector<std::pair<u64, u64>> admissible_pairs_gauss(u64 qmin, u64 qmax) {
    std::vector<std::pair<u64, u64>> out;
    for (u64 q = qmin | 1; q <= qmax; q += 2) {
        if (!is_prime_u64(q) || q == 2) continue;
        u64 target = q % 4 == 1 ? q - 1 : q + 1;
        for (u64 n = 5; n <= target; n += 2) {
            if (target % n == 0 && is_prime_u64(n)) out.emplace_back(q, n);
        }
    }
    return out;
}

// --- shared helpers for the trace-driven sieves --------------------------------

namespace detail {

inline std::optional<i64> curve_trace_at(const WeierstrassModel& e, u64 l, Rng& rng) {
    auto r = reduce_model(e, l);
    if (std::holds_alternative<CurveFp>(r)) return trace(std::get<CurveFp>(r), rng);
    if (std::holds_alternative<CurveSmall>(r)) return trace_small(std::get<CurveSmall>(r));
    return std::nullopt;  // bad reduction
}

// BSGS discrete log in the order-n subgroup mu_n = <gt> of F_l^*: value^t is
// assumed to lie in mu_n; returns e with gt^e = x.
struct SubgroupDlog {
    u64 l = 0, n = 0, gt = 0;
    u64 m = 0, giant = 0;  // gt^{-m}
    BabyMap baby;

    void init(u64 l_, u64 n_, u64 gt_) {
        l = l_;
        n = n_;
        gt = gt_;
        m = (u64)std::ceil(std::sqrt((double)n));
        baby.reset(m);
        u64 cur = 1;
        for (u64 j = 0; j < m; ++j) {
            baby.put(cur, (u32)j);
            cur = mulmod(cur, gt, l);
        }
        (void)cur;
        giant = powmod(invmod(gt, l), m, l);  // gt^{-m}
    }

    std::optional<u64> log(u64 x) const {
        u64 cur = x % l;
        for (u64 i = 0; i * m <= n + m; ++i) {
            std::optional<u64> res;
            baby.for_each(cur, [&](u32 j) {
                u64 e = i * m + j;
                if (e < n && powmod(gt, e, l) == x % l) res = e;
            });
            if (res) return res;
            cur = mulmod(cur, giant, l);
        }
        return std::nullopt;
    }
};

}  // namespace detail

// --- Fermat-Mersenne sieve (q in {31, 127, 257}) -------------------------------

// Z_l (or Z'_l when use_symplectic is false) as a subset of Z/nZ; nullopt when
// l fails the admissibility conditions (i)/(ii).
inline std::optional<std::vector<u32>> fm_zset(u64 q, u64 n, u64 l, const WeierstrassModel& Eq, int m_exp,
                                               bool use_symplectic, const SieveOptions& opts = {}) {
    if (!is_prime_u64(l) || l == q || l == 2 || l % n != 1) return std::nullopt;
    u64 t = (l - 1) / n;
    Rng rng(derive_seed(opts.seed, q, n, l));
    auto ctr = detail::curve_trace_at(Eq, l, rng);
    if (!ctr) return std::nullopt;
    i64 c = *ctr;
    if ((((BigInt(l + 1) * (long)(l + 1) - BigInt(c) * (long)c)) % (unsigned long)n) == 0)
        return std::nullopt;  // condition (ii)
    u64 g = primitive_root_u64(l);
    u64 h = powmod(g, n, l);
    u64 inv4 = invmod(4, l);
    detail::SubgroupDlog dlog;
    dlog.init(l, n, powmod(g, t, l));
    u64 dq = 0;
    {
        auto d = dlog.log(powmod(q % l, t, l));
        assert(d && "q^t not in mu_n");
        dq = *d;
    }
    i64 cm = ((c % (i64)n) + (i64)n) % (i64)n;
    std::vector<i64> cands;
    for (i64 r : {cm, ((i64)n - cm) % (i64)n}) {
        auto v = trace_candidates(l, 4, r, n);
        cands.insert(cands.end(), v.begin(), v.end());
    }
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    std::set<u32> out;
    if (cands.empty()) return std::vector<u32>{};
    u64 hr = 1;
    for (u64 r = 0; r < t; ++r, hr = mulmod(hr, h, l)) {
        if (hr == 4 % l) continue;
        u64 kappa = mulmod(hr, inv4, l);
        if (kappa == 0 || kappa == 1) continue;
        // E(kappa): Y^2 = X(X-1)(X-kappa) = X^3 - (1+kappa) X^2 + kappa X
        CurveFp cur = curve_from_quadratic(l, l - ((1 + kappa) % l), kappa, 0);
        cur.two_torsion = 4;
        Rng prng(derive_seed(opts.seed, l, r, 0xF3));
        auto a = trace_if_candidate(cur, cands, opts.fast_filter, prng);
        if (!a) continue;
        // phi^{-1}((kappa-1) (F*)^n): solve s dq = e (mod n)
        auto e = dlog.log(powmod(submod(kappa, 1, l), t, l));
        assert(e && "(kappa-1)^t not in mu_n");
        if (dq == 0) {
            if (*e == 0)
                for (u64 s = 0; s < n; ++s) out.insert((u32)s);
            continue;
        }
        u64 gdn = gcd_u64(dq, n);
        if (*e % gdn != 0) continue;
        // n prime: gdn is 1 or n; n case handled above (dq = 0 mod n impossible here)
        u64 s = mulmod(*e, invmod(dq, n), n);
        out.insert((u32)s);
    }
    std::vector<u32> res;
    for (u32 s : out) {
        if (use_symplectic) {
            i64 val = (i64)((24 - 6 * m_exp) % (i64)n) * (i64)s % (i64)n;
            if (jacobi_i64(val, n) != 1) continue;
        }
        res.push_back(s);
    }
    return res;
}

// Scan t upward until the running intersection is empty or budget exhausted.
inline SieveCertificate fm_certify(u64 q, u64 n, const WeierstrassModel& Eq, int m_exp,
                                   const SieveOptions& opts = {}) {
    detail::Stopwatch sw;
    SieveCertificate cert;
    cert.kind = "fm";
    cert.q = (int)q;
    cert.n = n;
    cert.seed = opts.seed;
    cert.threads = (int)opts.threads;
    bool symplectic = opts.symplectic && n != q;
    cert.symplectic = symplectic;
    std::vector<u32> cur;
    bool have = false;
    for (u64 t = 2; t <= opts.t_max && cert.primes.size() < opts.prime_budget; t += 2) {
        u64 l = t * n + 1;
        auto z = fm_zset(q, n, l, Eq, m_exp, symplectic, opts);
        if (!z) continue;
        if (!have) {
            cur = *z;
            have = true;
        } else {
            std::vector<u32> merged;
            std::set_intersection(cur.begin(), cur.end(), z->begin(), z->end(), std::back_inserter(merged));
            cur = merged;
        }
        cert.primes.push_back(l);
        if (have && cur.empty()) break;
    }
    cert.exhausted = !have || !cur.empty();
    std::vector<u64> vals(cur.begin(), cur.end());
    cert.surviving = detail::to_residue_set(vals, n);
    cert.duration_ms = sw.ms();
    return cert;
}

// --- crude Kraus sieve ----------------------------------------------------------

namespace detail {
// Frey curve shape G_{z,m}: A: [4z, 4w]; B: [-4z, 4w]; C: [2z, w].
enum class FreyShape { A, B, C };

inline FreyShape frey_shape(int kappa, int delta, int q) {
    if (kappa == 1) return FreyShape::A;
    int want = delta == 0 ? 1 : 3;  // q = (-1)^delta mod 4
    return q % 4 == want ? FreyShape::B : FreyShape::C;
}

inline CurveFp frey_curve_mod(FreyShape s, u64 l, u64 z, u64 w) {
    switch (s) {
        case FreyShape::A:
            return curve_from_quadratic(l, mulmod(4, z, l), mulmod(4, w, l), 0);
        case FreyShape::B:
            return curve_from_quadratic(l, l - mulmod(4, z, l) == l ? 0 : l - mulmod(4, z, l),
                                        mulmod(4, w, l), 0);
        default:
            return curve_from_quadratic(l, mulmod(2, z, l), w, 0);
    }
}
}  // namespace detail

// Z_l of Lemma crudeKraus as sorted m-values in A = {m in [0,2n): m = v (2),
// n does not divide 2m+1}; nullopt when l is inadmissible.  When `restrict_to`
// is nonempty only those classes are examined (sound for intersections).
inline std::optional<std::vector<u32>> crude_zset(const ProblemFamily& fam, const WeierstrassModel& E,
                                                  u64 l, const SieveOptions& opts = {},
                                                  const std::vector<u32>* restrict_to = nullptr) {
    u64 n = fam.n;
    u64 q = (u64)fam.q;
    if (!is_prime_u64(l) || l == q || l == 2 || l % n != 1) return std::nullopt;
    u64 t = (l - 1) / n;
    Rng rng(derive_seed(opts.seed, q, n, l));
    auto ctr = detail::curve_trace_at(E, l, rng);
    if (!ctr) return std::nullopt;
    i64 c = *ctr;
    i64 eps_sign = fam.delta == 0 ? 1 : -1;
    i64 mq = eps_sign > 0 ? -(i64)(q % l) : (i64)(q % l);  // (-1)^{delta+1} q
    bool q_side_square = jacobi_i64(mq, l) == 1;
    bool cond2 = (mod_big(BigInt(4) - BigInt(c) * (long)c, n) != 0) || !q_side_square;
    if (!cond2) return std::nullopt;  // condition (ii)
    int chi = jacobi_i64(-1, l);
    int tt = q_side_square ? 4 : 2;
    i64 cm = ((c % (i64)n) + (i64)n) % (i64)n;
    std::vector<i64> cands = trace_candidates(l, tt, cm, n);
    if (chi == -1) {
        auto v2 = trace_candidates(l, tt, ((i64)n - cm) % (i64)n, n);
        cands.insert(cands.end(), v2.begin(), v2.end());
        std::sort(cands.begin(), cands.end());
        cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    }
    detail::FreyShape shape = detail::frey_shape(fam.kappa, fam.delta, fam.q);
    // h-power table
    u64 g = primitive_root_u64(l);
    u64 h = powmod(g, n, l);
    std::vector<u64> hpow(t);
    hpow[0] = 1;
    for (u64 i = 1; i < t; ++i) hpow[i] = mulmod(hpow[i - 1], h, l);
    u64 ql = q % l;
    u64 q4 = powmod(ql, 4, l);
    // n | 2m+1 exactly at m = (n-1)/2 mod n; the excluded member of parity v
    u64 bad_m = (n - 1) / 2;
    if ((bad_m & 1) != (u64)fam.v) bad_m += n;
    std::vector<u32> out;
    if (cands.empty()) return out;  // no trace can satisfy both congruences
    auto test_m = [&](u64 m, u64 qp /* q^{2m+1} mod l */) -> bool {
        for (u64 i = 0; i < t; ++i) {
            u64 w = hpow[i];
            u64 u = eps_sign > 0 ? submod(w, qp, l) : addmod(w, qp, l);  // z^2 = w - eps q^{2m+1}
            if (u != 0 && jacobi_u64(u, l) != 1) continue;
            u64 z = u == 0 ? 0 : *sqrt_mod_u64(u, l);
            CurveFp cur = detail::frey_curve_mod(shape, l, z, w);
            cur.two_torsion = tt;
            Rng prng(derive_seed(opts.seed, l, m * t + i, 0xC2));
            if (trace_if_candidate(cur, cands, opts.fast_filter, prng)) return true;
        }
        return false;
    };
    if (restrict_to) {
        for (u32 m : *restrict_to) {
            u64 qp = powmod(ql, 2 * (u64)m + 1, l);
            if (test_m(m, qp)) out.push_back(m);
        }
        return out;
    }
    if (opts.threads <= 1) {
        u64 qp = powmod(ql, 2 * (u64)fam.v + 1, l);
        for (u64 m = (u64)fam.v; m < 2 * n; m += 2) {
            if (m != bad_m && test_m(m, qp)) out.push_back((u32)m);
            qp = mulmod(qp, q4, l);
        }
        return out;
    }
    // chunked parallel scan over m, deterministic fold by chunk index
    u64 total = n;  // number of m values of parity v in [0, 2n)
    unsigned nchunks = opts.threads * 4;
    u64 chunk = (total + nchunks - 1) / nchunks;
    std::vector<std::vector<u32>> results(nchunks);
    parallel_for(nchunks, opts.threads, [&](size_t ci) {
        u64 lo = ci * chunk, hi = std::min<u64>(total, lo + chunk);
        if (lo >= hi) return;
        u64 m0 = (u64)fam.v + 2 * lo;
        u64 qp = powmod(ql, 2 * m0 + 1, l);
        for (u64 idx = lo; idx < hi; ++idx) {
            u64 m = (u64)fam.v + 2 * idx;
            if (m != bad_m && test_m(m, qp)) results[ci].push_back((u32)m);
            qp = mulmod(qp, q4, l);
        }
    });
    for (auto& r : results) out.insert(out.end(), r.begin(), r.end());
    return out;
}

// Certify one (family, n, target curve): scan t ascending, intersect.
inline SieveCertificate crude_certify(const ProblemFamily& fam, const WeierstrassModel& E,
                                      const std::string& curve_label, const SieveOptions& opts = {}) {
    detail::Stopwatch sw;
    SieveCertificate cert;
    cert.kind = "crude";
    cert.q = fam.q;
    cert.delta = fam.delta;
    cert.kappa = fam.kappa;
    cert.v = fam.v;
    cert.n = fam.n;
    cert.curve = curve_label;
    cert.seed = opts.seed;
    cert.threads = (int)opts.threads;
    std::vector<u32> cur;
    bool have = false;
    for (u64 t = 2; t <= opts.t_max && cert.primes.size() < opts.prime_budget; t += 2) {
        u64 l = t * fam.n + 1;
        auto z = crude_zset(fam, E, l, opts, have ? &cur : nullptr);
        if (!z) continue;
        if (!have) {
            cur = *z;
            have = true;
        } else {
            cur = *z;  // restricted scan already intersected
        }
        cert.primes.push_back(l);
        if (have && cur.empty()) break;
    }
    cert.exhausted = !have || !cur.empty();
    std::vector<u64> vals(cur.begin(), cur.end());
    cert.surviving = detail::to_residue_set(vals, 2 * fam.n);
    cert.duration_ms = sw.ms();
    return cert;
}

// Replay a fixed witness list (certificate verification).
inline SieveCertificate crude_replay(const ProblemFamily& fam, const WeierstrassModel& E,
                                     const std::string& curve_label, const std::vector<u64>& primes,
                                     const SieveOptions& opts = {}) {
    detail::Stopwatch sw;
    SieveCertificate cert;
    cert.kind = "crude";
    cert.q = fam.q;
    cert.delta = fam.delta;
    cert.kappa = fam.kappa;
    cert.v = fam.v;
    cert.n = fam.n;
    cert.curve = curve_label;
    cert.seed = opts.seed;
    cert.threads = (int)opts.threads;
    std::vector<u32> cur;
    bool have = false;
    for (u64 l : primes) {
        auto z = crude_zset(fam, E, l, opts, have ? &cur : nullptr);
        if (!z) throw domain_error("crude_replay: inadmissible witness prime " + std::to_string(l));
        cur = *z;
        have = true;
        cert.primes.push_back(l);
        if (cur.empty()) break;
    }
    cert.exhausted = !have || !cur.empty();
    std::vector<u64> vals(cur.begin(), cur.end());
    cert.surviving = detail::to_residue_set(vals, 2 * fam.n);
    cert.duration_ms = sw.ms();
    return cert;
}

// --- refined Kraus sieve ---------------------------------------------------------

// W_{l,m} as indices into the gamma set S; nullopt when l inadmissible.
inline std::optional<std::vector<u32>> refined_wset(const ProblemFamily& fam, u64 m,
                                                    const std::vector<QuadRat>& S, const WeierstrassModel& E,
                                                    u64 l, const SieveOptions& opts = {}) {
    u64 n = fam.n;
    u64 q = (u64)fam.q;
    if (!is_prime_u64(l) || l == q || l == 2 || l % n != 1) return std::nullopt;
    u64 t = (l - 1) / n;
    Rng rng(derive_seed(opts.seed, q, n, l));
    auto ctr = detail::curve_trace_at(E, l, rng);
    if (!ctr) return std::nullopt;
    i64 c = *ctr;
    if (mod_big(BigInt(4) - BigInt(c) * (long)c, n) == 0) return std::nullopt;  // (b)
    i64 eps_sign = fam.delta == 0 ? 1 : -1;
    i64 mq = eps_sign > 0 ? -(i64)(q % l) : (i64)(q % l);
    if (jacobi_i64(mq, l) != 1) return std::nullopt;  // (c)
    u64 s = *sqrt_mod_u64((u64)((mq % (i64)l + (i64)l) % (i64)l), l);
    // gamma^t mod L for every gamma in S
    std::vector<u64> gt(S.size());
    for (size_t i = 0; i < S.size(); ++i) gt[i] = powmod(S[i].residue(l, s), t, l);
    int tt = 4;  // condition (c) forces full 2-torsion
    i64 cm = ((c % (i64)n) + (i64)n) % (i64)n;
    std::vector<i64> cands = trace_candidates(l, tt, cm, n);
    detail::FreyShape shape = detail::frey_shape(fam.kappa, fam.delta, fam.q);
    u64 g = primitive_root_u64(l);
    u64 h = powmod(g, n, l);
    u64 qp = powmod(q % l, 2 * m + 1, l);
    u64 qm = powmod(q % l, m, l);
    std::set<u32> marked;
    u64 w = 1;
    for (u64 i = 0; i < t; ++i, w = mulmod(w, h, l)) {
        u64 u = eps_sign > 0 ? submod(w, qp, l) : addmod(w, qp, l);
        if (u != 0 && jacobi_u64(u, l) != 1) continue;
        u64 z0 = u == 0 ? 0 : *sqrt_mod_u64(u, l);
        for (u64 z : {z0, z0 == 0 ? z0 : l - z0}) {
            if (z == l) continue;
            CurveFp cur = detail::frey_curve_mod(shape, l, z, w);
            cur.two_torsion = tt;
            Rng prng(derive_seed(opts.seed, l, i * 2 + (z == z0 ? 0 : 1), 0x8F));
            if (!trace_if_candidate(cur, cands, opts.fast_filter, prng)) continue;
            u64 val = powmod(addmod(z, mulmod(qm, s, l), l), t, l);
            for (size_t gi = 0; gi < S.size(); ++gi)
                if (gt[gi] == val) marked.insert((u32)gi);
            if (z0 == 0) break;
        }
    }
    return std::vector<u32>(marked.begin(), marked.end());
}

inline SieveCertificate refined_certify(const ProblemFamily& fam, u64 m, const std::vector<QuadRat>& S,
                                        const WeierstrassModel& E, const std::string& curve_label,
                                        const SieveOptions& opts = {}) {
    detail::Stopwatch sw;
    SieveCertificate cert;
    cert.kind = "refined";
    cert.q = fam.q;
    cert.delta = fam.delta;
    cert.kappa = fam.kappa;
    cert.v = fam.v;
    cert.n = fam.n;
    cert.curve = curve_label;
    cert.seed = opts.seed;
    cert.threads = (int)opts.threads;
    std::vector<u32> cur;
    bool have = false;
    for (u64 t = 2; t <= opts.t_max && cert.primes.size() < opts.prime_budget; t += 2) {
        u64 l = t * fam.n + 1;
        auto wset = refined_wset(fam, m, S, E, l, opts);
        if (!wset) continue;
        if (!have) {
            cur = *wset;
            have = true;
        } else {
            std::vector<u32> merged;
            std::set_intersection(cur.begin(), cur.end(), wset->begin(), wset->end(),
                                  std::back_inserter(merged));
            cur = merged;
        }
        cert.primes.push_back(l);
        if (have && cur.empty()) break;
    }
    cert.exhausted = !have || !cur.empty();
    std::vector<u64> vals(cur.begin(), cur.end());
    cert.surviving = detail::to_residue_set(vals, S.size() ? S.size() : 1);
    cert.duration_ms = sw.ms();
    return cert;
}

// --- final descent sieve (q in {7,23,31,47,71,79}) --------------------------------

// Y_{l,n} as surviving x values in F_l; nullopt when l fails (I)/(II)/(III).
inline std::optional<std::vector<u64>> final_yset(u64 q, u64 n, u64 l, const WeierstrassModel& E,
                                                  const ClassDataRecord& cd, const SieveOptions& opts = {}) {
    if (!is_prime_u64(l) || l == q || l == 2 || l % n != 1) return std::nullopt;
    if (jacobi_i64(-(i64)(q % l), l) != 1) return std::nullopt;  // (I)
    u64 t = (l - 1) / n;
    Rng rng(derive_seed(opts.seed, q, n, l));
    auto ctr = detail::curve_trace_at(E, l, rng);
    if (!ctr) return std::nullopt;
    i64 c = *ctr;
    if (mod_big(BigInt(c) * (long)c - 4, n) == 0) return std::nullopt;  // (III)
    u64 s = *sqrt_mod_u64((l - q % l) % l, l);
    u64 inv2 = invmod(2, l);
    u64 ua = addmod((u64)(cd.alpha_u % (long)l + (long)l) % l, s, l);
    u64 ub = submod((u64)(cd.alpha_u % (long)l + (long)l) % l, s, l);
    u64 alpha_l = mulmod(ua, inv2, l);      // alpha_q mod L
    u64 alpha_bar_l = mulmod(ub, inv2, l);  // conj
    u64 beta = mulmod(alpha_bar_l, invmod(alpha_l, l), l);
    // i in [0,h) with n i = -2 (mod h); n* = -(n i + 2)/h
    u64 h = (u64)cd.h;
    u64 i = 0;
    while ((n % h * i + 2) % h != 0) ++i;
    BigInt nstar_abs = (BigInt((unsigned long)n) * (unsigned long)i + 2) / (unsigned long)h;
    u64 x0 = powmod(invmod(beta, l), big_residue(nstar_abs, l - 1), l);
    u64 g = primitive_root_u64(l);
    u64 hh = powmod(g, n, l);
    i64 cm = ((c % (i64)n) + (i64)n) % (i64)n;
    std::vector<i64> cands = trace_candidates(l, 4, cm, n);
    {
        auto v2 = trace_candidates(l, 4, ((i64)n - cm) % (i64)n, n);
        cands.insert(cands.end(), v2.begin(), v2.end());
        std::sort(cands.begin(), cands.end());
        cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    }
    std::vector<u64> out;
    u64 x = x0;
    for (u64 j = 0; j < t; ++j, x = mulmod(x, hh, l)) {
        if (x == 0 || x == 1) continue;  // E_x singular; impossible for solutions
        // E_x: Y^2 = X(X+1)(X+x) = X^3 + (1+x)X^2 + x X
        CurveFp cur = curve_from_quadratic(l, (1 + x) % l, x, 0);
        cur.two_torsion = 4;
        Rng prng(derive_seed(opts.seed, l, j, 0xFE));
        if (trace_if_candidate(cur, cands, opts.fast_filter, prng)) out.push_back(x);
    }
    return out;
}

// Search for a single prime l with empty Y set (the production mode of the
// final sieve); falls back to intersections when no single l suffices.
inline SieveCertificate final_certify(u64 q, u64 n, const WeierstrassModel& E, const ClassDataRecord& cd,
                                      const std::string& curve_label, const SieveOptions& opts = {}) {
    detail::Stopwatch sw;
    SieveCertificate cert;
    cert.kind = "final";
    cert.q = (int)q;
    cert.n = n;
    cert.curve = curve_label;
    cert.seed = opts.seed;
    cert.threads = (int)opts.threads;
    std::vector<u64> survivors;
    bool have = false;
    for (u64 t = 2; t <= opts.t_max && cert.primes.size() < opts.prime_budget; t += 2) {
        u64 l = t * n + 1;
        auto y = final_yset(q, n, l, E, cd, opts);
        if (!y) continue;
        cert.primes.push_back(l);
        if (y->empty()) {
            cert.primes = {l};  // single-prime certificate
            cert.surviving = ResidueSet{BigInt((unsigned long)l), {}};
            cert.exhausted = false;
            cert.duration_ms = sw.ms();
            return cert;
        }
        if (!have) {
            survivors = *y;
            have = true;
        }
    }
    cert.exhausted = true;
    cert.surviving = detail::to_residue_set(survivors, cert.primes.empty() ? 1 : cert.primes.back());
    cert.duration_ms = sw.ms();
    return cert;
}

}  // namespace ppg
