// Brute-force solution oracle for x^2 + (-1)^delta q^alpha = y^n, the
// parametric n=3 / n=4 classifications, Thue-Mahler equation emission for the
// descent steps, and the Frey-Hellegouarch model recipes.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ppgaps/quadfield.hpp"
#include "ppgaps/tate.hpp"

namespace ppg {

// x^2 + (-1)^delta q^alpha = y^n with gcd(x,y) = 1, q coprime to x.
struct Solution {
    u64 q = 0;
    int delta = 0;
    u64 alpha = 0;
    BigInt x, y;
    u64 n = 0;

    bool verify() const {
        BigInt lhs = x * x + (delta ? -1 : 1) * big_pow(BigInt((unsigned long)q), alpha);
        BigInt g;
        mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
        BigInt yn;
        mpz_pow_ui(yn.get_mpz_t(), y.get_mpz_t(), n);
        return lhs == yn && g == 1 && x % (unsigned long)q != 0 && y != 0 && x >= 1;
    }
    bool operator<(const Solution& o) const {
        return std::tie(q, delta, alpha, n, x) < std::tie(o.q, o.delta, o.alpha, o.n, o.x);
    }
    bool operator==(const Solution& o) const {
        return q == o.q && delta == o.delta && alpha == o.alpha && x == o.x && y == o.y && n == o.n;
    }
};

// Exhaustive x/alpha scan with exact n-th-root tests.  The scan region is
// x <= x_max and q^alpha <= 16 x_max^2 (every table row with x in bound lies
// inside).  Sorted lexicographically in (q, delta, alpha, n, x).
inline std::vector<Solution> brute_force_solutions(u64 q, int delta, u64 x_max, u64 n_max) {
    if (x_max == 0 || n_max < 3) throw domain_error("brute_force_solutions: bounds positive, n_max >= 3");
    if (x_max > 1000000000ULL) throw domain_error("brute_force_solutions: x_max too large for i64 scan");
    std::vector<Solution> out;
    BigInt cap = 16 * BigInt((unsigned long)x_max) * (unsigned long)x_max;
    for (u64 alpha = 1;; ++alpha) {
        BigInt qa_big = big_pow(BigInt((unsigned long)q), alpha);
        if (qa_big > cap) break;
        i64 qa = (i64)to_u64(qa_big);
        for (u64 x = 1; x <= x_max; ++x) {
            if (x % q == 0) continue;
            i64 N = (i64)(x * x) + (delta ? -qa : qa);
            if (N == 0) continue;
            for (u64 n = 3; n <= n_max; ++n) {
                if ((n & 1) == 0 && N < 0) continue;
                u64 absN = (u64)(N < 0 ? -N : N);
                if (absN >> n == 0 && absN != 1) break;  // |y| >= 2 impossible and 1 handled below
                auto y = exact_nth_root_i64(N, (unsigned)n);
                if (!y) continue;
                Solution s{q, delta, alpha, BigInt((unsigned long)x), BigInt((long)*y), n};
                if (s.verify()) out.push_back(s);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// --- parametric families (n = 3, n = 4) -----------------------------------

struct ParametricRecord {
    // branch label, witness parameter, induced (k, x, y)
    std::string branch;
    BigInt witness;
    u64 k = 0;
    BigInt x, y;
};

// x^2 + q^{2k} = y^3 parametric branches: q = 3a^2-1 or q^2 = 3a^2+1.
inline std::vector<ParametricRecord> parametric_n3(const BigInt& q) {
    if (q < 3 || !is_prime(q) || q == 2) throw domain_error("parametric_n3: odd prime required");
    std::vector<ParametricRecord> out;
    if ((q + 1) % 3 == 0) {
        BigInt a2 = (q + 1) / 3;
        BigInt a = isqrt_big(a2);
        if (a * a == a2) out.push_back({"q=3a^2-1", a, 1, a * a * a - 3 * a, a * a + 1});
    }
    if ((q * q - 1) % 3 == 0) {
        BigInt a2 = (q * q - 1) / 3;
        BigInt a = isqrt_big(a2);
        if (a * a == a2) out.push_back({"q^2=3a^2+1", a, 1, 8 * a * a * a + 3 * a, 4 * a * a + 1});
    }
    return out;
}

// x^2 - q^{2k} = y^4 (y even) branch q = (g^{2m}+g^{-2m})/2 with g = 1+sqrt 2,
// and the delta=0 Pell branch q^2 = 2y^2 - 1.
inline std::vector<ParametricRecord> parametric_n4(const BigInt& q) {
    if (q < 3 || !is_prime(q)) throw domain_error("parametric_n4: odd prime required");
    std::vector<ParametricRecord> out;
    // g^{2m} = a + b sqrt(2); q = a, y = b, x = (a^2 + 2b^2 + 3)/4
    QuadOrder O2 = QuadOrder::make(BigInt(2));
    QuadInt g2{O2, 3, 2};  // (1+sqrt 2)^2
    QuadInt pw{O2, 1, 0};
    for (u64 m = 1;; ++m) {
        pw = pw * g2;
        if (pw.x > 2 * q) break;
        if (pw.x == q) {
            out.push_back({"q=(g^{2m}+g^{-2m})/2", BigInt((unsigned long)m), 1,
                           (pw.x * pw.x + 2 * pw.y * pw.y + 3) / 4, pw.y});
        }
    }
    // Pell: q^2 = 2y^2 - 1
    if ((q * q + 1) % 2 == 0) {
        BigInt y2 = (q * q + 1) / 2;
        BigInt y = isqrt_big(y2);
        if (y * y == y2) out.push_back({"q^2=2y^2-1", y, 1, (q * q - 1) / 2, y});
    }
    return out;
}

// primes q < bound of the form 3a^2 - 1
inline std::vector<u64> primes_3a2_minus_1(u64 bound) {
    std::vector<u64> out;
    for (u64 a = 1; 3 * a * a - 1 < bound; ++a) {
        u64 q = 3 * a * a - 1;
        if (q >= 5 && is_prime_u64(q)) out.push_back(q);
    }
    return out;
}

// primes q < bound with q^2 = 3a^2 + 1
inline std::vector<u64> primes_pell_3a2_plus_1(u64 bound) {
    std::vector<u64> out;
    // fundamental solution of q^2 - 3a^2 = 1 is (2,1)
    u64 q = 2, a = 1;
    while (q < bound) {
        if (q >= 5 && is_prime_u64(q)) out.push_back(q);
        u64 q2 = 2 * q + 3 * a;
        a = q + 2 * a;
        q = q2;
    }
    return out;
}

// primes q < bound with q^2 = 2y^2 - 1
inline std::vector<u64> primes_pell_2y2_minus_1(u64 bound) {
    std::vector<u64> out;
    // x^2 - 2y^2 = -1: x + y sqrt2 = (1+sqrt2)^{2j+1}
    u64 x = 1, y = 1;
    while (x < bound) {
        if (x >= 3 && is_prime_u64(x)) out.push_back(x);
        // multiply by (1+sqrt2)^2 = 3+2sqrt2
        u64 nx = 3 * x + 4 * y;
        y = 2 * x + 3 * y;
        x = nx;
    }
    return out;
}

// primes q < bound arising as (g^{2m}+g^{-2m})/2 (the n=4, y even family)
inline std::vector<u64> primes_n4_even_family(u64 bound) {
    std::vector<u64> out;
    QuadOrder O2 = QuadOrder::make(BigInt(2));
    QuadInt g2{O2, 3, 2};
    QuadInt pw{O2, 1, 0};
    for (;;) {
        pw = pw * g2;
        if (pw.x >= (long)bound) break;
        if (is_prime(pw.x)) out.push_back(to_u64(pw.x));
    }
    return out;
}

// --- Thue-Mahler emission ----------------------------------------------------

struct ThueMahlerInstance {
    unsigned degree = 0;
    std::vector<BigInt> coeffs;  // X^deg, X^{deg-1}Y, ..., Y^deg
    std::string rhs_pattern;
    std::string note;

    BigInt evaluate(const BigInt& X, const BigInt& Y) const {
        BigInt v = 0;
        for (unsigned i = 0; i <= degree; ++i) v += coeffs[i] * big_pow(X, degree - i) * big_pow(Y, i);
        return v;
    }
};

// theta^k = c_k + d_k theta in the order O
inline std::vector<std::pair<BigInt, BigInt>> theta_powers(const QuadOrder& O, unsigned n) {
    std::vector<std::pair<BigInt, BigInt>> pw(n + 1);
    pw[0] = {1, 0};
    BigInt t2c = O.half ? (O.d - 1) / 4 : O.d;  // theta^2 = t2c + t2d theta
    BigInt t2d = O.half ? 1 : 0;
    for (unsigned k = 1; k <= n; ++k) {
        auto [c, d] = pw[k - 1];
        // (c + d theta) theta = d t2c + (c + d t2d) theta
        pw[k] = {d * t2c, c + d * t2d};
    }
    return pw;
}

// Coefficient vectors of F, G with gamma (X + Y theta)^n = F(X,Y) + G(X,Y) theta.
inline std::pair<std::vector<BigInt>, std::vector<BigInt>> expand_gamma_power(const QuadInt& gamma, u64 n) {
    const QuadOrder& O = gamma.O;
    auto pw = theta_powers(O, (unsigned)n);
    std::vector<BigInt> F(n + 1), G(n + 1);
    BigInt binom = 1;
    for (unsigned k = 0; k <= n; ++k) {
        // coefficient of X^{n-k} Y^k in (X+Y theta)^n is binom(n,k) theta^k
        BigInt c = binom * pw[k].first, d = binom * pw[k].second;
        // gamma (c + d theta)
        QuadInt term = gamma * QuadInt{O, c, d};
        F[k] = term.x;
        G[k] = term.y;
        binom = binom * (long)(n - k) / (long)(k + 1);
    }
    return {F, G};
}

inline BigInt content(const std::vector<BigInt>& v) {
    BigInt g = 0;
    for (const auto& c : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

// Signature (n,n,n) split: y1^n - 2^{n-2} y2^n = q^k.
inline ThueMahlerInstance emit_split_nnn(u64 q, u64 n) {
    ThueMahlerInstance t;
    t.degree = (unsigned)n;
    t.coeffs.assign(n + 1, 0);
    t.coeffs[0] = 1;
    t.coeffs[n] = -big_pow(BigInt(2), (unsigned long)(n - 2));
    t.rhs_pattern = std::to_string(q) + "^k";
    t.note = "y1^n - 2^{n-2} y2^n = q^k";
    return t;
}

// Class-group descent: G_r(X,Y) = +-2^{s+rn+r} q^k from
// 2^{s+rn+r}(x +- q^k sqrt(-q)) = (u+v sqrt(-q))^r (X+Y sqrt(-q))^n,
// primitive part emitted.  (q,n) in {(47,5),(71,7),(79,5)}, 0 <= r <= (n-1)/2.
inline ThueMahlerInstance emit_descent_class_group(u64 q, u64 n, u64 r) {
    long u, v = 1;
    if (q == 47 && n == 5)
        u = -9;
    else if (q == 71 && n == 7)
        u = -21;
    else if (q == 79 && n == 5)
        u = 7;
    else
        throw domain_error("emit_descent_class_group: unsupported (q,n)");
    QuadOrder O{BigInt(-(long)q), false};  // work in Z[sqrt(-q)] coordinates
    QuadInt uv{O, BigInt(u), BigInt(v)};
    QuadInt g = uv.pow(r);
    auto [F, G] = expand_gamma_power(g, n);
    (void)F;
    ThueMahlerInstance t;
    t.degree = (unsigned)n;
    BigInt c = content(G);
    for (auto& x : G) t.coeffs.push_back(x / c);
    t.rhs_pattern = "+-2^j " + std::to_string(q) + "^k";
    t.note = "imag part of (u+v sqrt(-q))^r (X+Y sqrt(-q))^n, content " + c.get_str() + " removed";
    return t;
}

// Quintic descent, y odd: theta-coefficient of eps^r (X+Y theta)^5 = q^k
// (2 q^k when q = 1 mod 4).
inline ThueMahlerInstance emit_quintic(u64 q, long r) {
    QuadOrder O = QuadOrder::make(BigInt((unsigned long)q));
    QuadInt eps = fundamental_unit(BigInt((unsigned long)q));
    QuadInt g{O, 1, 0};
    if (r >= 0) {
        g = eps.pow((u64)r);
    } else {
        QuadInt inv = eps.conj();
        if (eps.norm() == -1) inv = -inv;
        g = inv.pow((u64)(-r));
    }
    auto [F, G] = expand_gamma_power(g, 5);
    (void)F;
    ThueMahlerInstance t;
    t.degree = 5;
    t.coeffs = G;
    t.rhs_pattern = q % 4 == 1 ? "2 " + std::to_string(q) + "^k" : std::to_string(q) + "^k";
    t.note = "theta coefficient of eps^" + std::to_string(r) + " (X+Y theta)^5";
    return t;
}

// Refined-sieve handoff: gamma in S survived; emit the theta-coefficient of
// (gamma/2)(X+Y theta)^n = q^k, denominators cleared into the RHS.
inline ThueMahlerInstance emit_gamma_power(const QuadRat& gamma, u64 q, u64 n) {
    QuadRat half = gamma;
    half.den2 += 1;  // the paper's equation divides both sides by 2
    half.normalize();
    auto [F, G] = expand_gamma_power(half.num, n);
    (void)F;
    ThueMahlerInstance t;
    t.degree = (unsigned)n;
    t.coeffs = G;
    t.rhs_pattern = (half.den2 ? "2^" + std::to_string(half.den2) + " " : "") + std::to_string(q) + "^k";
    t.note = "theta coefficient of gamma/2 (X+Y theta)^n";
    return t;
}

// --- Frey-Hellegouarch models --------------------------------------------------

// Kraus (n,n,n) models for y1^n - 2^{n-2} y2^n = q^k.
inline WeierstrassModel frey_nnn(u64 q, const BigInt& y1, const BigInt& y2, u64 n, u64 k) {
    BigInt y1n = big_pow(y1, n), y2n = big_pow(y2, n);
    BigInt qk = big_pow(BigInt((unsigned long)q), k);
    BigInt t = big_pow(BigInt(2), (unsigned long)(n - 2)) * y2n;
    if (y1n - t != qk) throw domain_error("frey_nnn: inputs do not satisfy the split identity");
    if (q % 4 == 1) {
        // Y^2 = X (X + y1^n)(X + 2^{n-2} y2^n)
        return WeierstrassModel{0, y1n + t, 0, y1n * t, 0, ""};
    }
    // Y^2 = X (X - q^k)(X + 2^{n-2} y2^n)
    return WeierstrassModel{0, t - qk, 0, -qk * t, 0, ""};
}

// Prop. primary Frey curve G_{x,k} for x^2 + (-1)^delta q^{2k+1} = y^n.
inline WeierstrassModel frey_primary(u64 q, int delta, int kappa, const BigInt& x, u64 k) {
    BigInt w = x * x + (delta ? -1 : 1) * big_pow(BigInt((unsigned long)q), 2 * k + 1);
    long qm4 = (long)(q % 4);
    if (kappa == 1) {
        if (mod_big(x, 4) != 1) throw domain_error("frey_primary: kappa=1 requires x = 1 mod 4");
        return WeierstrassModel{0, 4 * x, 0, 4 * w, 0, ""};
    }
    bool case_b = (delta == 0 && qm4 == 1) || (delta == 1 && qm4 == 3);  // q = (-1)^delta mod 4
    if (case_b) return WeierstrassModel{0, -4 * x, 0, 4 * w, 0, ""};
    return WeierstrassModel{0, 2 * x, 0, w, 0, ""};
}

// E_q : Y^2 = X(X+1)(X - eta 2^m) for q = 2^m + eta prime.
inline WeierstrassModel mersenne_fermat_curve(u64 q) {
    for (int m = 2; m < 62; ++m) {
        for (int eta : {-1, 1}) {
            if ((i64)q == (i64)(1ULL << m) + eta) {
                BigInt c = BigInt(eta) * (long)(1ULL << m);
                return WeierstrassModel{0, 1 - c, 0, -c, 0, ""};
            }
        }
    }
    throw domain_error("mersenne_fermat_curve: q is not 2^m +- 1");
}

// Signature (n,n,2) recipes for y^n + q^alpha z^n = x^2.
inline WeierstrassModel frey_nn2_even(const BigInt& x, const BigInt& even_block) {
    // even_block = y^n (y even) or q^alpha z^n (z even); x = 1 mod 4
    if (mod_big(x, 4) != 1) throw domain_error("frey_nn2_even: x = 1 mod 4 required");
    if (even_block % 64 != 0) throw domain_error("frey_nn2_even: 64 must divide the even block");
    return WeierstrassModel{1, (x - 1) / 4, 0, even_block / 64, 0, ""};
}

inline WeierstrassModel frey_nn2_odd(const BigInt& x, const BigInt& y_mod4_block, bool y_is_1_mod_4) {
    // y = 1 mod 4: Y^2 = X^3 + 2xX^2 + q^alpha z^n X ; y = 3 mod 4: ... + y^n X
    (void)y_is_1_mod_4;
    return WeierstrassModel{0, 2 * x, 0, y_mod4_block, 0, ""};
}

}  // namespace ppg
