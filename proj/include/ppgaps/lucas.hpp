// Lucas sequences L_m = (gamma^m - delta^m)/(gamma - delta) attached to a
// conjugate quadratic-integer pair, ranks of apparition, and primitive-divisor
// tests (Bilu-Hanrot-Voutier exception lists for prime index 5 and 7).
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ppgaps/arith.hpp"

namespace ppg {

// Pair encoded by P = gamma+delta, Q = gamma*delta, D = (gamma-delta)^2.
// Valid pairs have P,Q nonzero coprime integers and gamma/delta not a root of
// unity; for quadratic units that is exactly P, P^2-Q, P^2-2Q, P^2-3Q, D all
// nonzero.
struct LucasPair {
    BigInt P, Q, D;

    static LucasPair from_PQ(const BigInt& P, const BigInt& Q) {
        LucasPair p{P, Q, P * P - 4 * Q};
        p.validate();
        return p;
    }

    // BHV parameterization: (gamma,delta) = ((a-sqrt(b))/2, (a+sqrt(b))/2).
    static LucasPair from_ab(const BigInt& a, const BigInt& b) {
        if ((a * a - b) % 4 != 0) throw domain_error("LucasPair: a^2 != b (mod 4)");
        LucasPair p{a, (a * a - b) / 4, b};
        p.validate();
        return p;
    }

    void validate() const {
        if (P == 0 || Q == 0) throw domain_error("LucasPair: P, Q must be nonzero");
        if (gcd(P, Q) != 1) throw domain_error("LucasPair: P, Q must be coprime");
        if (D == 0 || P * P - Q == 0 || P * P - 2 * Q == 0 || P * P - 3 * Q == 0)
            throw domain_error("LucasPair: gamma/delta is a root of unity");
    }

  private:
    static BigInt gcd(const BigInt& a, const BigInt& b) {
        BigInt g;
        mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        return g;
    }
};

// L_0 = 0, L_1 = 1, L_m = P L_{m-1} - Q L_{m-2}.
inline BigInt lucas_term(const LucasPair& p, u64 m) {
    BigInt a = 0, b = 1;  // L_0, L_1
    if (m == 0) return a;
    for (u64 i = 1; i < m; ++i) {
        BigInt c = p.P * b - p.Q * a;
        a = b;
        b = c;
    }
    return b;
}

// Companion V_0 = 2, V_1 = P, V_m = P V_{m-1} - Q V_{m-2} (= gamma^m+delta^m).
inline BigInt lucas_companion(const LucasPair& p, u64 m) {
    BigInt a = 2, b = p.P;
    if (m == 0) return a;
    for (u64 i = 1; i < m; ++i) {
        BigInt c = p.P * b - p.Q * a;
        a = b;
        b = c;
    }
    return b;
}

// Smallest m >= 1 with l | L_m; absent exactly when l | Q.
inline std::optional<u64> rank_of_apparition(const LucasPair& p, u64 l) {
    if (mod_big(p.Q, l) == 0) return std::nullopt;
    u64 P = big_residue(p.P, l), Q = big_residue(p.Q, l);
    u64 a = 0, b = 1 % l;
    if (b == 0) return u64(1);  // l == 1 never happens for prime l
    for (u64 m = 1; m <= l + 1; ++m) {
        if (b == 0) return m;
        u64 c = submod(mulmod(P, b, l), mulmod(Q, a, l), l);
        a = b;
        b = c;
    }
    // Carmichael: for l | D the rank is l, else it divides l -+ 1
    return std::nullopt;
}

struct PrimitiveDivisor {
    bool has = false;
    std::optional<BigInt> witness;  // smallest witness prime when has
};

// A primitive divisor of L_m: a prime l | L_m with l not dividing
// D * L_1 ... L_{m-1}.
inline PrimitiveDivisor has_primitive_divisor(const LucasPair& p, u64 m) {
    if (m == 0) throw domain_error("has_primitive_divisor: m >= 1 required");
    BigInt Lm = lucas_term(p, m);
    if (Lm == 0) throw domain_error("has_primitive_divisor: L_m = 0 (degenerate pair)");
    PrimitiveDivisor result;
    for (const BigInt& l : factor_distinct(Lm)) {
        if (p.D % l == 0) continue;
        bool divides_earlier = false;
        BigInt a = 0, b = 1;  // b holds L_i mod l
        for (u64 i = 1; i < m && !divides_earlier; ++i) {
            if (b == 0) divides_earlier = true;
            BigInt c = (p.P * b - p.Q * a) % l;
            a = b;
            b = c;
        }
        if (!divides_earlier) {
            result.has = true;
            result.witness = l;
            return result;
        }
    }
    return result;
}

// BHV Theorem exception lists for prime index n; empty for primes >= 11.
inline std::vector<std::pair<long, long>> bhv_exception_lookup(u64 n) {
    if (n == 5)
        return {{1, 5}, {1, -7}, {2, -40}, {1, -11}, {1, -15}, {12, -76}, {12, -1364}};
    if (n == 7) return {{1, -7}, {1, -19}};
    return {};
}

}  // namespace ppg
