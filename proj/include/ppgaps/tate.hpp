// Local reduction data of elliptic curves over Q: Tate's algorithm at p = 2, 3
// and the c4/c6 valuation shortcut at p >= 5.  Produces the conductor exponent,
// the minimal discriminant valuation and a coarse Kodaira label.
#pragma once

#include <climits>
#include <string>

#include "ppgaps/ecff.hpp"

namespace ppg {

inline int vp(const BigInt& x, u64 p) {
    if (x == 0) return INT_MAX;
    BigInt n = x;
    int v = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
        n /= (unsigned long)p;
        ++v;
    }
    return v;
}

// (u, r, s, t) coordinate change; divisions are exact for valid inputs.
inline WeierstrassModel transform_model(const WeierstrassModel& e, const BigInt& u, const BigInt& r,
                                        const BigInt& s, const BigInt& t) {
    WeierstrassModel m;
    BigInt u2 = u * u, u3 = u2 * u, u4 = u2 * u2, u6 = u3 * u3;
    m.a1 = (e.a1 + 2 * s) / u;
    m.a2 = (e.a2 - s * e.a1 + 3 * r - s * s) / u2;
    m.a3 = (e.a3 + r * e.a1 + 2 * t) / u3;
    m.a4 = (e.a4 - s * e.a3 + 2 * r * e.a2 - (t + r * s) * e.a1 + 3 * r * r - 2 * s * t) / u4;
    m.a6 = (e.a6 + r * e.a4 + r * r * e.a2 + r * r * r - t * e.a3 - t * t - r * t * e.a1) / u6;
    m.label = e.label;
    return m;
}

struct LocalData {
    int f = 0;             // conductor exponent
    int ord_disc_min = 0;  // v_p of the minimal discriminant
    std::string kodaira = "I0";
};

namespace detail {

// roots of c2 X^2 + c1 X + c0 over F_p with multiplicity, p in {2,3}
inline void quad_roots(long c2, long c1, long c0, long p, int& nroots, long& root) {
    nroots = 0;
    root = -1;
    for (long x = 0; x < p; ++x) {
        long v = ((c2 * x * x + c1 * x + c0) % p + p) % p;
        if (v == 0) {
            ++nroots;
            root = x;
        }
    }
}

inline long mod_p(const BigInt& x, long p) { return (long)big_residue(x, (u64)p); }

}  // namespace detail

// Tate's algorithm at p = 2 or 3; the c4 shortcut for p >= 5.  The input model
// may be non-minimal.
inline LocalData local_data(WeierstrassModel e, u64 p) {
    BigInt P((unsigned long)p);
    if (p >= 5) {
        // everything at p >= 5 is a function of (c4, c6) after minimalization
        BigInt c4 = e.c4(), c6 = e.c6();
        int k = 0;
        while (vp(c4, p) >= 4 * (k + 1) && vp(c6, p) >= 6 * (k + 1)) ++k;
        BigInt u4 = big_pow(P, 4 * k), u6 = big_pow(P, 6 * k);
        c4 /= u4;
        c6 /= u6;
        BigInt disc = (c4 * c4 * c4 - c6 * c6) / 1728;
        int vd = vp(disc, p);
        if (vd == 0) return {0, 0, "I0"};
        if (vp(c4, p) == 0) return {1, vd, "I" + std::to_string(vd)};
        return {2, vd, "additive"};
    }
    long pl = (long)p;
    for (int restart = 0; restart < 64; ++restart) {
        int n = vp(e.disc(), p);
        if (n == 0) return {0, 0, "I0"};
        // Step 2: translate a singular point mod p to the origin
        {
            bool found = false;
            for (long x0 = 0; x0 < pl && !found; ++x0) {
                for (long y0 = 0; y0 < pl && !found; ++y0) {
                    BigInt X(x0), Y(y0);
                    BigInt F = Y * Y + e.a1 * X * Y + e.a3 * Y - (X * X * X + e.a2 * X * X + e.a4 * X + e.a6);
                    BigInt Fx = e.a1 * Y - (3 * X * X + 2 * e.a2 * X + e.a4);
                    BigInt Fy = 2 * Y + e.a1 * X + e.a3;
                    if (mod_big(F, p) == 0 && mod_big(Fx, p) == 0 && mod_big(Fy, p) == 0) {
                        e = transform_model(e, 1, X, 0, Y);
                        found = true;
                    }
                }
            }
            assert(found && "no singular point with v(disc) > 0");
        }
        if (vp(e.b2(), p) == 0) return {1, n, "I" + std::to_string(n)};
        if (vp(e.a6, p) < 2) return {n, n, "II"};
        if (vp(e.b8(), p) < 3) return {n - 1, n, "III"};
        if (vp(e.b6(), p) < 3) return {n - 2, n, "IV"};
        // Step 6: enforce p | a1,a2; p^2 | a3,a4; p^3 | a6
        {
            bool done = false;
            long p2 = pl * pl;
            for (long s = 0; s < p2 && !done; ++s) {
                for (long t = 0; t < p2 && !done; ++t) {
                    WeierstrassModel m = transform_model(e, 1, 0, s, t);
                    if (vp(m.a1, p) >= 1 && vp(m.a2, p) >= 1 && vp(m.a3, p) >= 2 && vp(m.a4, p) >= 2 &&
                        vp(m.a6, p) >= 3) {
                        e = m;
                        done = true;
                    }
                }
            }
            assert(done && "step 6 normalization failed");
        }
        // P(T) = T^3 + c2 T^2 + c1 T + c0 over F_p
        long c2 = detail::mod_p(e.a2 / (long)p, pl);
        long c1 = detail::mod_p(e.a4 / (long)(p * p), pl);
        long c0 = detail::mod_p(e.a6 / (long)(p * p * p), pl);
        // disc(T^3+aT^2+bT+c) = 18abc - 4a^3c + a^2b^2 - 4b^3 - 27c^2; nonzero
        // mod p iff the roots are distinct in the closure (type I0*)
        long disc = 18 * c2 * c1 * c0 - 4 * c2 * c2 * c2 * c0 + c2 * c2 * c1 * c1 - 4 * c1 * c1 * c1 -
                    27 * c0 * c0;
        disc = (disc % pl + pl) % pl;
        if (disc != 0) return {n - 4, n, "I0*"};
        // a repeated root always lies in F_p; find it and its multiplicity
        long mult_root = -1;
        int mult = 0;
        for (long x = 0; x < pl; ++x) {
            long pv = ((x * x * x + c2 * x * x + c1 * x + c0) % pl + pl) % pl;
            if (pv != 0) continue;
            long q1 = (c2 + x) % pl, q0 = (c1 + x * (c2 + x)) % pl;  // P/(T-x) = T^2+q1 T+q0
            long qv = ((x * x + q1 * x + q0) % pl + pl) % pl;
            if (qv == 0) {
                mult_root = x;
                mult = ((2 * x + q1) % pl + pl) % pl == 0 ? 3 : 2;
                break;
            }
        }
        assert(mult_root >= 0 && "vanishing disc without repeated rational root");
        if (mult == 2) {
            // Step 7: type I_m*; translate the double root to T = 0
            e = transform_model(e, 1, BigInt(mult_root) * (long)p, 0, 0);
            long ix = 3, iy = 3;
            BigInt mx = BigInt((long)(p * p)), my = BigInt((long)(p * p));
            for (;;) {
                BigInt a2t = e.a2 / (long)p;
                BigInt a3t = e.a3 / my;
                BigInt a4t = e.a4 / ((long)p * mx);
                BigInt a6t = e.a6 / (mx * my);
                if (mod_big(a3t * a3t + 4 * a6t, p) != 0) {
                    long m = ix + iy - 5;
                    return {n - 4 - (int)m, n, "I" + std::to_string(m) + "*"};
                }
                long y0;
                if (p == 2)
                    y0 = detail::mod_p(a6t, 2);
                else
                    y0 = detail::mod_p(-a3t * ((pl + 1) / 2), 3);
                e = transform_model(e, 1, 0, 0, my * y0);
                my *= (long)p;
                ++iy;
                a2t = e.a2 / (long)p;
                a4t = e.a4 / ((long)p * mx);
                a6t = e.a6 / (mx * my);
                if (mod_big(a4t * a4t - 4 * a2t * a6t, p) != 0) {
                    long m = ix + iy - 5;
                    return {n - 4 - (int)m, n, "I" + std::to_string(m) + "*"};
                }
                long x0;
                if (p == 2)
                    x0 = detail::mod_p(a6t * a2t, 2);
                else
                    x0 = detail::mod_p(-a4t * ((pl + 1) / 2) * a2t, 3);  // -a4t/(2 a2t) via a2t^2=1
                e = transform_model(e, 1, mx * x0, 0, 0);
                mx *= (long)p;
                ++ix;
            }
        }
        // triple root: translate to T = 0
        e = transform_model(e, 1, BigInt(mult_root) * (long)p, 0, 0);
        {
            // Step 8: Y^2 + a3/p^2 Y - a6/p^4 over F_p
            BigInt a3t = e.a3 / (long)(p * p);
            BigInt a6t = e.a6 / big_pow(P, 4);
            if (mod_big(a3t * a3t + 4 * a6t, p) != 0) return {n - 6, n, "IV*"};
            long y0;
            if (p == 2)
                y0 = detail::mod_p(a6t, 2);
            else
                y0 = detail::mod_p(-a3t * ((pl + 1) / 2), 3);
            e = transform_model(e, 1, 0, 0, BigInt((long)(p * p)) * y0);
        }
        if (vp(e.a4, p) < 4) return {n - 7, n, "III*"};
        if (vp(e.a6, p) < 6) return {n - 8, n, "II*"};
        // non-minimal at p: rescale u = p and restart
        e = transform_model(e, P, 0, 0, 0);
    }
    assert(false && "tate: did not terminate");
    return {};
}

// Conductor of the (possibly non-minimal) model.
inline BigInt conductor(const WeierstrassModel& e) {
    BigInt N = 1;
    for (const BigInt& pf : factor_distinct(e.disc())) {
        if (!fits_u64(pf)) throw domain_error("conductor: prime too large");
        u64 p = to_u64(pf);
        LocalData d = local_data(e, p);
        N *= big_pow(BigInt(pf), (unsigned long)d.f);
    }
    return N;
}

}  // namespace ppg
