// Elliptic curves over prime fields F_l: reduction of rational models, point
// counting (exhaustive below 1e4, baby-step giant-step order finding above),
// traces of Frobenius, and the random-point order filter used by the sieves.
#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ppgaps/arith.hpp"

namespace ppg {

// Long Weierstrass model over Q.
struct WeierstrassModel {
    BigInt a1, a2, a3, a4, a6;
    std::string label;

    BigInt b2() const { return a1 * a1 + 4 * a2; }
    BigInt b4() const { return 2 * a4 + a1 * a3; }
    BigInt b6() const { return a3 * a3 + 4 * a6; }
    BigInt b8() const { return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4; }
    BigInt c4() const { return b2() * b2() - 24 * b4(); }
    BigInt c6() const { return -b2() * b2() * b2() + 36 * b2() * b4() - 216 * b6(); }
    BigInt disc() const {
        BigInt B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
        return -B2 * B2 * B8 - 8 * B4 * B4 * B4 - 27 * B6 * B6 + 9 * B2 * B4 * B6;
    }
};

inline WeierstrassModel model_from_ainvs(const std::vector<BigInt>& a, std::string label = "") {
    return WeierstrassModel{a[0], a[1], a[2], a[3], a[4], std::move(label)};
}

// y^2 = x^3 + Ax + B over F_l, l >= 5 prime.  A,B live in Montgomery form.
// two_torsion caches #E[2](F_l) in {1,2,4}; 0 = not yet computed.
struct CurveFp {
    Mont F;
    u64 A = 0, B = 0;
    mutable int two_torsion = 0;

    u64 l() const { return F.n; }

    u64 rhs(u64 xm) const { return F.add(F.mul(F.add(F.sqr(xm), A), xm), B); }
};

// Affine or Jacobian point; Z = 0 encodes the identity.
struct PointJ {
    u64 X = 0, Y = 0, Z = 0;
    bool inf() const { return Z == 0; }
};

inline CurveFp curve_short(u64 l, u64 a, u64 b) {
    CurveFp c;
    c.F.init(l);
    c.A = c.F.to(a);
    c.B = c.F.to(b);
    return c;
}

// y^2 = x^3 + A2 x^2 + A4 x + A6, depressed to short form (needs l >= 5).
inline CurveFp curve_from_quadratic(u64 l, u64 A2, u64 A4, u64 A6) {
    CurveFp c;
    c.F.init(l);
    const Mont& F = c.F;
    u64 a2 = F.to(A2), a4 = F.to(A4), a6 = F.to(A6);
    u64 inv3 = F.inv(F.to(3));
    u64 t = F.mul(a2, inv3);  // shift x -> x - a2/3
    u64 t2 = F.sqr(t);
    c.A = F.sub(a4, F.mul(F.to(3), t2));
    c.B = F.add(F.sub(a6, F.mul(a4, t)), F.mul(F.mul(F.to(2), t2), t));
    return c;
}

enum class ReductionKind { good, multiplicative, additive };

// Reduction of a curve over Q at a prime where the model is defined; the
// multiplicative/additive split assumes the model is minimal at l.
struct BadReduction {
    ReductionKind kind;
};

// Good reduction at l in {2,3} keeps the long model; counting is exhaustive.
struct CurveSmall {
    u64 l;
    u64 a1, a2, a3, a4, a6;
};

using Reduction = std::variant<CurveFp, CurveSmall, BadReduction>;

inline Reduction reduce_model(const WeierstrassModel& w, u64 l) {
    BigInt d = w.disc();
    if (mod_big(d, l) != 0) {
        if (l >= 5) {
            // y^2 = x^3 - 27 c4 x - 54 c6 is isomorphic to w over F_l
            BigInt c4 = w.c4(), c6 = w.c6();
            u64 a = big_residue(-27 * c4, l);
            u64 b = big_residue(-54 * c6, l);
            return curve_short(l, a, b);
        }
        return CurveSmall{l, big_residue(w.a1, l), big_residue(w.a2, l), big_residue(w.a3, l),
                          big_residue(w.a4, l), big_residue(w.a6, l)};
    }
    bool mult = mod_big(w.c4(), l) != 0;
    return BadReduction{mult ? ReductionKind::multiplicative : ReductionKind::additive};
}

// --- point arithmetic (Jacobian coordinates) ------------------------------

inline PointJ pt_double(const CurveFp& c, const PointJ& p) {
    const Mont& F = c.F;
    if (p.inf() || p.Y == 0) return {};
    u64 XX = F.sqr(p.X), YY = F.sqr(p.Y);
    u64 YYYY = F.sqr(YY);
    u64 ZZ = F.sqr(p.Z);
    u64 S = F.sub(F.sqr(F.add(p.X, YY)), F.add(XX, YYYY));
    S = F.add(S, S);
    u64 M = F.add(F.add(XX, F.add(XX, XX)), F.mul(c.A, F.sqr(ZZ)));
    u64 X3 = F.sub(F.sqr(M), F.add(S, S));
    u64 e8 = F.add(YYYY, YYYY);
    e8 = F.add(e8, e8);
    e8 = F.add(e8, e8);
    u64 Y3 = F.sub(F.mul(M, F.sub(S, X3)), e8);
    u64 Z3 = F.sub(F.sqr(F.add(p.Y, p.Z)), F.add(YY, ZZ));
    return {X3, Y3, Z3};
}

inline PointJ pt_add(const CurveFp& c, const PointJ& p, const PointJ& q) {
    const Mont& F = c.F;
    if (p.inf()) return q;
    if (q.inf()) return p;
    u64 Z1Z1 = F.sqr(p.Z), Z2Z2 = F.sqr(q.Z);
    u64 U1 = F.mul(p.X, Z2Z2), U2 = F.mul(q.X, Z1Z1);
    u64 S1 = F.mul(F.mul(p.Y, q.Z), Z2Z2), S2 = F.mul(F.mul(q.Y, p.Z), Z1Z1);
    if (U1 == U2) {
        if (S1 != S2) return {};
        return pt_double(c, p);
    }
    u64 H = F.sub(U2, U1);
    u64 I = F.sqr(F.add(H, H));
    u64 J = F.mul(H, I);
    u64 r = F.sub(S2, S1);
    r = F.add(r, r);
    u64 V = F.mul(U1, I);
    u64 X3 = F.sub(F.sub(F.sqr(r), J), F.add(V, V));
    u64 t = F.mul(S1, J);
    u64 Y3 = F.sub(F.mul(r, F.sub(V, X3)), F.add(t, t));
    u64 Z3 = F.mul(F.sub(F.sqr(F.add(p.Z, q.Z)), F.add(Z1Z1, Z2Z2)), H);
    return {X3, Y3, Z3};
}

// p + affine q (Z = 1, Montgomery one).
inline PointJ pt_add_affine(const CurveFp& c, const PointJ& p, u64 qx, u64 qy) {
    const Mont& F = c.F;
    if (p.inf()) return {qx, qy, F.one()};
    u64 Z1Z1 = F.sqr(p.Z);
    u64 U2 = F.mul(qx, Z1Z1);
    u64 S2 = F.mul(F.mul(qy, p.Z), Z1Z1);
    if (p.X == U2) {
        if (p.Y != S2) return {};
        return pt_double(c, p);
    }
    u64 H = F.sub(U2, p.X);
    u64 HH = F.sqr(H);
    u64 I = F.add(HH, HH);
    I = F.add(I, I);
    u64 J = F.mul(H, I);
    u64 r = F.sub(S2, p.Y);
    r = F.add(r, r);
    u64 V = F.mul(p.X, I);
    u64 X3 = F.sub(F.sub(F.sqr(r), J), F.add(V, V));
    u64 t = F.mul(p.Y, J);
    u64 Y3 = F.sub(F.mul(r, F.sub(V, X3)), F.add(t, t));
    u64 Z3 = F.mul(F.add(p.Z, p.Z), H);
    return {X3, Y3, Z3};
}

inline PointJ pt_neg(const CurveFp& c, const PointJ& p) {
    if (p.inf()) return p;
    return {p.X, c.F.neg(p.Y), p.Z};
}

// k * (affine x,y), double-and-add.
inline PointJ pt_mul_affine(const CurveFp& c, u64 x, u64 y, u64 k) {
    PointJ r{};
    if (k == 0) return r;
    int bits = 63 - __builtin_clzll(k);
    r = {x, y, c.F.one()};
    for (int i = bits - 1; i >= 0; --i) {
        r = pt_double(c, r);
        if ((k >> i) & 1) r = pt_add_affine(c, r, x, y);
    }
    return r;
}

inline PointJ pt_mul(const CurveFp& c, const PointJ& p, u64 k) {
    PointJ r{};
    PointJ base = p;
    while (k) {
        if (k & 1) r = pt_add(c, r, base);
        k >>= 1;
        if (k) base = pt_double(c, base);
    }
    return r;
}

// Batch-normalize to affine; infinity entries flagged.
struct AffinePt {
    u64 x = 0, y = 0;
    bool inf = true;
};

inline std::vector<AffinePt> batch_affine(const CurveFp& c, const std::vector<PointJ>& pts) {
    const Mont& F = c.F;
    size_t n = pts.size();
    std::vector<AffinePt> out(n);
    std::vector<u64> acc(n);
    u64 run = F.one();
    for (size_t i = 0; i < n; ++i) {
        acc[i] = run;
        if (!pts[i].inf()) run = F.mul(run, pts[i].Z);
    }
    u64 inv = F.inv(run);
    for (size_t i = n; i-- > 0;) {
        if (pts[i].inf()) continue;
        u64 zi = F.mul(acc[i], inv);  // 1/Z_i
        inv = F.mul(inv, pts[i].Z);
        u64 zi2 = F.sqr(zi);
        out[i] = {F.mul(pts[i].X, zi2), F.mul(pts[i].Y, F.mul(zi2, zi)), false};
    }
    return out;
}

// --- random points ---------------------------------------------------------

inline AffinePt random_point(const CurveFp& c, Rng& rng) {
    const Mont& F = c.F;
    for (;;) {
        u64 x = rng.below(c.l());
        u64 xm = F.to(x);
        u64 fm = c.rhs(xm);
        u64 f = F.from(fm);
        if (f == 0) return {xm, 0, false};
        if (jacobi_u64(f, c.l()) != 1) continue;
        u64 y = *sqrt_mod_u64(f, c.l());
        if (rng.next() & 1) y = c.l() - y;
        return {xm, F.to(y), false};
    }
}

// --- exhaustive counting ----------------------------------------------------

namespace detail {
// Quadratic-residue table for small l, cached per thread.
inline const std::vector<u8>& qr_table(u64 l) {
    thread_local u64 cached_l = 0;
    thread_local std::vector<u8> table;
    if (cached_l != l) {
        table.assign(l, 0);
        for (u64 r = 1; r <= (l - 1) / 2; ++r) table[mulmod(r, r, l)] = 1;
        cached_l = l;
    }
    return table;
}
}  // namespace detail

inline u64 curve_order_exhaustive(const CurveFp& c) {
    u64 l = c.l();
    const auto& qr = detail::qr_table(l);
    u64 a = c.F.from(c.A), b = c.F.from(c.B);
    i64 sum = 0;
    for (u64 x = 0; x < l; ++x) {
        u64 v = mulmod(x, addmod(mulmod(x, x, l), a, l), l);
        v = addmod(v, b, l);
        if (v == 0) continue;
        sum += qr[v] ? 1 : -1;
    }
    return (u64)((i64)l + 1 + sum);
}

inline u64 curve_order_small(const CurveSmall& c) {
    u64 l = c.l;
    u64 n = 1;  // point at infinity
    for (u64 x = 0; x < l; ++x) {
        u64 rhs = (x * x % l * x + c.a2 * x % l * x + c.a4 * x + c.a6) % l;
        for (u64 y = 0; y < l; ++y) {
            u64 lhs = (y * y + c.a1 * x * y + c.a3 * y) % l;
            if (lhs == rhs) ++n;
        }
    }
    return n;
}

// --- 2-torsion --------------------------------------------------------------

namespace detail {
// #roots of x^3 + Ax + B over F_l via gcd(x^l - x, f), degree <= 2 arithmetic.
inline int cubic_root_count(const CurveFp& c) {
    const Mont& F = c.F;
    // poly arithmetic mod f(x) = x^3 + Ax + B, coefficients in Montgomery form
    struct P2 {
        u64 c0, c1, c2;
    };
    auto mulred = [&](const P2& p, const P2& q) {
        // multiply then reduce with x^3 = -Ax - B
        u64 d0 = F.mul(p.c0, q.c0);
        u64 d1 = F.add(F.mul(p.c0, q.c1), F.mul(p.c1, q.c0));
        u64 d2 = F.add(F.add(F.mul(p.c0, q.c2), F.mul(p.c2, q.c0)), F.mul(p.c1, q.c1));
        u64 d3 = F.add(F.mul(p.c1, q.c2), F.mul(p.c2, q.c1));
        u64 d4 = F.mul(p.c2, q.c2);
        // x^4 = -Ax^2 - Bx
        u64 r2 = F.sub(d2, F.mul(d4, c.A));
        u64 r1 = F.sub(F.sub(d1, F.mul(d3, c.A)), F.mul(d4, c.B));
        u64 r0 = F.sub(d0, F.mul(d3, c.B));
        return P2{r0, r1, r2};
    };
    // x^l mod f
    P2 r{F.one(), 0, 0};
    P2 base{0, F.one(), 0};
    u64 e = c.l();
    while (e) {
        if (e & 1) r = mulred(r, base);
        base = mulred(base, base);
        e >>= 1;
    }
    // g = x^l - x; deg gcd(f, g) = #roots (f squarefree: the curve is nonsingular)
    u64 g0 = r.c0, g1 = F.sub(r.c1, F.one()), g2 = r.c2;
    // gcd(x^3 + Ax + B, g2 x^2 + g1 x + g0)
    if (g2 == 0 && g1 == 0) return g0 == 0 ? 3 : 0;
    if (g2 == 0) {
        // linear: root -g0/g1; one root of f iff f(-g0/g1) = 0
        u64 x0 = F.neg(F.mul(g0, F.inv(g1)));
        u64 fx = F.add(F.mul(F.add(F.sqr(x0), c.A), x0), c.B);
        return fx == 0 ? 1 : 0;
    }
    // f mod g (degree-2 monic-ized divisor)
    u64 inv2 = F.inv(g2);
    u64 b1 = F.mul(g1, inv2), b0 = F.mul(g0, inv2);  // g ~ x^2 + b1 x + b0
    // x^3 + Ax + B mod (x^2 + b1 x + b0): x^2 = -b1 x - b0
    // x^3 = -b1 x^2 - b0 x = (b1^2 - b0) x + b1 b0
    u64 r1c = F.add(F.sub(F.sqr(b1), b0), c.A);
    u64 r0c = F.add(F.mul(b1, b0), c.B);
    if (r1c == 0 && r0c == 0) return 2;  // g | f: two roots from g... plus possibly the third
    if (r1c == 0) return 0;  // constant nonzero remainder
    // gcd(x^2 + b1 x + b0, r1c x + r0c)
    u64 x0 = F.neg(F.mul(r0c, F.inv(r1c)));
    u64 gx = F.add(F.mul(F.add(x0, b1), x0), b0);
    int roots_common = gx == 0 ? 1 : 0;
    return roots_common;
}
}  // namespace detail

// Order of E[2](F_l) in {1,2,4}.
inline int two_torsion_order(const CurveFp& c) {
    if (c.two_torsion == 0) {
        int roots = detail::cubic_root_count(c);
        // a squarefree cubic with two rational roots has a rational third
        if (roots == 2) roots = 3;
        c.two_torsion = roots == 3 ? 4 : 1 + roots;
    }
    return c.two_torsion;
}

// --- order finding (BSGS) ----------------------------------------------------

namespace detail {

// All k in [0,W) with (L0 + k*step)P = O, P affine.
inline std::vector<u64> annihilators(const CurveFp& c, u64 px, u64 py, u64 L0, u64 step, u64 W) {
    std::vector<u64> out;
    auto verify = [&](u64 k) {
        if (pt_mul_affine(c, px, py, L0 + k * step).inf()) out.push_back(k);
    };
    if (W <= 40) {
        PointJ g = pt_mul_affine(c, px, py, step);
        if (g.inf()) {
            if (pt_mul_affine(c, px, py, L0).inf())
                for (u64 k = 0; k < W; ++k) out.push_back(k);
            return out;
        }
        auto ga = batch_affine(c, {g})[0];
        PointJ t = pt_mul_affine(c, px, py, L0);
        for (u64 k = 0; k < W; ++k) {
            if (t.inf()) out.push_back(k);
            t = pt_add_affine(c, t, ga.x, ga.y);
        }
        return out;
    }
    u64 s = (u64)std::ceil(std::sqrt((double)W));
    PointJ G = pt_mul_affine(c, px, py, step);
    if (G.inf()) {
        // degenerate: P killed by step
        if (pt_mul_affine(c, px, py, L0).inf())
            for (u64 k = 0; k < W; ++k) out.push_back(k);
        return out;
    }
    auto Ga = batch_affine(c, {G})[0];
    // baby steps Q0 + jG, j in [0, s)
    std::vector<PointJ> baby(s);
    baby[0] = pt_mul_affine(c, px, py, L0);
    for (u64 j = 1; j < s; ++j) baby[j] = baby[j - 1].inf() ? PointJ{Ga.x, Ga.y, c.F.one()}
                                                            : pt_add_affine(c, baby[j - 1], Ga.x, Ga.y);
    auto baffine = batch_affine(c, baby);
    BabyMap map;
    map.reset(s);
    for (u64 j = 0; j < s; ++j) {
        if (baffine[j].inf) {
            verify(j);  // Q0 + jG = O
        } else {
            map.put(baffine[j].x, (u32)j);
        }
    }
    // giant steps T_i = -(i*s)G, i in [1, W/s + 1]
    u64 imax = W / s + 1;
    PointJ Ds = pt_mul(c, PointJ{Ga.x, Ga.y, c.F.one()}, s);
    auto Dsa = batch_affine(c, {Ds})[0];
    if (Dsa.inf) {
        // sG = O: all solutions found among babies already (k mod s repeats)
        std::vector<u64> reps = out;
        out.clear();
        for (u64 k0 : reps)
            for (u64 k = k0; k < W; k += s) out.push_back(k);
        std::sort(out.begin(), out.end());
        return out;
    }
    u64 ndx = Dsa.x, ndy = c.F.neg(Dsa.y);
    std::vector<PointJ> giants(imax);
    giants[0] = {ndx, ndy, c.F.one()};  // -(1*s)G
    for (u64 i = 1; i < imax; ++i) giants[i] = pt_add_affine(c, giants[i - 1], ndx, ndy);
    auto gaffine = batch_affine(c, giants);
    for (u64 i = 0; i < imax; ++i) {
        if (gaffine[i].inf) {
            // -( (i+1) s ) G = O => Q0 + jG = O cases already found via babies
            continue;
        }
        map.for_each(gaffine[i].x, [&](u32 j) {
            u64 k = (i + 1) * s + j;
            if (k < W) verify(k);
        });
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace detail

inline CurveFp quadratic_twist(const CurveFp& c, u64 d_plain) {
    const Mont& F = c.F;
    u64 d = F.to(d_plain);
    CurveFp t;
    t.F = c.F;
    u64 d2 = F.sqr(d);
    t.A = F.mul(c.A, d2);
    t.B = F.mul(c.B, F.mul(d2, d));
    t.two_torsion = c.two_torsion;
    return t;
}

// #E(F_l); deterministic given the rng seed.
inline u64 curve_order(const CurveFp& c, Rng& rng) {
    u64 l = c.l();
    if (l < 10000) return curve_order_exhaustive(c);
    u64 s4 = iroot_u64(4 * l, 2);  // floor(2 sqrt l)
    u64 lo = l + 1 - s4, hi = l + 1 + s4;
    int tt = two_torsion_order(c);
    u64 M0 = (u64)tt;
    // N = 0 mod M0; both the curve and its twist have the same 2-torsion order
    u64 L0 = lo + (M0 - lo % M0) % M0;
    u64 W = (hi - L0) / M0 + 1;
    u64 d = 2;
    while (jacobi_u64(d, l) != -1) ++d;
    CurveFp tw = quadratic_twist(c, d);
    std::vector<u64> cands;
    bool have = false;
    for (int attempt = 0; attempt < 80; ++attempt) {
        bool use_twist = attempt & 1;
        const CurveFp& cur = use_twist ? tw : c;
        AffinePt p = random_point(cur, rng);
        auto ks = detail::annihilators(cur, p.x, p.y, L0, M0, W);
        std::vector<u64> orders;
        orders.reserve(ks.size());
        for (u64 k : ks) {
            u64 N = L0 + k * M0;
            orders.push_back(use_twist ? 2 * l + 2 - N : N);
        }
        std::sort(orders.begin(), orders.end());
        if (!have) {
            cands = orders;
            have = true;
        } else {
            std::vector<u64> merged;
            std::set_intersection(cands.begin(), cands.end(), orders.begin(), orders.end(),
                                  std::back_inserter(merged));
            cands = merged;
        }
        assert(!cands.empty() && "curve_order: candidate set emptied (arithmetic bug)");
        if (cands.size() == 1) return cands[0];
    }
    assert(false && "curve_order: ambiguity not resolved");
    return cands.empty() ? 0 : cands[0];
}

inline i64 trace(const CurveFp& c, Rng& rng) { return (i64)(c.l() + 1) - (i64)curve_order(c, rng); }

inline i64 trace_small(const CurveSmall& c) { return (i64)(c.l + 1) - (i64)curve_order_small(c); }

// Hasse-window trace candidates a = r (mod M) with l+1-a = 0 (mod tt).
inline std::vector<i64> trace_candidates(u64 l, int tt, i64 r, u64 M) {
    std::vector<i64> out;
    i64 s4 = (i64)iroot_u64(4 * l, 2);
    // merge a = r (mod M) and a = l+1 (mod tt)
    u64 m2 = (u64)tt;
    u64 g = gcd_u64(M, m2);
    i64 r2 = (i64)((l + 1) % m2);
    i64 rr = ((r % (i64)M) + (i64)M) % (i64)M;
    if (((rr - r2) % (i64)g + (i64)g) % (i64)g != 0) return out;
    u64 lcm = M / g * m2;
    // find x = rr mod M, x = r2 mod m2, 0 <= x < lcm
    i64 x = -1;
    for (u64 t = rr; t < lcm; t += M) {
        if ((i64)(t % m2) == r2) {
            x = (i64)t;
            break;
        }
    }
    if (x < 0) return out;
    i64 start = x - ((x + s4) / (i64)lcm + 1) * (i64)lcm;
    for (i64 a = start; a <= s4; a += (i64)lcm) {
        if (a >= -s4) out.push_back(a);
    }
    return out;
}

// Exact decision: is trace(c) one of `candidates`?  Returns the trace when it
// is.  With use_fast_filter, a random point first discards candidate orders
// (sound: the true order kills every point); the final decision is exact, so
// toggling the filter never changes the result.
inline std::optional<i64> trace_if_candidate(const CurveFp& c, std::span<const i64> candidates,
                                             bool use_fast_filter, Rng& rng) {
    if (candidates.empty()) return std::nullopt;
    if (use_fast_filter && c.l() >= 10000) {
        AffinePt p = random_point(c, rng);
        bool any = false;
        for (i64 a : candidates) {
            u64 N = (u64)((i64)c.l() + 1 - a);
            if (pt_mul_affine(c, p.x, p.y, N).inf()) {
                any = true;
                break;
            }
        }
        if (!any) return std::nullopt;
    }
    i64 a = trace(c, rng);
    for (i64 cand : candidates)
        if (cand == a) return a;
    return std::nullopt;
}

// Sound rejection test: false means #C(F_l) != N for certain.
inline bool order_kills_random_point(const CurveFp& c, u64 N, int trials, Rng& rng) {
    for (int t = 0; t < trials; ++t) {
        AffinePt p = random_point(c, rng);
        if (!pt_mul_affine(c, p.x, p.y, N).inf()) return false;
    }
    return true;
}

}  // namespace ppg
