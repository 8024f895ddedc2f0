// Arithmetic in quadratic fields Q(sqrt d): ring integers on the {1, theta}
// basis, class numbers by reduced-form counts, fundamental units by continued
// fractions, prime-over-2 generators, and the descent coefficient sets S used
// by the refined sieve.
#pragma once

#include <cstdlib>
#include <optional>
#include <tuple>
#include <vector>

#include "ppgaps/arith.hpp"
#include "ppgaps/real.hpp"

namespace ppg {

// theta = sqrt(d) when d != 1 (mod 4), theta = (1+sqrt(d))/2 when d = 1 (mod 4).
struct QuadOrder {
    BigInt d;   // squarefree, != 0, 1
    bool half;  // d = 1 mod 4

    static QuadOrder make(const BigInt& d) {
        BigInt r = d % 4;
        if (r < 0) r += 4;
        return QuadOrder{d, r == 1};
    }
    bool imaginary() const { return d < 0; }
    BigInt discriminant() const { return half ? d : 4 * d; }
    bool operator==(const QuadOrder& o) const { return d == o.d; }
};

// x + y*theta in a fixed order.
struct QuadInt {
    QuadOrder O;
    BigInt x, y;

    static QuadInt make(const QuadOrder& O, const BigInt& x, const BigInt& y) { return {O, x, y}; }

    // (u + v sqrt d)/2 with u = v (mod 2); requires half basis when v is odd.
    static QuadInt from_halves(const QuadOrder& O, const BigInt& u, const BigInt& v) {
        if (O.half) {
            if ((u - v) % 2 != 0) throw domain_error("QuadInt: u,v parity");
            return {O, (u - v) / 2, v};
        }
        if (u % 2 != 0 || v % 2 != 0) throw domain_error("QuadInt: non-integral element");
        return {O, u / 2, v / 2};
    }

    QuadInt operator+(const QuadInt& o) const { return {O, x + o.x, y + o.y}; }
    QuadInt operator-(const QuadInt& o) const { return {O, x - o.x, y - o.y}; }
    QuadInt operator-() const { return {O, -x, -y}; }

    QuadInt operator*(const QuadInt& o) const {
        if (O.half) {
            BigInt m = (O.d - 1) / 4;
            return {O, x * o.x + y * o.y * m, x * o.y + y * o.x + y * o.y};
        }
        return {O, x * o.x + O.d * y * o.y, x * o.y + y * o.x};
    }

    QuadInt conj() const {
        if (O.half) return {O, x + y, -y};
        return {O, x, -y};
    }

    BigInt norm() const {
        if (O.half) return x * x + x * y + y * y * (1 - O.d) / 4;
        return x * x - O.d * y * y;
    }

    BigInt trace_rat() const { return O.half ? BigInt(2 * x + y) : BigInt(2 * x); }

    QuadInt pow(u64 e) const {
        QuadInt r{O, 1, 0}, b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    // coordinates as (u + v sqrt d)/2
    std::pair<BigInt, BigInt> halves() const {
        if (O.half) return {2 * x + y, y};
        return {2 * x, 2 * y};
    }

    bool operator==(const QuadInt& o) const { return x == o.x && y == o.y; }

    // real embedding with sqrt(d) > 0 (real orders) resp. the (x, y) pair
    Real embed() const {
        Real sd = rsqrt(Real(O.d));
        Real th = O.half ? (Real(1) + sd) / Real(2) : sd;
        return Real(x) + Real(y) * th;
    }
};

// num / 2^den2; the only denominators descent ever produces are 2-powers.
struct QuadRat {
    QuadInt num;
    unsigned den2 = 0;

    void normalize() {
        while (den2 > 0 && num.x % 2 == 0 && num.y % 2 == 0) {
            num.x /= 2;
            num.y /= 2;
            --den2;
        }
    }
    QuadRat operator*(const QuadRat& o) const {
        QuadRat r{num * o.num, den2 + o.den2};
        r.normalize();
        return r;
    }
    QuadRat conj() const { return {num.conj(), den2}; }
    // norm as (value, 2-exponent): norm = value / 2^(2*den2)
    std::pair<BigInt, unsigned> norm2() const { return {num.norm(), 2 * den2}; }
    bool operator==(const QuadRat& o) const { return num == o.num && den2 == o.den2; }

    // residue mod l, given s with s^2 = d (mod l)
    u64 residue(u64 l, u64 s) const {
        u64 th = num.O.half ? mulmod(addmod(1, s, l), invmod(2, l), l) : s;
        u64 v = addmod(big_residue(num.x, l), mulmod(big_residue(num.y, l), th, l), l);
        return mulmod(v, powmod(invmod(2, l), den2, l), l);
    }
};

// --- class numbers ----------------------------------------------------------

// Class number of Q(sqrt(-q)), q > 0 squarefree, by counting reduced forms of
// the field discriminant.
inline int class_number_imaginary(const BigInt& q) {
    if (q <= 0) throw domain_error("class_number_imaginary: q must be positive");
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), q.get_mpz_t());
    if (r * r == q && q != 1) throw domain_error("class_number_imaginary: q not squarefree");
    for (BigInt p = 2; p * p * p <= q && p < 4000; ++p)
        if (q % (p * p) == 0) throw domain_error("class_number_imaginary: q not squarefree");
    BigInt D = (-q % 4 == -3 || -q % 4 == 1) ? BigInt(-q) : BigInt(-4 * q);
    // reduced: |b| <= a <= c, b = D (mod 2), b >= 0 when |b| = a or a = c
    int h = 0;
    for (BigInt a = 1; 3 * a * a <= -D; ++a) {
        for (BigInt b = -a + 1; b <= a; ++b) {
            if ((b - D) % 2 != 0) continue;
            BigInt num = b * b - D;
            if (num % (4 * a) != 0) continue;
            BigInt c = num / (4 * a);
            if (c < a) continue;
            if (a == c && b < 0) continue;
            ++h;
        }
    }
    return h;
}

// --- fundamental units -------------------------------------------------------

namespace detail {
// Minimal (p,q), p,q>0, with p^2 - d q^2 = +-1, via the continued fraction of
// sqrt(d); d > 1 not a square.
inline std::pair<BigInt, BigInt> pell_unit(const BigInt& d) {
    BigInt a0;
    mpz_sqrt(a0.get_mpz_t(), d.get_mpz_t());
    BigInt m = 0, den = 1, a = a0;
    BigInt pm1 = 1, p = a0, qm1 = 0, q = 1;
    for (;;) {
        m = den * a - m;
        den = (d - m * m) / den;
        a = (a0 + m) / den;
        if (p * p - d * q * q == 1 || p * p - d * q * q == -1) return {p, q};
        BigInt pn = a * p + pm1, qn = a * q + qm1;
        pm1 = p;
        p = pn;
        qm1 = q;
        q = qn;
    }
}
}  // namespace detail

// Fundamental unit of the ring of integers of Q(sqrt q), q >= 2 squarefree,
// normalized > 1 in the embedding with sqrt(q) > 0.
inline QuadInt fundamental_unit(const BigInt& q) {
    if (q < 2) throw domain_error("fundamental_unit: q >= 2 required");
    QuadOrder O = QuadOrder::make(q);
    if (O.half) {
        // minimal v >= 1 with q v^2 -+ 4 a square gives (u+v sqrt q)/2
        for (BigInt v = 1;; ++v) {
            for (int s : {-1, +1}) {
                BigInt t = q * v * v + s * 4;
                if (t <= 0) continue;
                BigInt u;
                mpz_sqrt(u.get_mpz_t(), t.get_mpz_t());
                if (u * u == t) return QuadInt::from_halves(O, u, v);
            }
            if (v > 20000000) throw domain_error("fundamental_unit: search cap exceeded");
        }
    }
    auto [p, qq] = detail::pell_unit(q);
    return QuadInt::make(O, p, qq);
}

// --- prime over 2 ------------------------------------------------------------

// An element of norm +-2^e, not divisible by 2, as (u + v sqrt d)/2 halves;
// nullopt when none exists (the ideal power is not principal).
inline std::optional<std::pair<BigInt, BigInt>> primitive_norm_two_power(const QuadOrder& O, unsigned e) {
    BigInt target = big_pow(BigInt(2), e + 2);  // |u^2 - d v^2| = 2^(e+2)
    if (O.imaginary()) {
        BigInt q = -O.d;
        for (BigInt v = 1; q * v * v <= target; ++v) {
            BigInt t = target - q * v * v;
            BigInt u;
            mpz_sqrt(u.get_mpz_t(), t.get_mpz_t());
            if (u * u != t) continue;
            if (O.half) {
                if ((u - v) % 2 != 0) continue;
                if (u % 2 == 0 && v % 2 == 0) continue;  // divisible by 2
            } else {
                if (u % 2 != 0 || v % 2 != 0) continue;
                if ((u / 2) % 2 == 0 && (v / 2) % 2 == 0) continue;
            }
            return std::make_pair(u, v);
        }
        return std::nullopt;
    }
    // real: bound the fundamental-solution search with the unit size
    QuadInt eps = fundamental_unit(O.d);
    Real cap_r = rsqrt(Real(target) * eps.embed() / Real(O.d)) * Real(4) + Real(16);
    BigInt cap = real_floor_int(cap_r);
    for (BigInt v = 1; v <= cap; ++v) {
        for (int s : {+1, -1}) {
            BigInt t = O.d * v * v + s * target;
            if (t <= 0) continue;
            BigInt u;
            mpz_sqrt(u.get_mpz_t(), t.get_mpz_t());
            if (u * u != t) continue;
            if (O.half) {
                if ((u - v) % 2 != 0) continue;
                if (u % 2 == 0 && v % 2 == 0) continue;
            } else {
                if (u % 2 != 0 || v % 2 != 0) continue;
                if ((u / 2) % 2 == 0 && (v / 2) % 2 == 0) continue;
            }
            return std::make_pair(u, v);
        }
    }
    return std::nullopt;
}

// Generator alpha_q of P^{h_q} for M = Q(sqrt(-q)), 2 split (-q = 1 mod 8),
// with the paper's branch convention (u > 0, v = 1).
inline QuadInt prime_over_two_generator(const BigInt& q) {
    BigInt r = (-q) % 8;
    if (r < 0) r += 8;
    if (r != 1) throw domain_error("prime_over_two_generator: 2 does not split in Q(sqrt(-q))");
    QuadOrder O = QuadOrder::make(-q);
    int h = class_number_imaginary(q);
    BigInt t = big_pow(BigInt(2), h + 2) - q;
    BigInt u;
    mpz_sqrt(u.get_mpz_t(), t.get_mpz_t());
    if (t <= 0 || u * u != t || u % 2 != 1)
        throw domain_error("prime_over_two_generator: class group not generated by [P]");
    return QuadInt::from_halves(O, u, BigInt(1));
}

// --- cyclic-generated-by-[P] check -------------------------------------------

inline int class_number(const QuadOrder& O);

inline bool class_group_generated_by_prime_over_two(const QuadOrder& O, int h) {
    if (h == 1) return true;
    BigInt dm8 = O.d % 8;
    if (dm8 < 0) dm8 += 8;
    if (O.half && dm8 == 5) return false;  // 2 inert
    if (!O.half) {
        // 2 ramified: [P]^2 = 1
        if (h > 2) return false;
    }
    for (int p : {2, 3, 5, 7}) {
        if (h % p != 0) continue;
        if (primitive_norm_two_power(O, (unsigned)(h / p))) return false;  // ord([P]) < h
    }
    return true;
}

// --- real class number (narrow cycle count / unit norm) -----------------------

inline int class_number_real(const BigInt& q) {
    if (q < 2) throw domain_error("class_number_real: q >= 2 required");
    QuadOrder O = QuadOrder::make(q);
    long D = (long)O.discriminant().get_si();
    long sd = (long)isqrt_big(O.discriminant()).get_si();  // floor(sqrt D), D non-square
    // reduced indefinite (a,b,c): 0 < b < sqrt D, sqrt(D)-b < 2|a| < sqrt(D)+b
    struct Form {
        long a, b, c;
        bool operator==(const Form& o) const { return a == o.a && b == o.b && c == o.c; }
    };
    auto reduced = [&](long a, long b) {
        long t = 2 * std::labs(a);
        return (t - b) * (t - b) < D && (t + b) * (t + b) > D;
    };
    std::vector<Form> forms;
    for (long b = 1; b * b < D; ++b) {
        if ((D - b * b) % 4 != 0) continue;
        long prod = (D - b * b) / 4;  // |a||c|, opposite signs
        for (long a = 1; a * a <= prod; ++a) {
            if (prod % a != 0) continue;
            long c = prod / a;
            for (auto [aa, cc] : {std::pair<long, long>{a, -c}, {-a, c}, {c, -a}, {-c, a}}) {
                if (reduced(aa, b)) forms.push_back({aa, b, cc});
            }
        }
    }
    std::sort(forms.begin(), forms.end(),
              [](const Form& x, const Form& y) { return std::tie(x.a, x.b, x.c) < std::tie(y.a, y.b, y.c); });
    forms.erase(std::unique(forms.begin(), forms.end()), forms.end());
    auto rho = [&](const Form& f) {
        long m = 2 * std::labs(f.c);
        long r = ((-f.b) % m + m) % m;
        long bp = sd - (((sd - r) % m + m) % m);  // largest value <= sd in the class
        long cp = (bp * bp - D) / (4 * f.c);
        return Form{f.c, bp, cp};
    };
    auto find = [&](const Form& f) -> long {
        for (size_t i = 0; i < forms.size(); ++i)
            if (forms[i] == f) return (long)i;
        return -1;
    };
    std::vector<char> used(forms.size(), 0);
    int cycles = 0;
    for (size_t i = 0; i < forms.size(); ++i) {
        if (used[i]) continue;
        ++cycles;
        Form f = forms[i];
        for (;;) {
            long j = find(f);
            assert(j >= 0 && "rho left the reduced set");
            if (used[j]) break;
            used[j] = 1;
            f = rho(f);
        }
    }
    QuadInt eps = fundamental_unit(q);
    return eps.norm() == -1 ? cycles : cycles / 2;
}

inline int class_number(const QuadOrder& O) {
    return O.imaginary() ? class_number_imaginary(-O.d) : class_number_real(O.d);
}

// --- descent coefficient sets (S) ---------------------------------------------

namespace detail {
// Generator of P^e (e may be negative, h | e) as a QuadRat, from a generator
// g of P^h with |norm g| = 2^h.
inline QuadRat ideal_power_generator(const QuadInt& g, int h, long e) {
    if (e % h != 0) throw domain_error("ideal_power_generator: h does not divide e");
    long k = e / h;
    if (k >= 0) return QuadRat{g.pow((u64)k), 0};
    // 1/g = conj(g)/norm(g), norm(g) = +-2^h
    QuadInt c = g.conj();
    bool neg = g.norm() < 0;
    QuadInt num = c.pow((u64)(-k));
    if (neg && ((-k) & 1)) num = -num;
    QuadRat r{num, (unsigned)(h * (-k))};
    r.normalize();
    return r;
}

inline QuadRat qr_scale2(const QuadRat& r) {
    if (r.den2 > 0) return {r.num, r.den2 - 1};
    return {QuadInt::make(r.num.O, 2 * r.num.x, 2 * r.num.y), 0};
}

inline QuadRat canonical_sign(QuadRat r) {
    r.normalize();
    if (r.num.x < 0 || (r.num.x == 0 && r.num.y < 0)) {
        r.num = -r.num;
    }
    return r;
}
}  // namespace detail

// The set S of Lemma-prescribed multipliers gamma with x + q^k phi = gamma
// alpha^n.  kappa = 5: { eps^j beta_i }, P^{-ni} principal; kappa = 1:
// { 2 eps^j beta_i } and conjugates, beta_i generating P^{n(1-i)-2}.
// Throws when the class group is not cyclic generated by [P].
inline std::vector<QuadRat> gamma_set(const QuadOrder& O, int kappa, int delta, u64 n) {
    int h = class_number(O);
    if (!class_group_generated_by_prime_over_two(O, h))
        throw domain_error("gamma_set: class group not cyclic generated by [P]");
    QuadInt g{O, 1, 0};
    bool need_p = false;
    if (kappa == 5) {
        for (int i = 1; i < h; ++i)
            if ((n * (u64)i) % (u64)h == 0) need_p = true;
    } else {
        need_p = true;
    }
    if (h > 1 || need_p) {
        auto uv = primitive_norm_two_power(O, (unsigned)h);
        if (!uv) throw domain_error("gamma_set: P^h has no generator (not principal?)");
        g = QuadInt::from_halves(O, uv->first, uv->second);
    }
    bool real = !O.imaginary();
    QuadInt eps{O, 1, 0}, eps_inv{O, 1, 0};
    if (real && (kappa == 5 || delta == 1)) {
        eps = fundamental_unit(O.d);
        eps_inv = eps.conj();
        if (eps.norm() == -1) eps_inv = -eps_inv;  // eps * eps_inv = 1
    }
    std::vector<QuadRat> base;
    if (kappa == 5) {
        for (int i = 0; i < h; ++i) {
            if ((n * (u64)i) % (u64)h != 0) continue;
            long e = -(long)(n * (u64)i);
            base.push_back(detail::ideal_power_generator(g, h, e));
            if (i != 0) base.push_back(detail::ideal_power_generator(g.conj(), h, e));
        }
    } else {
        for (int i = 0; i < h; ++i) {
            long e = (long)n * (1 - i) - 2;
            if (((e % h) + h) % h != 0) continue;
            QuadRat b = detail::ideal_power_generator(g, h, e);
            base.push_back(detail::qr_scale2(b));
            base.push_back(detail::qr_scale2(b.conj()));
        }
    }
    std::vector<QuadRat> out;
    auto push = [&](const QuadRat& r) {
        QuadRat c = detail::canonical_sign(r);
        for (auto& o : out)
            if (o == c) return;
        out.push_back(c);
    };
    bool units = real && (kappa == 5 || delta == 1);
    for (auto& b : base) {
        if (!units) {
            push(b);
            continue;
        }
        QuadRat cur = b;
        push(cur);
        QuadRat up = b, dn = b;
        for (u64 j = 1; j <= (n - 1) / 2; ++j) {
            up = up * QuadRat{eps, 0};
            dn = dn * QuadRat{eps_inv, 0};
            push(up);
            push(dn);
        }
    }
    return out;
}

}  // namespace ppg
