// Low-level machine-word arithmetic shared by every module: 64-bit modular
// ops, a Montgomery multiplication context, a seedable PRNG, and a small
// deterministic parallel runner.
#pragma once

#include <atomic>
#include <cassert>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace ppg {

using u8 = std::uint8_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return u64((u128)a * b % m); }

inline u64 addmod(u64 a, u64 b, u64 m) {
    u64 s = a + b;
    if (s < a || s >= m) s -= m;
    return s;
}

inline u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + m - b; }

inline u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

inline u64 gcd_u64(u64 a, u64 b) {
    while (b) {
        u64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Inverse of a mod m for gcd(a,m)=1, extended Euclid.
inline u64 invmod(u64 a, u64 m) {
    i64 t = 0, nt = 1;
    i64 r = (i64)m, nr = (i64)(a % m);
    while (nr != 0) {
        i64 q = r / nr;
        i64 tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    assert(r == 1 && "invmod: not invertible");
    if (t < 0) t += (i64)m;
    return (u64)t;
}

// Jacobi symbol (a/n) for odd n>0, binary algorithm.
inline int jacobi_u64(u64 a, u64 n) {
    assert(n & 1);
    a %= n;
    int t = 1;
    while (a) {
        int z = __builtin_ctzll(a);
        a >>= z;
        if ((z & 1) && (n % 8 == 3 || n % 8 == 5)) t = -t;
        if ((a & n & 2) != 0) t = -t;  // both = 3 mod 4
        u64 tmp = a;
        a = n % a;
        n = tmp;
    }
    return n == 1 ? t : 0;
}

inline int jacobi_i64(i64 a, u64 n) {
    if (a >= 0) return jacobi_u64((u64)a, n);
    u64 b = (u64)(-(a % (i64)n));
    b = b % n;
    int s = jacobi_u64(n - b == n ? 0 : n - b, n);
    return s;
}

// Montgomery arithmetic mod an odd n < 2^62.  Values are kept in Montgomery
// form (x*2^64 mod n).
struct Mont {
    u64 n = 0;
    u64 ninv = 0;  // -n^{-1} mod 2^64
    u64 r1 = 0;    // 1 in Montgomery form
    u64 r2 = 0;    // 2^128 mod n, for conversions

    Mont() = default;
    explicit Mont(u64 mod) { init(mod); }

    void init(u64 mod) {
        assert((mod & 1) && mod > 1 && mod < (u64(1) << 62));
        n = mod;
        u64 inv = mod;  // Newton iteration for inverse mod 2^64
        for (int i = 0; i < 5; ++i) inv *= 2 - mod * inv;
        ninv = ~inv + 1;  // = -inv
        r1 = (~u64(0)) % mod + 1;
        if (r1 == mod) r1 = 0;
        u128 r = (u128)r1 * r1 % mod;  // 2^128 mod n
        r2 = (u64)r;
    }

    u64 redc(u128 t) const {
        u64 m = (u64)t * ninv;
        u128 s = t + (u128)m * n;
        u64 r = (u64)(s >> 64);
        return r >= n ? r - n : r;
    }

    u64 to(u64 x) const { return redc((u128)(x % n) * r2); }
    u64 from(u64 x) const { return redc((u128)x); }
    u64 mul(u64 a, u64 b) const { return redc((u128)a * b); }
    u64 sqr(u64 a) const { return redc((u128)a * a); }
    u64 add(u64 a, u64 b) const { return addmod(a, b, n); }
    u64 sub(u64 a, u64 b) const { return submod(a, b, n); }
    u64 neg(u64 a) const { return a ? n - a : 0; }
    u64 one() const { return r1; }

    u64 pow(u64 a, u64 e) const {
        u64 r = r1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = sqr(a);
            e >>= 1;
        }
        return r;
    }
    // n must be prime.
    u64 inv(u64 a) const { return pow(a, n - 2); }
};

// splitmix64, used to derive seeds and as a cheap hash.
inline u64 splitmix64(u64 x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// xoshiro256**; deterministic given the seed, independent of thread schedule
// when seeded per work item.
struct Rng {
    u64 s[4];

    explicit Rng(u64 seed = 0x5eed) {
        for (int i = 0; i < 4; ++i) s[i] = seed = splitmix64(seed);
    }

    static u64 rotl(u64 x, int k) { return (x << k) | (x >> (64 - k)); }

    u64 next() {
        u64 result = rotl(s[1] * 5, 7) * 9;
        u64 t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = rotl(s[3], 45);
        return result;
    }

    // uniform in [0, bound)
    u64 below(u64 bound) {
        u128 m = (u128)next() * bound;
        return (u64)(m >> 64);
    }
};

// Derive a per-task seed from a global seed and tags, so results do not
// depend on which thread runs the task.
inline u64 derive_seed(u64 seed, u64 a, u64 b = 0, u64 c = 0) {
    u64 h = splitmix64(seed ^ 0x70706761ULL);
    h = splitmix64(h ^ a);
    h = splitmix64(h ^ b);
    h = splitmix64(h ^ c);
    return h;
}

// Open-addressing map u64 -> u32 for baby-step tables.  Keys must not be the
// reserved EMPTY value (callers hash first).
struct BabyMap {
    std::vector<u64> keys;
    std::vector<u32> vals;
    u64 mask = 0;
    static constexpr u64 EMPTY = ~u64(0);

    void reset(size_t n) {
        size_t cap = 16;
        while (cap < 2 * n) cap <<= 1;
        mask = cap - 1;
        keys.assign(cap, EMPTY);
        vals.assign(cap, 0);
    }
    void put(u64 k, u32 v) {
        size_t i = splitmix64(k) & mask;
        while (keys[i] != EMPTY) {
            i = (i + 1) & mask;
        }
        keys[i] = k;
        vals[i] = v;
    }
    // Calls f(value) for every entry with this key.
    template <class F>
    void for_each(u64 k, F&& f) const {
        size_t i = splitmix64(k) & mask;
        while (keys[i] != EMPTY) {
            if (keys[i] == k) f(vals[i]);
            i = (i + 1) & mask;
        }
    }
};

// Runs f(i) for i in [0,count) on `threads` workers.  Tasks must be
// independent; callers that fold results do so by index afterwards, which
// keeps outputs identical whatever the thread count.
inline void parallel_for(size_t count, unsigned threads, const std::function<void(size_t)>& f) {
    if (threads <= 1 || count <= 1) {
        for (size_t i = 0; i < count; ++i) f(i);
        return;
    }
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= count) return;
            f(i);
        }
    };
    std::vector<std::thread> pool;
    unsigned k = std::min<size_t>(threads, count);
    pool.reserve(k);
    for (unsigned t = 0; t < k; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

inline unsigned default_threads() {
    unsigned h = std::thread::hardware_concurrency();
    return h ? h : 1;
}

}  // namespace ppg
