// High-precision reals for the bound evaluators: a thin RAII wrapper over
// MPFR at 256 bits (~77 decimal digits).  Transcendental evaluations carry a
// one-sided slack factor of (1 +- 1e-12) applied in the safe direction at the
// comparison sites, never silently inside arithmetic.
#pragma once

#include <mpfr.h>

#include <cmath>
#include <string>

#include "ppgaps/arith.hpp"

namespace ppg {

class Real {
  public:
    static constexpr mpfr_prec_t kPrec = 256;

    Real() { mpfr_init2(v_, kPrec); mpfr_set_zero(v_, 1); }
    Real(double x) : Real() { mpfr_set_d(v_, x, MPFR_RNDN); }
    Real(long x) : Real() { mpfr_set_si(v_, x, MPFR_RNDN); }
    Real(int x) : Real() { mpfr_set_si(v_, x, MPFR_RNDN); }
    Real(u64 x) : Real() { mpfr_set_uj(v_, x, MPFR_RNDN); }
    Real(const BigInt& x) : Real() { mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN); }
    explicit Real(const std::string& s) : Real() { mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN); }

    Real(const Real& o) : Real() { mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept { mpfr_init2(v_, kPrec); mpfr_swap(v_, o.v_); }
    Real& operator=(Real o) { mpfr_swap(v_, o.v_); return *this; }
    ~Real() { mpfr_clear(v_); }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    static Real pi() { Real r; mpfr_const_pi(r.v_, MPFR_RNDN); return r; }

    friend Real operator+(const Real& a, const Real& b) { Real r; mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    friend Real operator-(const Real& a, const Real& b) { Real r; mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    friend Real operator*(const Real& a, const Real& b) { Real r; mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    friend Real operator/(const Real& a, const Real& b) { Real r; mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    Real operator-() const { Real r; mpfr_neg(r.v_, v_, MPFR_RNDN); return r; }
    Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

    friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) == 0; }

  private:
    mpfr_t v_;
};

inline Real rlog(const Real& x) { Real r; mpfr_log(r.raw(), x.raw(), MPFR_RNDN); return r; }
inline Real rexp(const Real& x) { Real r; mpfr_exp(r.raw(), x.raw(), MPFR_RNDN); return r; }
inline Real racos(const Real& x) { Real r; mpfr_acos(r.raw(), x.raw(), MPFR_RNDN); return r; }
inline Real rsqrt(const Real& x) { Real r; mpfr_sqrt(r.raw(), x.raw(), MPFR_RNDN); return r; }
inline Real rabs(const Real& x) { Real r; mpfr_abs(r.raw(), x.raw(), MPFR_RNDN); return r; }
inline Real rfloor(const Real& x) { Real r; mpfr_floor(r.raw(), x.raw()); return r; }
inline Real rpow(const Real& x, const Real& e) { Real r; mpfr_pow(r.raw(), x.raw(), e.raw(), MPFR_RNDN); return r; }
inline Real rmax(const Real& a, const Real& b) { return a < b ? b : a; }
inline Real rmin(const Real& a, const Real& b) { return a < b ? a : b; }

// One-sided slack: nudge a computed value in the direction that can only make
// a downstream bound weaker (valid), compensating for the 2^-256 rounding.
inline Real slack_up(const Real& x) { return x * Real("1.000000000001"); }
inline Real slack_down(const Real& x) { return x * Real("0.999999999999"); }

inline BigInt real_floor_int(const Real& x) {
    Real f = rfloor(x);
    BigInt z;
    mpfr_get_z(z.get_mpz_t(), f.raw(), MPFR_RNDZ);
    return z;
}

// Smallest 3-significant-figure value >= x (x > 0), e.g. 4.1063e8 -> 4.11e8.
inline Real roundup_3sf(const Real& x) {
    Real l10 = rlog(x) / rlog(Real(10));
    long d = (long)std::floor(l10.to_double());
    Real scale = rpow(Real(10), Real((long)(d - 2)));
    Real m = x / scale;
    if (m < Real(100)) {
        scale = scale / Real(10);
        m = x / scale;
    } else if (m >= Real(1000)) {
        scale = scale * Real(10);
        m = x / scale;
    }
    Real c;
    mpfr_ceil(c.raw(), m.raw());
    return c * scale;
}

}  // namespace ppg
