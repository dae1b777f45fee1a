#include "xijensen/real.hpp"

#include <algorithm>
#include <cassert>
#include <climits>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <vector>

namespace xij {

namespace {

long pick_prec(const Real& a, const Real& b, long prec) {
    if (prec > 0)
        return prec;
    return std::max(a.prec(), b.prec());
}

long pick_prec(const Real& a, long prec) { return prec > 0 ? prec : a.prec(); }

// Adds one ulp of |mid| to rad when the rounding ternary was inexact.
void absorb_rounding(mpfr_t rad, const mpfr_t mid, int ternary) {
    if (ternary == 0)
        return;
    if (mpfr_zero_p(mid)) {
        // A nonzero exact result cannot round to zero in MPFR's extended
        // exponent range; keep a hard failure rather than a silent one.
        throw Error("internal: inexact rounding produced zero midpoint");
    }
    mpfr_exp_t e = mpfr_get_exp(mid);
    long p = mpfr_get_prec(mid);
    mpfr_t ulp;
    mpfr_init2(ulp, 16);
    mpfr_set_ui_2exp(ulp, 1, e - p, MPFR_RNDU);
    mpfr_add(rad, rad, ulp, MPFR_RNDU);
    mpfr_clear(ulp);
}

struct ScratchReal {
    mpfr_t v;
    explicit ScratchReal(long prec) { mpfr_init2(v, prec); }
    ~ScratchReal() { mpfr_clear(v); }
    ScratchReal(const ScratchReal&) = delete;
    ScratchReal& operator=(const ScratchReal&) = delete;
};

} // namespace

void Real::init_(long prec) {
    if (prec < 2)
        prec = 2;
    mpfr_init2(mid_, prec);
    mpfr_init2(rad_, kRadPrec);
    mpfr_set_zero(mid_, 1);
    mpfr_set_zero(rad_, 1);
}

Real::Real(const Real& o) {
    mpfr_init2(mid_, mpfr_get_prec(o.mid_));
    mpfr_init2(rad_, kRadPrec);
    mpfr_set(mid_, o.mid_, MPFR_RNDN);
    mpfr_set(rad_, o.rad_, MPFR_RNDU);
}

Real::Real(Real&& o) noexcept {
    mpfr_init2(mid_, 2);
    mpfr_init2(rad_, kRadPrec);
    mpfr_swap(mid_, o.mid_);
    mpfr_swap(rad_, o.rad_);
}

Real& Real::operator=(const Real& o) {
    if (this == &o)
        return *this;
    if (mpfr_get_prec(mid_) != mpfr_get_prec(o.mid_))
        mpfr_set_prec(mid_, mpfr_get_prec(o.mid_));
    mpfr_set(mid_, o.mid_, MPFR_RNDN);
    mpfr_set(rad_, o.rad_, MPFR_RNDU);
    return *this;
}

Real& Real::operator=(Real&& o) noexcept {
    mpfr_swap(mid_, o.mid_);
    mpfr_swap(rad_, o.rad_);
    return *this;
}

Real::~Real() {
    mpfr_clear(mid_);
    mpfr_clear(rad_);
}

Real Real::exact(long v, long prec) {
    Real r(prec);
    int t = mpfr_set_si(r.mid_, v, MPFR_RNDN);
    absorb_rounding(r.rad_, r.mid_, t);
    return r;
}

Real Real::exact(unsigned long v, long prec) {
    Real r(prec);
    int t = mpfr_set_ui(r.mid_, v, MPFR_RNDN);
    absorb_rounding(r.rad_, r.mid_, t);
    return r;
}

Real Real::exact(const mpz_class& v, long prec) {
    Real r(prec);
    int t = mpfr_set_z(r.mid_, v.get_mpz_t(), MPFR_RNDN);
    absorb_rounding(r.rad_, r.mid_, t);
    return r;
}

Real Real::of_rational(const mpq_class& v, long prec) {
    Real r(prec);
    int t = mpfr_set_q(r.mid_, v.get_mpq_t(), MPFR_RNDN);
    absorb_rounding(r.rad_, r.mid_, t);
    return r;
}

Real Real::from_double(double v, long prec) {
    Real r(prec);
    int t = mpfr_set_d(r.mid_, v, MPFR_RNDN);
    absorb_rounding(r.rad_, r.mid_, t);
    return r;
}

Real Real::parse(const std::string& midpoint, long prec) {
    Real r(prec);
    int t = mpfr_set_str(r.mid_, midpoint.c_str(), 10, MPFR_RNDN);
    if (t == -1 && mpfr_nan_p(r.mid_))
        throw UsageError("Real::parse: bad decimal string '" + midpoint + "'");
    mpfr_t lo, hi;
    mpfr_init2(lo, prec);
    mpfr_init2(hi, prec);
    mpfr_set_str(lo, midpoint.c_str(), 10, MPFR_RNDD);
    mpfr_set_str(hi, midpoint.c_str(), 10, MPFR_RNDU);
    mpfr_sub(hi, hi, lo, MPFR_RNDU);
    mpfr_add(r.rad_, r.rad_, hi, MPFR_RNDU);
    mpfr_clear(lo);
    mpfr_clear(hi);
    return r;
}

Real Real::parse(const std::string& midpoint, const std::string& radius,
                 long prec) {
    Real r = parse(midpoint, prec);
    mpfr_t rr;
    mpfr_init2(rr, kRadPrec);
    mpfr_set_str(rr, radius.c_str(), 10, MPFR_RNDU);
    if (mpfr_sgn(rr) < 0)
        throw UsageError("Real::parse: negative radius");
    mpfr_add(r.rad_, r.rad_, rr, MPFR_RNDU);
    mpfr_clear(rr);
    return r;
}

Real Real::nan(long prec) {
    Real r(prec);
    mpfr_set_nan(r.mid_);
    return r;
}

int Real::sign_certified() const {
    if (is_nan())
        return 0;
    int s = mpfr_sgn(mid_);
    if (s == 0)
        return 0;
    // |mid| > rad ?
    mpfr_t a;
    mpfr_init2(a, kRadPrec);
    mpfr_abs(a, mid_, MPFR_RNDD);
    int ok = mpfr_cmp(a, rad_) > 0;
    mpfr_clear(a);
    return ok ? s : 0;
}

bool Real::rel_radius_below(long bits) const {
    if (is_nan())
        return false;
    if (mpfr_zero_p(rad_))
        return true;
    mpfr_t a;
    mpfr_init2(a, kRadPrec);
    mpfr_abs(a, mid_, MPFR_RNDD);
    mpfr_mul_2si(a, a, -bits, MPFR_RNDD);
    bool ok = mpfr_cmp(rad_, a) <= 0;
    mpfr_clear(a);
    return ok;
}

bool Real::abs_radius_below(long e) const {
    if (is_nan())
        return false;
    if (mpfr_zero_p(rad_))
        return true;
    return mpfr_cmp_ui_2exp(rad_, 1, e) <= 0;
}

long Real::accurate_bits() const {
    if (is_nan())
        return 0;
    if (mpfr_zero_p(rad_))
        return LONG_MAX / 4;
    if (mpfr_zero_p(mid_))
        return 0;
    long d = static_cast<long>(mpfr_get_exp(mid_)) -
             static_cast<long>(mpfr_get_exp(rad_));
    return d > 0 ? d : 0;
}

void Real::get_lo(mpfr_t out) const { mpfr_sub(out, mid_, rad_, MPFR_RNDD); }

void Real::get_hi(mpfr_t out) const { mpfr_add(out, mid_, rad_, MPFR_RNDU); }

std::string Real::to_string(int digits) const {
    char* s = nullptr;
    if (mpfr_asprintf(&s, "%.*Rg", digits, mid_) < 0)
        return "<fmt-error>";
    std::string out(s);
    mpfr_free_str(s);
    if (!mpfr_zero_p(rad_)) {
        char* t = nullptr;
        if (mpfr_asprintf(&t, " +/- %.3Rg", rad_) >= 0) {
            out += t;
            mpfr_free_str(t);
        }
    }
    return out;
}

namespace {

std::string decimal_full(const mpfr_t v) {
    if (mpfr_nan_p(v))
        return "nan";
    if (mpfr_zero_p(v))
        return "0";
    long digits =
        static_cast<long>(std::ceil(static_cast<double>(mpfr_get_prec(v)) *
                                    0.3010299956639812)) +
        3;
    char* s = nullptr;
    if (mpfr_asprintf(&s, "%.*Re", static_cast<int>(digits), v) < 0)
        throw Error("internal: mpfr_asprintf failed");
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

} // namespace

std::string Real::midpoint_decimal() const { return decimal_full(mid_); }

std::string Real::radius_decimal() const { return decimal_full(rad_); }

Real Real::rounded(long prec) const {
    Real r(prec);
    int t = mpfr_set(r.mid_, mid_, MPFR_RNDN);
    mpfr_set(r.rad_, rad_, MPFR_RNDU);
    absorb_rounding(r.rad_, r.mid_, t);
    return r;
}

void Real::inflate(const Real& e) {
    mpfr_t a;
    mpfr_init2(a, kRadPrec);
    mpfr_abs(a, e.mid_, MPFR_RNDU);
    mpfr_add(a, a, e.rad_, MPFR_RNDU);
    mpfr_add(rad_, rad_, a, MPFR_RNDU);
    mpfr_clear(a);
}

void Real::inflate_2exp(long e) {
    mpfr_t a;
    mpfr_init2(a, 16);
    mpfr_set_ui_2exp(a, 1, e, MPFR_RNDU);
    mpfr_add(rad_, rad_, a, MPFR_RNDU);
    mpfr_clear(a);
}

Real from_endpoints(const mpfr_t lo, const mpfr_t hi, long prec) {
    Real r(prec);
    if (mpfr_nan_p(lo) || mpfr_nan_p(hi))
        return Real::nan(prec);
    mpfr_add(r.mid_mut(), lo, hi, MPFR_RNDN);
    mpfr_div_2si(r.mid_mut(), r.mid_mut(), 1, MPFR_RNDN);
    mpfr_t r1, r2;
    mpfr_init2(r1, Real::kRadPrec);
    mpfr_init2(r2, Real::kRadPrec);
    mpfr_sub(r1, hi, r.mid(), MPFR_RNDU);
    mpfr_sub(r2, r.mid(), lo, MPFR_RNDU);
    if (mpfr_cmp(r1, r2) < 0)
        mpfr_swap(r1, r2);
    if (mpfr_sgn(r1) < 0)
        mpfr_set_zero(r1, 1);
    mpfr_set(r.rad_mut(), r1, MPFR_RNDU);
    mpfr_clear(r1);
    mpfr_clear(r2);
    return r;
}

bool overlaps(const Real& a, const Real& b) {
    if (a.is_nan() || b.is_nan())
        return false;
    // |a.mid - b.mid| <= a.rad + b.rad, decided conservatively upward.
    mpfr_t d, s;
    mpfr_init2(d, Real::kRadPrec);
    mpfr_init2(s, Real::kRadPrec);
    mpfr_sub(d, a.mid(), b.mid(), MPFR_RNDD);
    mpfr_abs(d, d, MPFR_RNDD);
    mpfr_add(s, a.rad(), b.rad(), MPFR_RNDU);
    bool ok = mpfr_cmp(d, s) <= 0;
    mpfr_clear(d);
    mpfr_clear(s);
    return ok;
}

bool contains(const Real& outer, const Real& inner) {
    if (outer.is_nan() || inner.is_nan())
        return false;
    // |a.mid - b.mid| + b.rad <= a.rad
    mpfr_t d;
    mpfr_init2(d, Real::kRadPrec);
    mpfr_sub(d, outer.mid(), inner.mid(), MPFR_RNDU);
    mpfr_abs(d, d, MPFR_RNDU);
    mpfr_add(d, d, inner.rad(), MPFR_RNDU);
    bool ok = mpfr_cmp(d, outer.rad()) <= 0;
    mpfr_clear(d);
    return ok;
}

bool certainly_less(const Real& a, const Real& b) {
    if (a.is_nan() || b.is_nan())
        return false;
    long p = std::max(a.prec(), b.prec()) + Real::kRadPrec;
    mpfr_t ahi, blo;
    mpfr_init2(ahi, p);
    mpfr_init2(blo, p);
    a.get_hi(ahi);
    b.get_lo(blo);
    bool ok = mpfr_cmp(ahi, blo) < 0;
    mpfr_clear(ahi);
    mpfr_clear(blo);
    return ok;
}

Real hull(const Real& a, const Real& b) {
    long p = std::max(a.prec(), b.prec());
    mpfr_t lo1, hi1, lo2, hi2;
    mpfr_init2(lo1, p + 8);
    mpfr_init2(hi1, p + 8);
    mpfr_init2(lo2, p + 8);
    mpfr_init2(hi2, p + 8);
    a.get_lo(lo1);
    a.get_hi(hi1);
    b.get_lo(lo2);
    b.get_hi(hi2);
    if (mpfr_cmp(lo2, lo1) < 0)
        mpfr_swap(lo1, lo2);
    if (mpfr_cmp(hi2, hi1) > 0)
        mpfr_swap(hi1, hi2);
    Real r = from_endpoints(lo1, hi1, p);
    mpfr_clear(lo1);
    mpfr_clear(hi1);
    mpfr_clear(lo2);
    mpfr_clear(hi2);
    return r;
}

Real add(const Real& a, const Real& b, long prec) {
    long p = pick_prec(a, b, prec);
    Real r(p);
    int t = mpfr_add(r.mid_mut(), a.mid(), b.mid(), MPFR_RNDN);
    mpfr_add(r.rad_mut(), a.rad(), b.rad(), MPFR_RNDU);
    absorb_rounding(r.rad_mut(), r.mid(), t);
    return r;
}

Real sub(const Real& a, const Real& b, long prec) {
    long p = pick_prec(a, b, prec);
    Real r(p);
    int t = mpfr_sub(r.mid_mut(), a.mid(), b.mid(), MPFR_RNDN);
    mpfr_add(r.rad_mut(), a.rad(), b.rad(), MPFR_RNDU);
    absorb_rounding(r.rad_mut(), r.mid(), t);
    return r;
}

Real mul(const Real& a, const Real& b, long prec) {
    long p = pick_prec(a, b, prec);
    Real r(p);
    int t = mpfr_mul(r.mid_mut(), a.mid(), b.mid(), MPFR_RNDN);
    mpfr_t x, y, acc;
    mpfr_init2(x, Real::kRadPrec);
    mpfr_init2(y, Real::kRadPrec);
    mpfr_init2(acc, Real::kRadPrec);
    mpfr_abs(x, a.mid(), MPFR_RNDU);
    mpfr_abs(y, b.mid(), MPFR_RNDU);
    mpfr_mul(x, x, b.rad(), MPFR_RNDU);       // |a| rb
    mpfr_mul(y, y, a.rad(), MPFR_RNDU);       // |b| ra
    mpfr_add(acc, x, y, MPFR_RNDU);
    mpfr_mul(x, a.rad(), b.rad(), MPFR_RNDU); // ra rb
    mpfr_add(acc, acc, x, MPFR_RNDU);
    mpfr_add(r.rad_mut(), r.rad(), acc, MPFR_RNDU);
    absorb_rounding(r.rad_mut(), r.mid(), t);
    mpfr_clear(x);
    mpfr_clear(y);
    mpfr_clear(acc);
    return r;
}

Real div(const Real& a, const Real& b, long prec) {
    long p = pick_prec(a, b, prec);
    if (b.sign_certified() == 0)
        throw DomainError("div: divisor enclosure contains zero");
    Real r(p);
    int t = mpfr_div(r.mid_mut(), a.mid(), b.mid(), MPFR_RNDN);
    // |x/y - am/bm| <= (|am| rb + |bm| ra) / (|bm| (|bm| - rb))
    mpfr_t num, den, x, y;
    mpfr_init2(num, Real::kRadPrec);
    mpfr_init2(den, Real::kRadPrec);
    mpfr_init2(x, Real::kRadPrec);
    mpfr_init2(y, Real::kRadPrec);
    mpfr_abs(x, a.mid(), MPFR_RNDU);
    mpfr_mul(x, x, b.rad(), MPFR_RNDU);
    mpfr_abs(y, b.mid(), MPFR_RNDU);
    mpfr_mul(y, y, a.rad(), MPFR_RNDU);
    mpfr_add(num, x, y, MPFR_RNDU);
    mpfr_abs(x, b.mid(), MPFR_RNDD);
    mpfr_sub(y, x, b.rad(), MPFR_RNDD);
    mpfr_mul(den, x, y, MPFR_RNDD);
    mpfr_div(num, num, den, MPFR_RNDU);
    mpfr_add(r.rad_mut(), r.rad(), num, MPFR_RNDU);
    absorb_rounding(r.rad_mut(), r.mid(), t);
    mpfr_clear(num);
    mpfr_clear(den);
    mpfr_clear(x);
    mpfr_clear(y);
    return r;
}

Real neg(const Real& a) {
    Real r(a);
    mpfr_neg(r.mid_mut(), r.mid(), MPFR_RNDN);
    return r;
}

Real abs(const Real& a) {
    if (a.sign_certified() >= 0 && mpfr_sgn(a.mid()) >= 0)
        return a;
    if (a.sign_certified() < 0)
        return neg(a);
    // straddles zero: [0, max(|lo|, hi)]
    long p = a.prec();
    mpfr_t lo, hi, z;
    mpfr_init2(lo, p + 8);
    mpfr_init2(hi, p + 8);
    mpfr_init2(z, p + 8);
    a.get_lo(lo);
    a.get_hi(hi);
    mpfr_abs(lo, lo, MPFR_RNDU);
    if (mpfr_cmp(lo, hi) > 0)
        mpfr_swap(lo, hi);
    mpfr_set_zero(z, 1);
    Real r = from_endpoints(z, hi, p);
    mpfr_clear(lo);
    mpfr_clear(hi);
    mpfr_clear(z);
    return r;
}

Real inv(const Real& a, long prec) {
    return div(Real::exact(1L, pick_prec(a, prec)), a, pick_prec(a, prec));
}

Real mul_2si(const Real& a, long e) {
    Real r(a);
    mpfr_mul_2si(r.mid_mut(), r.mid(), e, MPFR_RNDN);
    mpfr_mul_2si(r.rad_mut(), r.rad(), e, MPFR_RNDU);
    return r;
}

Real add_si(const Real& a, long v, long prec) {
    long p = pick_prec(a, prec);
    Real r(p);
    int t = mpfr_add_si(r.mid_mut(), a.mid(), v, MPFR_RNDN);
    mpfr_set(r.rad_mut(), a.rad(), MPFR_RNDU);
    absorb_rounding(r.rad_mut(), r.mid(), t);
    return r;
}

Real mul_si(const Real& a, long v, long prec) {
    return mul(a, Real::exact(v, pick_prec(a, prec)), prec);
}

Real div_si(const Real& a, long v, long prec) {
    if (v == 0)
        throw DomainError("div_si: zero divisor");
    return div(a, Real::exact(v, pick_prec(a, prec)), prec);
}

namespace {

// Applies a monotonically increasing correctly-rounded mpfr function to the
// endpoints of a.
template <typename F>
Real monotone_increasing(F&& f, const Real& a, long prec) {
    mpfr_t lo, hi;
    mpfr_init2(lo, prec);
    mpfr_init2(hi, prec);
    a.get_lo(lo);
    a.get_hi(hi);
    f(lo, lo, MPFR_RNDD);
    f(hi, hi, MPFR_RNDU);
    Real r = from_endpoints(lo, hi, prec);
    mpfr_clear(lo);
    mpfr_clear(hi);
    return r;
}

} // namespace

Real sqrt(const Real& a, long prec) {
    long p = pick_prec(a, prec);
    mpfr_t lo;
    mpfr_init2(lo, p);
    a.get_lo(lo);
    bool neg_lo = mpfr_sgn(lo) < 0;
    mpfr_clear(lo);
    if (neg_lo)
        throw DomainError("sqrt: enclosure not certified nonnegative");
    return monotone_increasing(
        [](mpfr_t o, const mpfr_t i, mpfr_rnd_t r) { mpfr_sqrt(o, i, r); }, a,
        p);
}

Real sqrt_nonneg(const Real& a, long prec) {
    long p = pick_prec(a, prec);
    mpfr_t lo, hi;
    mpfr_init2(lo, p);
    mpfr_init2(hi, p);
    a.get_lo(lo);
    a.get_hi(hi);
    if (mpfr_sgn(hi) < 0) {
        mpfr_clear(lo);
        mpfr_clear(hi);
        throw DomainError("sqrt_nonneg: enclosure certified negative");
    }
    if (mpfr_sgn(lo) < 0)
        mpfr_set_zero(lo, 1);
    mpfr_sqrt(lo, lo, MPFR_RNDD);
    mpfr_sqrt(hi, hi, MPFR_RNDU);
    Real r = from_endpoints(lo, hi, p);
    mpfr_clear(lo);
    mpfr_clear(hi);
    return r;
}

Real exp(const Real& a, long prec) {
    return monotone_increasing(
        [](mpfr_t o, const mpfr_t i, mpfr_rnd_t r) { mpfr_exp(o, i, r); }, a,
        pick_prec(a, prec));
}

Real log(const Real& a, long prec) {
    long p = pick_prec(a, prec);
    mpfr_t lo;
    mpfr_init2(lo, p);
    a.get_lo(lo);
    bool bad = mpfr_sgn(lo) <= 0;
    mpfr_clear(lo);
    if (bad)
        throw DomainError("log: enclosure not certified positive");
    return monotone_increasing(
        [](mpfr_t o, const mpfr_t i, mpfr_rnd_t r) { mpfr_log(o, i, r); }, a,
        p);
}

Real log1p(const Real& a, long prec) {
    long p = pick_prec(a, prec);
    mpfr_t lo;
    mpfr_init2(lo, p);
    a.get_lo(lo);
    bool bad = mpfr_cmp_si(lo, -1) <= 0;
    mpfr_clear(lo);
    if (bad)
        throw DomainError("log1p: enclosure not certified > -1");
    return monotone_increasing(
        [](mpfr_t o, const mpfr_t i, mpfr_rnd_t r) { mpfr_log1p(o, i, r); },
        a, p);
}

Real pow_ui(const Real& a, unsigned long k, long prec) {
    long p = pick_prec(a, prec);
    if (k == 0)
        return Real::exact(1L, p);
    if (k == 1)
        return a.rounded(p);
    mpfr_t lo, hi;
    mpfr_init2(lo, p);
    mpfr_init2(hi, p);
    a.get_lo(lo);
    a.get_hi(hi);
    Real r(p);
    if (k % 2 == 1 || mpfr_sgn(lo) >= 0) {
        mpfr_pow_ui(lo, lo, k, MPFR_RNDD);
        mpfr_pow_ui(hi, hi, k, MPFR_RNDU);
        r = from_endpoints(lo, hi, p);
    } else if (mpfr_sgn(hi) <= 0) {
        mpfr_pow_ui(lo, lo, k, MPFR_RNDU);
        mpfr_pow_ui(hi, hi, k, MPFR_RNDD);
        r = from_endpoints(hi, lo, p);
    } else {
        // even power of a zero-straddling interval: [0, max(|lo|,hi)^k]
        mpfr_abs(lo, lo, MPFR_RNDU);
        if (mpfr_cmp(lo, hi) > 0)
            mpfr_swap(lo, hi);
        mpfr_pow_ui(hi, hi, k, MPFR_RNDU);
        mpfr_set_zero(lo, 1);
        r = from_endpoints(lo, hi, p);
    }
    mpfr_clear(lo);
    mpfr_clear(hi);
    return r;
}

Real pow(const Real& base, const Real& expo, long prec) {
    long p = pick_prec(base, expo, prec);
    return exp(mul(expo, log(base, p), p), p);
}

Real pi_enclosure(long prec) {
    mpfr_t lo, hi;
    mpfr_init2(lo, prec);
    mpfr_init2(hi, prec);
    mpfr_const_pi(lo, MPFR_RNDD);
    mpfr_const_pi(hi, MPFR_RNDU);
    Real r = from_endpoints(lo, hi, prec);
    mpfr_clear(lo);
    mpfr_clear(hi);
    return r;
}

} // namespace xij
