#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <utility>

#include "xijensen/error.hpp"
#include "xijensen/prec.hpp"

namespace xij {

// Rigorous midpoint-radius enclosure of a real number.
//
// Every operation returns an enclosure that contains the exact result for
// all points of the operand enclosures: midpoints are rounded to nearest at
// the working precision and the rounding slack is absorbed into the radius,
// which is tracked at a fixed small precision with upward rounding.  A value
// "certifies sign" iff 0 lies outside [mid - rad, mid + rad].
class Real {
  public:
    static constexpr long kRadPrec = 64;

    Real() { init_(64); }
    explicit Real(long prec) { init_(prec); }
    Real(const Real& o);
    Real(Real&& o) noexcept;
    Real& operator=(const Real& o);
    Real& operator=(Real&& o) noexcept;
    ~Real();

    long prec() const { return mpfr_get_prec(mid_); }

    // --- constructors of exact values -----------------------------------
    static Real exact(long v, long prec);
    static Real exact(unsigned long v, long prec);
    static Real exact(const mpz_class& v, long prec);
    static Real of_rational(const mpq_class& v, long prec);
    static Real from_double(double v, long prec);
    // Enclosure of the value denoted by a decimal string (radius covers the
    // parse rounding).
    static Real parse(const std::string& midpoint, long prec);
    static Real parse(const std::string& midpoint, const std::string& radius,
                      long prec);
    static Real nan(long prec);

    // --- raw access ------------------------------------------------------
    const mpfr_t& mid() const { return mid_; }
    const mpfr_t& rad() const { return rad_; }
    mpfr_t& mid_mut() { return mid_; }
    mpfr_t& rad_mut() { return rad_; }

    bool is_nan() const { return mpfr_nan_p(mid_) != 0; }
    bool is_exact() const { return mpfr_zero_p(rad_) != 0 && !is_nan(); }
    double mid_d() const { return mpfr_get_d(mid_, MPFR_RNDN); }
    double rad_d() const { return mpfr_get_d(rad_, MPFR_RNDU); }

    // --- certification ----------------------------------------------------
    // +1 if certified positive, -1 if certified negative, 0 otherwise.
    int sign_certified() const;
    bool contains_zero() const { return sign_certified() == 0 && !is_nan(); }
    // Relative radius <= 2^-bits, certified.
    bool rel_radius_below(long bits) const;
    // Radius <= 2^e, certified.
    bool abs_radius_below(long e) const;
    // Number of correct leading bits of the midpoint (LONG_MAX/4 for exact).
    long accurate_bits() const;

    // Endpoints written into caller-initialized mpfr_t.
    void get_lo(mpfr_t out) const; // rounded down
    void get_hi(mpfr_t out) const; // rounded up

    std::string to_string(int digits = 20) const;
    // Full-precision decimal of the midpoint / radius, round-trip safe when
    // re-parsed at the same precision.
    std::string midpoint_decimal() const;
    std::string radius_decimal() const;

    // Re-round to a new working precision (radius widened by the rounding).
    Real rounded(long prec) const;

    // Grow the radius by |e|'s magnitude (e interpreted as an upper bound).
    void inflate(const Real& e);
    void inflate_2exp(long e); // add 2^e to the radius

  private:
    void init_(long prec);
    mpfr_t mid_;
    mpfr_t rad_;

    friend Real from_endpoints(const mpfr_t lo, const mpfr_t hi, long prec);
};

// Enclosure of [lo, hi] as a midpoint-radius value at the given precision.
Real from_endpoints(const mpfr_t lo, const mpfr_t hi, long prec);

// --- containment / comparison ---------------------------------------------
bool overlaps(const Real& a, const Real& b);
bool contains(const Real& outer, const Real& inner);
bool certainly_less(const Real& a, const Real& b); // a.hi < b.lo
Real hull(const Real& a, const Real& b);

// --- arithmetic -------------------------------------------------------------
// Result precision defaults to max(prec of operands) when prec == 0.
Real add(const Real& a, const Real& b, long prec = 0);
Real sub(const Real& a, const Real& b, long prec = 0);
Real mul(const Real& a, const Real& b, long prec = 0);
Real div(const Real& a, const Real& b, long prec = 0);
Real neg(const Real& a);
Real abs(const Real& a);
Real inv(const Real& a, long prec = 0);
Real mul_2si(const Real& a, long e); // exact scaling by 2^e
Real add_si(const Real& a, long v, long prec = 0);
Real mul_si(const Real& a, long v, long prec = 0);
Real div_si(const Real& a, long v, long prec = 0);

Real sqrt(const Real& a, long prec = 0);        // requires lo >= 0 certified
Real sqrt_nonneg(const Real& a, long prec = 0); // encloses sqrt(a cap [0,inf))
Real exp(const Real& a, long prec = 0);
Real log(const Real& a, long prec = 0);   // requires lo > 0 certified
Real log1p(const Real& a, long prec = 0); // requires lo > -1 certified
Real pow_ui(const Real& a, unsigned long k, long prec = 0);
Real pow(const Real& base, const Real& expo, long prec = 0); // base > 0

Real pi_enclosure(long prec);

inline Real operator+(const Real& a, const Real& b) { return add(a, b); }
inline Real operator-(const Real& a, const Real& b) { return sub(a, b); }
inline Real operator*(const Real& a, const Real& b) { return mul(a, b); }
inline Real operator/(const Real& a, const Real& b) { return div(a, b); }
inline Real operator-(const Real& a) { return neg(a); }

} // namespace xij
