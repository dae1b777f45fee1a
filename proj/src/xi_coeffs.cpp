#include "xijensen/xi_coeffs.hpp"

#include <algorithm>
#include <cmath>

namespace xij {

namespace {

long theta_terms(long prec) {
    return static_cast<long>(
               std::ceil(std::sqrt((static_cast<double>(prec) + 10.0) *
                                   0.6932 / 3.14159))) +
           1;
}

} // namespace

Real theta_sum(const Real& t, long prec) {
    {
        mpfr_t lo;
        mpfr_init2(lo, 64);
        t.get_lo(lo);
        bool bad = mpfr_cmp_d(lo, 0.5) < 0;
        mpfr_clear(lo);
        if (bad)
            throw DomainError("theta_sum: t not certified >= 1/2");
    }
    const long K = theta_terms(prec);
    Real s = exp(neg(mul(pi_enclosure(prec), t)), prec); // e^{-pi t}
    Real s2 = mul(s, s);
    Real term = s;  // e^{-pi k^2 t} at k = 1
    Real spow = s;  // s^{2k-1}
    Real acc = term;
    for (long k = 2; k <= K; ++k) {
        spow = mul(spow, s2);
        term = mul(term, spow);
        acc = add(acc, term);
    }
    // sum_{k>K} e^{-pi k^2 t} <= s^{(K+1)^2} / (1 - s^{2(K+1)})
    Real num = pow_ui(s, static_cast<unsigned long>((K + 1) * (K + 1)));
    Real den = sub(Real::exact(1L, prec),
                   pow_ui(s, static_cast<unsigned long>(2 * (K + 1))));
    acc.inflate(div(num, den));
    return acc;
}

namespace {

// (log t)^z t^{-3/4} theta(t) on [1, inf)
class FIntegrand : public DecayingIntegrand {
  public:
    explicit FIntegrand(long z) : z_(z) {
        if (z < 0)
            throw UsageError("FIntegrand: z must be >= 0");
    }

    Real eval(const QuadNode& node, long prec) const override {
        Real lt = log1p(node.offset, prec); // log t, accurate near t = 1
        Real res = theta_sum(node.t, prec);
        // t^{-3/4} = e^{-3 log(t) / 4}
        res = mul(res, exp(mul_2si(mul_si(lt, -3), -2), prec));
        if (z_ > 0)
            res = mul(res, pow_ui(lt, static_cast<unsigned long>(z_)));
        return res;
    }

    Real tail_bound(const Real& T, long prec) const override {
        return f_tail_bound(z_, T, prec);
    }

    double suggested_cutoff(long bits) const override {
        return f_suggested_cutoff(z_, bits);
    }

    // shared with the fused gamma integrand
    static Real f_tail_bound(long z, const Real& T, long prec) {
        Real huge = mul_2si(Real::exact(1L, 64), 1L << 22);
        mpfr_t lo;
        mpfr_init2(lo, 64);
        T.get_lo(lo);
        bool small = mpfr_cmp_ui(lo, 3) < 0;
        mpfr_clear(lo);
        if (small)
            return huge;
        Real logT = log(T, prec);
        Real pi = pi_enclosure(prec);
        // theta(t) <= c_T e^{-pi t} for t >= T
        Real e3 = exp(neg(mul(mul_si(pi, 3), T)), prec);
        Real e5 = exp(neg(mul(mul_si(pi, 5), T)), prec);
        Real cT = add(Real::exact(1L, prec),
                      div(e3, sub(Real::exact(1L, prec), e5)));
        // (log t)^z <= (log T)^z e^{z (t-T) / (T log T)}
        Real decay = sub(pi, div(Real::exact(z, prec), mul(T, logT)));
        if (decay.sign_certified() != 1)
            return huge;
        Real val = div(exp(neg(mul(pi, T)), prec), decay);
        val = mul(val, cT);
        if (z > 0)
            val = mul(val, pow_ui(logT, static_cast<unsigned long>(z)));
        // T^{-3/4} <= 1
        return abs(val);
    }

    static double f_suggested_cutoff(long z, long bits) {
        double zz = static_cast<double>(z);
        double peak_log = -3.14159; // value scale at t = 1 for z = 0
        double floorT = 20.0;
        if (z > 0) {
            // L solves z = L pi e^L (saddle of u^z e^{-pi e^u})
            double L = std::log(zz / 3.14159 + 1.0) + 0.1;
            for (int i = 0; i < 50; ++i)
                L = std::log(zz / (3.14159 * std::max(L, 0.05)) + 1e-12);
            L = std::max(L, 0.05);
            peak_log = zz * std::log(L) - zz / L;
            floorT = std::max(floorT, std::exp(L) + 10.0);
        }
        double target_log =
            peak_log - (static_cast<double>(bits) + 48.0) * 0.6932;
        double T = std::max(floorT, -target_log / 3.14159 + 8.0);
        for (int i = 0; i < 60; ++i) {
            double next =
                (zz * std::log(std::log(T)) - target_log) / 3.14159 + 4.0;
            T = std::max(floorT, next);
        }
        if (!std::isfinite(T))
            T = 2.0 * floorT;
        return T * 1.05 + 4.0;
    }

  private:
    long z_;
};

// (log t)^{2M-2} t^{-3/4} theta(t) (32 C(2M,2) - (log t)^2): the bracket of
// the gamma(M) identity evaluated under one integral sign.
class GammaIntegrand : public DecayingIntegrand {
  public:
    explicit GammaIntegrand(long M) : z_(2 * M - 2) {
        mpz_class two_m(2 * M);
        mpz_bin_ui(binom_.get_mpz_t(), two_m.get_mpz_t(), 2);
        binom_ *= 32;
    }

    Real eval(const QuadNode& node, long prec) const override {
        Real lt = log1p(node.offset, prec);
        Real res = theta_sum(node.t, prec);
        res = mul(res, exp(mul_2si(mul_si(lt, -3), -2), prec));
        if (z_ > 0)
            res = mul(res, pow_ui(lt, static_cast<unsigned long>(z_)));
        res = mul(res, sub(Real::exact(binom_, prec), mul(lt, lt)));
        return res;
    }

    Real tail_bound(const Real& T, long prec) const override {
        Real t1 = FIntegrand::f_tail_bound(z_, T, prec);
        Real t2 = FIntegrand::f_tail_bound(z_ + 2, T, prec);
        return add(mul(Real::exact(binom_, prec), t1), t2);
    }

    double suggested_cutoff(long bits) const override {
        return FIntegrand::f_suggested_cutoff(z_ + 2, bits + 64);
    }

  private:
    long z_;
    mpz_class binom_;
};

double rel_target_for(long bits) {
    long e = bits - 48;
    if (e < 48)
        e = 48;
    if (e > 900)
        e = 900;
    return std::ldexp(1.0, static_cast<int>(-e));
}

// M! / ((2M)! 2^{2M+2}) as an exact rational
mpq_class gamma_prefactor(long M) {
    mpz_class num, den;
    mpz_fac_ui(num.get_mpz_t(), static_cast<unsigned long>(M));
    mpz_fac_ui(den.get_mpz_t(), static_cast<unsigned long>(2 * M));
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(),
                 static_cast<unsigned long>(2 * M + 2));
    return mpq_class(num) / mpq_class(den);
}

} // namespace

Real eval_F(long z, const PrecCtx& ctx) {
    FIntegrand f(z);
    QuadratureSpec spec;
    spec.target_rel_error = rel_target_for(ctx.bits);
    spec.lower_limit = 1.0;
    return integrate_decaying(f, spec, ctx);
}

Real gamma_coeff(long M, const PrecCtx& ctx, GammaTable* table) {
    if (M < 1)
        throw UsageError("gamma_coeff: M must be >= 1 (gamma(0) is Direct)");
    if (table) {
        if (auto e = table->get(M))
            return e->value;
    }
    GammaIntegrand f(M);
    QuadratureSpec spec;
    spec.target_rel_error = rel_target_for(ctx.bits);
    spec.lower_limit = 1.0;
    Real pref = Real::of_rational(gamma_prefactor(M), ctx.bits);

    PrecCtx c = ctx;
    Real v;
    while (true) {
        v = mul(pref.rounded(c.bits), integrate_decaying(f, spec, c));
        if (v.sign_certified() == 1)
            break;
        if (c.at_ceiling())
            throw SignUncertified("gamma(" + std::to_string(M) +
                                  ") sign uncertified at max precision");
        c = c.escalated();
    }
    if (table)
        table->put(M, GammaEntry{v, c.bits, Provenance::Integral});
    return v;
}

Real gamma_from_F_pair(long M, const PrecCtx& ctx) {
    if (M < 1)
        throw UsageError("gamma_from_F_pair: M must be >= 1");
    mpz_class binom;
    mpz_class two_m(2 * M);
    mpz_bin_ui(binom.get_mpz_t(), two_m.get_mpz_t(), 2);
    binom *= 32;
    Real bracket = sub(mul(Real::exact(binom, ctx.bits),
                           eval_F(2 * M - 2, ctx)),
                       eval_F(2 * M, ctx));
    return mul(Real::of_rational(gamma_prefactor(M), ctx.bits), bracket);
}

Real gamma0_direct(const PrecCtx& ctx) {
    const long prec = ctx.bits + 16;
    mpfr_t lo, hi;
    mpfr_init2(lo, prec);
    mpfr_init2(hi, prec);

    mpfr_set_d(lo, 0.5, MPFR_RNDN);
    mpfr_t zlo, zhi;
    mpfr_init2(zlo, prec);
    mpfr_init2(zhi, prec);
    mpfr_zeta(zlo, lo, MPFR_RNDD);
    mpfr_zeta(zhi, lo, MPFR_RNDU);
    Real zeta_half = from_endpoints(zlo, zhi, prec);

    mpfr_set_d(lo, 0.25, MPFR_RNDN);
    mpfr_gamma(zlo, lo, MPFR_RNDD);
    mpfr_gamma(zhi, lo, MPFR_RNDU);
    Real gamma_quarter = from_endpoints(zlo, zhi, prec);

    mpfr_clear(lo);
    mpfr_clear(hi);
    mpfr_clear(zlo);
    mpfr_clear(zhi);

    Real pi = pi_enclosure(prec);
    Real pi_mq = exp(mul_2si(neg(log(pi)), -2), prec); // pi^{-1/4}
    Real v = mul(mul(pi_mq, gamma_quarter), zeta_half);
    return neg(mul_2si(v, -3)).rounded(ctx.bits);
}

namespace {

// h(L) = L (pi e^L + 3/4) - M on midpoints, at precision prec.
void solve_midpoint(mpfr_t out_L, const mpfr_t Mmid, long prec) {
    mpfr_t lo, hi, mid, pi, t1, t2;
    mpfr_inits2(prec, lo, hi, mid, pi, t1, t2, static_cast<mpfr_ptr>(nullptr));
    mpfr_const_pi(pi, MPFR_RNDN);

    auto h = [&](const mpfr_t L, mpfr_t out) {
        mpfr_exp(t1, L, MPFR_RNDN);
        mpfr_mul(t1, t1, pi, MPFR_RNDN);
        mpfr_set_d(t2, 0.75, MPFR_RNDN);
        mpfr_add(t1, t1, t2, MPFR_RNDN);
        mpfr_mul(t1, t1, L, MPFR_RNDN);
        mpfr_sub(out, t1, Mmid, MPFR_RNDN);
    };

    mpfr_set_d(lo, 1e-6, MPFR_RNDN);
    mpfr_log(hi, Mmid, MPFR_RNDN);
    mpfr_add_ui(hi, hi, 10, MPFR_RNDN);
    for (int i = 0; i < 80; ++i) {
        mpfr_add(mid, lo, hi, MPFR_RNDN);
        mpfr_div_2ui(mid, mid, 1, MPFR_RNDN);
        h(mid, t2);
        if (mpfr_sgn(t2) < 0)
            mpfr_set(lo, mid, MPFR_RNDN);
        else
            mpfr_set(hi, mid, MPFR_RNDN);
    }
    // Newton polish: h'(L) = pi e^L (1 + L) + 3/4
    mpfr_add(mid, lo, hi, MPFR_RNDN);
    mpfr_div_2ui(mid, mid, 1, MPFR_RNDN);
    for (int i = 0; i < 64; ++i) {
        h(mid, t2);
        mpfr_exp(t1, mid, MPFR_RNDN);
        mpfr_mul(t1, t1, pi, MPFR_RNDN);
        mpfr_add_ui(lo, mid, 1, MPFR_RNDN);
        mpfr_mul(t1, t1, lo, MPFR_RNDN);
        mpfr_add_d(t1, t1, 0.75, MPFR_RNDN);
        mpfr_div(t2, t2, t1, MPFR_RNDN);
        mpfr_sub(mid, mid, t2, MPFR_RNDN);
        if (mpfr_zero_p(t2) ||
            (mpfr_get_exp(t2) < mpfr_get_exp(mid) - prec))
            break;
    }
    mpfr_set(out_L, mid, MPFR_RNDN);
    mpfr_clears(lo, hi, mid, pi, t1, t2, static_cast<mpfr_ptr>(nullptr));
}

Real lk_h(const Real& L, const Real& M, long prec) {
    Real pi = pi_enclosure(prec);
    Real q = add(mul(pi, exp(L, prec)),
                 Real::of_rational(mpq_class(3, 4), prec));
    return sub(mul(L, q), M);
}

} // namespace

LKPair solve_L(const Real& M, const PrecCtx& ctx) {
    const long prec = ctx.bits + 32;
    {
        mpfr_t lo;
        mpfr_init2(lo, 64);
        M.get_lo(lo);
        bool bad = mpfr_cmp_d(lo, 0.75) <= 0;
        mpfr_clear(lo);
        if (bad)
            throw UsageError("solve_L: requires M > 3/4");
    }
    mpfr_t Lhat;
    mpfr_init2(Lhat, prec);
    solve_midpoint(Lhat, M.mid(), prec);
    Real L0(prec);
    mpfr_set(L0.mid_mut(), Lhat, MPFR_RNDN);
    mpfr_clear(Lhat);

    // Certified enclosure via the mean value theorem: the root lies within
    // |h(L0)| / min h' of L0; h' = pi e^L (1 + L) + 3/4 >= 3/4 and is
    // increasing, so evaluate it at the low end of a first crude enclosure.
    Real pi = pi_enclosure(prec);
    Real resid = lk_h(L0, M, prec);
    Real hp = add(mul(mul(pi, exp(L0, prec)),
                      add_si(L0, 1)),
                  Real::of_rational(mpq_class(3, 4), prec));
    // One widening pass suffices: h' varies negligibly across the tiny
    // enclosure, and the final residual check below is what certifies.
    Real rad = div(abs(resid), hp);
    Real L = L0;
    L.inflate(mul_2si(rad, 1));

    Real final_resid = lk_h(L, M, prec);
    bool ok = false;
    {
        mpfr_t bound, hi;
        mpfr_init2(bound, 64);
        mpfr_init2(hi, 64);
        mpfr_set_ui_2exp(bound, 1, -(ctx.bits / 2), MPFR_RNDD);
        abs(final_resid).get_hi(hi);
        ok = mpfr_cmp(hi, bound) <= 0;
        mpfr_clear(bound);
        mpfr_clear(hi);
    }
    if (!ok || L.sign_certified() != 1)
        throw ConvergenceFailure("solve_L: residual not certified below "
                                 "2^-bits/2");

    Real Linv = inv(L, prec);
    Real K = sub(mul(add(Linv, mul(Linv, Linv)), M),
                 Real::of_rational(mpq_class(3, 4), prec));
    return LKPair{L.rounded(ctx.bits), K.rounded(ctx.bits)};
}

Real gamma_asym(long M, const PrecCtx& ctx) {
    if (M < 2)
        throw UsageError("gamma_asym: M must be >= 2");
    const long prec = ctx.bits + 64;
    PrecCtx c(prec, std::max(ctx.max_bits, prec), ctx.escalation_factor);
    LKPair lk = solve_L(Real::exact(2 * M - 2, prec), c);
    Real L = lk.L.rounded(prec);
    Real K = lk.K.rounded(prec);

    Real logM = log(Real::exact(M, prec));
    Real log2 = log(Real::exact(2L, prec));
    Real log2M2 = log(Real::exact(2 * M - 2, prec));
    Real pi = pi_enclosure(prec);

    // log of the main term, with denominator 2^{2M-2} (2M-2)^{2M-3/2}
    Real acc = Real::exact(M - 2, prec);
    acc = add(acc, mul(Real::of_rational(mpq_class(2 * M + 1, 2), prec),
                       logM));
    acc = add(acc, mul_si(log(L, prec), 2 * M - 2));
    acc = sub(acc, mul_si(log2, 2 * M - 2));
    acc = sub(acc, mul(Real::of_rational(mpq_class(4 * M - 3, 2), prec),
                       log2M2));
    acc = add(acc, mul_2si(sub(log(mul_2si(pi, 1), prec), log(K, prec)),
                           -1));
    acc = add(acc, mul_2si(L, -2));
    acc = sub(acc, div(Real::exact(2 * M - 2, prec), L));
    acc = add(acc, Real::of_rational(mpq_class(3, 4), prec));
    return exp(acc, prec).rounded(ctx.bits);
}

} // namespace xij
