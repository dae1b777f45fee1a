#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/reference_values.hpp"
#include "xijensen/quadrature.hpp"

using namespace xij;

namespace {

// f(t) = e^{-t} on [1, inf): integral is e^{-1}
struct ExpIntegrand : DecayingIntegrand {
    Real eval(const QuadNode& node, long prec) const override {
        return exp(neg(node.t), prec);
    }
    Real tail_bound(const Real& T, long prec) const override {
        return exp(neg(T), prec); // integral_T^inf e^{-t} = e^{-T}
    }
};

// f(t) = t^{-3/4} e^{-pi t} on [1, inf)
struct PowExpIntegrand : DecayingIntegrand {
    Real eval(const QuadNode& node, long prec) const override {
        Real lt = log1p(node.offset, prec);
        Real p = exp(mul_2si(mul_si(lt, -3), -2), prec);
        return mul(p, exp(neg(mul(pi_enclosure(prec), node.t)), prec));
    }
    Real tail_bound(const Real& T, long prec) const override {
        // t^{-3/4} <= 1 for t >= 1
        Real pi = pi_enclosure(prec);
        return div(exp(neg(mul(pi, T)), prec), pi);
    }
};

struct ZeroIntegrand : DecayingIntegrand {
    Real eval(const QuadNode&, long prec) const override {
        return Real::exact(0L, prec);
    }
    Real tail_bound(const Real&, long prec) const override {
        return Real::exact(0L, prec);
    }
};

} // namespace

TEST_CASE("closed form: integral of e^-t from 1 is e^-1") {
    ExpIntegrand f;
    QuadratureSpec spec;
    spec.target_rel_error = 1e-40;
    PrecCtx ctx(192, 1 << 16);
    Real v = integrate_decaying(f, spec, ctx);
    Real expect = exp(Real::exact(-1L, 256));
    CHECK(overlaps(v, expect));
    CHECK(v.rel_radius_below(130));
}

TEST_CASE("t^-3/4 e^-pi t matches the 50-digit oracle") {
    PowExpIntegrand f;
    QuadratureSpec spec;
    spec.target_rel_error = 1e-55;
    PrecCtx ctx(256, 1 << 16);
    Real v = integrate_decaying(f, spec, ctx);
    Real expect = Real::parse(refvals::kExpPiQuarterIntegral, 256);
    CHECK(certainly_less(abs(sub(v, expect)), Real::parse("1e-49", 256)));
}

TEST_CASE("zero integrand gives the exact zero enclosure") {
    ZeroIntegrand f;
    QuadratureSpec spec;
    spec.target_rel_error = 1e-30;
    PrecCtx ctx(128, 1 << 12);
    Real v = integrate_decaying(f, spec, ctx);
    CHECK(v.is_exact());
    CHECK(v.mid_d() == 0.0);
}

TEST_CASE("enclosures nest across precisions") {
    PowExpIntegrand f;
    QuadratureSpec lo_spec;
    lo_spec.target_rel_error = 1e-20;
    QuadratureSpec hi_spec;
    hi_spec.target_rel_error = 1e-60;
    Real lo = integrate_decaying(f, lo_spec, PrecCtx(128, 1 << 16));
    Real hi = integrate_decaying(f, hi_spec, PrecCtx(320, 1 << 16));
    CHECK(overlaps(lo, hi));
    CHECK(hi.rel_radius_below(190));
}

TEST_CASE("refine_until escalates to acceptance") {
    PrecCtx ctx(64, 4096);
    int calls = 0;
    Real v = refine_until(
        [&](const PrecCtx& c) {
            ++calls;
            Real one = Real::exact(1L, c.bits);
            one.inflate_2exp(-c.bits);
            return one;
        },
        [](const Real& r) { return r.abs_radius_below(-100); }, ctx);
    CHECK(calls > 1);
    CHECK(v.abs_radius_below(-100));
}

TEST_CASE("refine_until exhausts the ceiling on non-shrinking radius") {
    PrecCtx ctx(64, 512);
    auto stuck = [](const PrecCtx& c) {
        Real one = Real::exact(1L, c.bits);
        one.inflate_2exp(-8);
        return one;
    };
    CHECK_THROWS_AS(refine_until(stuck,
                                 [](const Real& r) {
                                     return r.abs_radius_below(-100);
                                 },
                                 ctx),
                    PrecisionExhausted);
}
