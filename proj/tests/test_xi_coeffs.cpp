#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/reference_values.hpp"
#include "xijensen/xi_coeffs.hpp"

using namespace xij;

namespace {
const PrecCtx kCtx(256, 1 << 16);

bool close_to(const Real& v, const char* decimal, const char* tol) {
    Real ref = Real::parse(decimal, 320);
    return certainly_less(abs(sub(v, ref)), Real::parse(tol, 320));
}
} // namespace

TEST_CASE("F(0) with the K=10 oracle and full tail") {
    Real f0 = eval_F(0, kCtx);
    CHECK(close_to(f0, refvals::kF0, "1e-49"));
    CHECK(close_to(f0, refvals::kF0TenTerms, "1e-49"));
    CHECK(f0.sign_certified() == 1);
}

TEST_CASE("theta truncation tails nest") {
    // K is precision-driven: a low-precision theta enclosure (small K, fat
    // tail) must contain a high-precision one.
    Real t = Real::from_double(1.25, 320);
    Real coarse = theta_sum(t.rounded(96), 96);
    Real fine = theta_sum(t, 320);
    CHECK(contains(coarse, fine));
}

TEST_CASE("F(2) and the positivity of F at even arguments") {
    Real f2 = eval_F(2, kCtx);
    CHECK(close_to(f2, refvals::kF2, "1e-48"));
    Real f18 = eval_F(18, kCtx); // z = 2M-2 at M = 10
    CHECK(f18.sign_certified() == 1);
}

TEST_CASE("gamma(1) from the fused route, the two-F route, and the "
          "derivative ground truth") {
    Real g1 = gamma_coeff(1, kCtx);
    CHECK(close_to(g1, refvals::kGamma1, "1e-44"));
    Real g1f = gamma_from_F_pair(1, kCtx);
    CHECK(overlaps(g1, g1f));
    CHECK(close_to(g1f, refvals::kGamma1, "1e-44"));
}

TEST_CASE("gamma(M) matches derivative ground truth at M = 2, 5, 10") {
    CHECK(close_to(gamma_coeff(2, kCtx), refvals::kGamma2, "1e-44"));
    CHECK(close_to(gamma_coeff(5, kCtx), refvals::kGamma5, "1e-44"));
    CHECK(close_to(gamma_coeff(10, kCtx), refvals::kGamma10, "1e-44"));
}

TEST_CASE("fused and two-F routes overlap for a range of M") {
    for (long M : {2L, 3L, 7L, 12L}) {
        CAPTURE(M);
        Real a = gamma_coeff(M, kCtx);
        Real b = gamma_from_F_pair(M, kCtx);
        CHECK(overlaps(a, b));
    }
}

TEST_CASE("nested enclosures for gamma at two precisions") {
    Real lo = gamma_coeff(5, PrecCtx(128, 1 << 16));
    Real hi = gamma_coeff(5, PrecCtx(512, 1 << 16));
    CHECK(overlaps(lo, hi));
    CHECK(contains(lo, hi));
}

TEST_CASE("gamma0_direct hits the zeta/Gamma assembly") {
    Real g0 = gamma0_direct(kCtx);
    CHECK(g0.sign_certified() == 1);
    CHECK(close_to(g0, refvals::kXiHalf, "1e-50"));
    Real lo = gamma0_direct(PrecCtx(128, 4096));
    CHECK(contains(lo, g0));
}

TEST_CASE("solve_L: exact point, oracle values, asymptotic trend") {
    // M = pi e + 3/4 has the exact solution L = 1
    Real pi = pi_enclosure(320);
    Real M = add(mul(pi, exp(Real::exact(1L, 320))),
                 Real::of_rational(mpq_class(3, 4), 320));
    LKPair lk = solve_L(M, kCtx);
    CHECK(overlaps(lk.L, Real::exact(1L, 256)));

    LKPair l10 = solve_L(Real::exact(10L, 256), kCtx);
    CHECK(close_to(l10.L, refvals::kL10, "1e-48"));
    LKPair l2 = solve_L(Real::exact(2L, 256), kCtx);
    CHECK(close_to(l2.L, refvals::kL2, "1e-48"));
    CHECK(l2.L.sign_certified() == 1);

    // L_M / log(M / log M) within 25% of 1 at M = 10^6
    LKPair big = solve_L(Real::exact(1000000L, 256), kCtx);
    Real million = Real::exact(1000000L, 256);
    Real denom = log(div(million, log(million)));
    Real ratio = div(big.L, denom);
    CHECK(certainly_less(abs(sub(ratio, Real::exact(1L, 256))),
                         Real::parse("0.25", 256)));
}

TEST_CASE("gamma_asym: finite at M=2, ratio near 1 at moderate M") {
    Real a2 = gamma_asym(2, kCtx);
    CHECK(a2.sign_certified() == 1);

    Real g50 = gamma_coeff(50, kCtx);
    Real a50 = gamma_asym(50, kCtx);
    Real ratio = div(g50, a50);
    CHECK(certainly_less(abs(sub(ratio, Real::exact(1L, 256))),
                         Real::parse("0.2", 256)));
}
