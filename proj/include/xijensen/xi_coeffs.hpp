#pragma once

#include "xijensen/gamma_table.hpp"
#include "xijensen/quadrature.hpp"
#include "xijensen/real.hpp"

namespace xij {

// L_M and K_M: M = L(pi e^L + 3/4),  K = (1/L + 1/L^2) M - 3/4.
struct LKPair {
    Real L;
    Real K;
};

// Truncated theta series sum_{k>=1} e^{-pi k^2 t} with the k > K remainder
// folded into the radius.  Requires t >= 1/2 certified.
Real theta_sum(const Real& t, long prec);

// F(z) = integral_1^inf (log t)^z t^{-3/4} sum_{k>=1} e^{-pi k^2 t} dt
// for integer z >= 0, enclosed to relative error 2^-(ctx.bits-48).
Real eval_F(long z, const PrecCtx& ctx);

// gamma(M) for M >= 1 through the F-integral identity, evaluated as a single
// fused quadrature; certifies positivity and caches the result (provenance
// Integral) when a table is supplied.
Real gamma_coeff(long M, const PrecCtx& ctx, GammaTable* table = nullptr);

// Same value computed literally as two separate F integrals; reference route
// for cross-checking the fused evaluation.
Real gamma_from_F_pair(long M, const PrecCtx& ctx);

// gamma(0) = xi(1/2) = -(1/8) pi^{-1/4} Gamma(1/4) zeta(1/2) from directly
// rounded zeta and Gamma evaluations (provenance Direct).
Real gamma0_direct(const PrecCtx& ctx);

// Unique positive solution of M = L (pi e^L + 3/4); requires M > 3/4.
LKPair solve_L(const Real& M, const PrecCtx& ctx);

// Main term of the gamma(M) asymptotic (error factor omitted), M >= 2.
Real gamma_asym(long M, const PrecCtx& ctx);

} // namespace xij
