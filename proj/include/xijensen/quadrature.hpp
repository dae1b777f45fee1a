#pragma once

#include <string>

#include "xijensen/real.hpp"

namespace xij {

// Tolerances for enclosing an integral of an exponentially decaying
// integrand on [lower_limit, infinity).
struct QuadratureSpec {
    double target_rel_error = 1e-30;
    double lower_limit = 1.0;
    std::string tail_cutoff_rule =
        "cutoff T grows until the integrand's certified tail bound drops "
        "below target_rel_error times the running estimate";

    void validate() const {
        if (!(target_rel_error > 0.0) || !(target_rel_error < 1.0))
            throw UsageError("QuadratureSpec: target_rel_error must be in (0,1)");
    }
};

// Evaluation point handed to integrands.  offset = t - lower_limit is kept
// as a separate positive enclosure so integrands can evaluate accurately
// next to the left endpoint (e.g. log t via log1p).
struct QuadNode {
    Real t;
    Real offset;
};

// A real integrand on [lower, infinity) with a certified bound on its tail
// mass beyond any cutoff.
class DecayingIntegrand {
  public:
    virtual ~DecayingIntegrand() = default;
    // Enclosure of f(t) at the node.
    virtual Real eval(const QuadNode& node, long prec) const = 0;
    // Rigorous upper bound on |integral of f over [T, infinity)|.
    virtual Real tail_bound(const Real& T, long prec) const = 0;
    // Optional starting cutoff; the driver still verifies it against
    // tail_bound and grows it as needed.  Negative means no suggestion.
    virtual double suggested_cutoff(long /*bits*/) const { return -1.0; }
};

// Encloses the integral of f over [spec.lower_limit, infinity) with relative
// radius <= spec.target_rel_error, escalating precision up to ctx.max_bits.
// Throws PrecisionExhausted when the target cannot be met, DomainError when
// the integrand produces an invalid enclosure.
Real integrate_decaying(const DecayingIntegrand& f, const QuadratureSpec& spec,
                        const PrecCtx& ctx);

// Runs compute at ctx.bits, ctx.bits*factor, ... until accept holds for the
// returned enclosure, and returns the first accepted one.
template <typename ComputeFn, typename AcceptFn>
Real refine_until(ComputeFn&& compute, AcceptFn&& accept, const PrecCtx& ctx) {
    PrecCtx c = ctx;
    while (true) {
        Real v = compute(c);
        if (accept(v))
            return v;
        c = c.escalated(); // throws PrecisionExhausted at the ceiling
    }
}

} // namespace xij
