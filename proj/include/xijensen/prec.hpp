#pragma once

#include <cmath>

#include "xijensen/error.hpp"

namespace xij {

// Working-precision context with an escalation schedule.  All certified
// computations take a PrecCtx and may retry at bits*factor, bits*factor^2,
// ... up to max_bits before giving up with PrecisionExhausted.
struct PrecCtx {
    long bits = 128;
    long max_bits = 1L << 20;
    double escalation_factor = 2.0;

    PrecCtx() = default;

    PrecCtx(long b, long mb, double factor = 2.0)
        : bits(b), max_bits(mb), escalation_factor(factor) {
        validate();
    }

    void validate() const {
        if (bits < 64)
            throw UsageError("PrecCtx: bits must be >= 64");
        if (bits > max_bits)
            throw UsageError("PrecCtx: bits must be <= max_bits");
        if (!(escalation_factor > 1.0))
            throw UsageError("PrecCtx: escalation_factor must be > 1");
    }

    bool at_ceiling() const { return bits >= max_bits; }

    // Next context in the schedule.  Throws PrecisionExhausted when already
    // at the ceiling.
    PrecCtx escalated() const {
        if (at_ceiling())
            throw PrecisionExhausted("precision ceiling reached at " +
                                     std::to_string(bits) + " bits");
        long next = static_cast<long>(std::ceil(static_cast<double>(bits) *
                                                escalation_factor));
        if (next <= bits)
            next = bits + 64;
        if (next > max_bits)
            next = max_bits;
        return PrecCtx(next, max_bits, escalation_factor);
    }

    PrecCtx with_bits(long b) const {
        return PrecCtx(b, max_bits < b ? b : max_bits, escalation_factor);
    }
};

} // namespace xij
