#pragma once

#include <stdexcept>
#include <string>

namespace xij {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Target accuracy not reachable within PrecCtx::max_bits.
struct PrecisionExhausted : Error {
    using Error::Error;
};

// An operand or integrand enclosure is outside the operation's domain.
struct DomainError : Error {
    using Error::Error;
};

struct ConvergenceFailure : Error {
    using Error::Error;
};

struct MissingCoefficient : Error {
    using Error::Error;
};

struct SignUncertified : Error {
    using Error::Error;
};

struct RadicandUncertified : Error {
    using Error::Error;
};

struct IllConditioned : Error {
    using Error::Error;
};

struct TruncationUnsound : Error {
    using Error::Error;
};

struct DegenerateChain : Error {
    using Error::Error;
};

struct FloorUncertified : Error {
    using Error::Error;
};

struct UsageError : Error {
    using Error::Error;
};

} // namespace xij
