#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace opfree {

/// Raised on malformed input: bad partitions, arity mismatches, unparsable words.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when an internal structural invariant is violated.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

using Coeff = std::int64_t;

inline Coeff checked_add(Coeff a, Coeff b) {
    Coeff r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("coefficient overflow in addition");
    return r;
}

inline Coeff checked_mul(Coeff a, Coeff b) {
    Coeff r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("coefficient overflow in multiplication");
    return r;
}

inline void require(bool cond, const std::string& what) {
    if (!cond) throw InvalidInput(what);
}

inline void ensure(bool cond, const std::string& what) {
    if (!cond) throw InvariantViolation(what);
}

}  // namespace opfree
