#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ccbs {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid argument or precondition violation.
class ParamError : public Error {
public:
    using Error::Error;
};

/// Exact integer arithmetic left the 128-bit signed range.
class OverflowError : public Error {
public:
    using Error::Error;
};

/// Malformed or inconsistent transcript / cache state.
class IntegrityError : public Error {
public:
    using Error::Error;
};

/// A computation guard (enumeration size, demand-space size) was exceeded.
class ResourceError : public Error {
public:
    using Error::Error;
};

// All counting runs in checked signed 128-bit integers. Wrapping is never
// acceptable: a count that does not fit raises OverflowError.
using int128 = __int128;

inline int128 checked_add(int128 a, int128 b) {
    int128 r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("128-bit addition overflow");
    return r;
}

inline int128 checked_sub(int128 a, int128 b) {
    int128 r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("128-bit subtraction overflow");
    return r;
}

inline int128 checked_mul(int128 a, int128 b) {
    int128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("128-bit multiplication overflow");
    return r;
}

std::string to_string(int128 v);

inline bool fits_int64(int128 v) {
    return v >= INT64_MIN && v <= INT64_MAX;
}

/// Number of bits needed to represent v (v must be positive).
int bit_length(int128 v);

/// log2 of a positive 128-bit integer, via bit length plus a fractional
/// correction from the top 64 bits. Full mantissa accuracy on x86 long double.
double log2_int128(int128 v);

/// Reduced fraction of 128-bit integers. num carries the sign, den > 0.
struct Rational {
    int128 num = 0;
    int128 den = 1;

    bool operator==(const Rational&) const = default;
};

/// Builds the canonical (reduced, den > 0) form. den == 0 is a ParamError.
Rational make_rational(int128 num, int128 den);

/// Decimal rendering with the given number of significant digits.
std::string decimal_string(const Rational& r, int significant_digits = 12);

}  // namespace ccbs
