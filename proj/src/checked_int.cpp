#include "checked_int.hpp"

#include <algorithm>
#include <cstdio>

namespace ccbs {

std::string to_string(int128 v) {
    if (v == 0) return "0";
    const bool neg = v < 0;
    // Avoid negating INT128_MIN: peel digits off the negative value directly.
    std::string digits;
    int128 x = neg ? v : -v;
    while (x != 0) {
        int d = static_cast<int>(-(x % 10));
        digits.push_back(static_cast<char>('0' + d));
        x /= 10;
    }
    if (neg) digits.push_back('-');
    std::reverse(digits.begin(), digits.end());
    return digits;
}

int bit_length(int128 v) {
    if (v <= 0) throw ParamError("bit_length requires a positive value");
    const auto hi = static_cast<uint64_t>(static_cast<unsigned __int128>(v) >> 64);
    const auto lo = static_cast<uint64_t>(static_cast<unsigned __int128>(v));
    if (hi != 0) return 128 - __builtin_clzll(hi);
    return 64 - __builtin_clzll(lo);
}

double log2_int128(int128 v) {
    const int bits = bit_length(v);
    if (bits <= 64) {
        return static_cast<double>(
            std::log2(static_cast<long double>(static_cast<uint64_t>(v))));
    }
    const int shift = bits - 64;
    const auto top = static_cast<uint64_t>(static_cast<unsigned __int128>(v) >> shift);
    return static_cast<double>(std::log2(static_cast<long double>(top))) + shift;
}

namespace {

int128 gcd128(int128 a, int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace

Rational make_rational(int128 num, int128 den) {
    if (den == 0) throw ParamError("rational with zero denominator");
    if (den < 0) {
        num = checked_sub(0, num);
        den = checked_sub(0, den);
    }
    const int128 g = gcd128(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return Rational{num, den};
}

std::string decimal_string(const Rational& r, int significant_digits) {
    const long double value =
        static_cast<long double>(r.num) / static_cast<long double>(r.den);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*Lg", significant_digits, value);
    return buf;
}

}  // namespace ccbs
