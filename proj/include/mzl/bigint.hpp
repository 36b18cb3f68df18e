#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <stdexcept>

namespace mzl {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int ipow(Int base, std::uint64_t e) {
    Int r = 1;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

inline Rat rpow(const Rat& base, std::int64_t e) {
    if (e >= 0) {
        Rat r = 1;
        for (std::int64_t i = 0; i < e; ++i) r *= base;
        return r;
    }
    Rat r = 1;
    for (std::int64_t i = 0; i < -e; ++i) r /= base;
    return r;
}

inline std::int64_t to_i64(const Int& v) {
    if (v < std::numeric_limits<std::int64_t>::min() ||
        v > std::numeric_limits<std::int64_t>::max())
        throw std::overflow_error("value exceeds 64-bit range");
    return v.convert_to<std::int64_t>();
}

inline std::int64_t gcd64(std::int64_t a, std::int64_t b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        std::int64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace mzl
