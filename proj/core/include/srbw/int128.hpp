#pragma once
#include <cstdint>
#include <string>

namespace srbw {

// Pair/collision counts are exact integers. 64-bit overflows once
// per-site occupations reach ~2^32 particles, so totals are carried in
// 128 bits; good up to 2N <= 120.
using int128 = __int128;

inline std::string to_string(int128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    std::string s;
    while (u > 0) {
        s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    if (neg) s.push_back('-');
    return {s.rbegin(), s.rend()};
}

inline double to_double(int128 v) { return static_cast<double>(v); }

} // namespace srbw
