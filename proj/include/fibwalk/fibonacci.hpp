#pragma once

#include <array>
#include <cstdint>

#include "fibwalk/errors.hpp"

namespace fibwalk {

namespace detail {

// Convention used throughout: f_0 = f_1 = 1, f_{n+1} = f_n + f_{n-1}.
// 93 entries is everything representable in 64 bits (f_92 < 2^64).
inline constexpr int kFibCount = 93;

inline constexpr std::array<std::uint64_t, kFibCount> kFibTable = [] {
    std::array<std::uint64_t, kFibCount> a{};
    a[0] = a[1] = 1;
    for (int n = 2; n < kFibCount; ++n) a[n] = a[n - 1] + a[n - 2];
    return a;
}();

}  // namespace detail

/// f_n with f_0 = f_1 = 1.
inline std::uint64_t fibonacci(int n) {
    if (n < 0) throw error("fibonacci: negative index " + std::to_string(n));
    if (n >= detail::kFibCount)
        throw capacity_error("fibonacci: f_" + std::to_string(n) +
                             " overflows 64-bit integers");
    return detail::kFibTable[static_cast<std::size_t>(n)];
}

/// Reduces a column index j into the window [1, f_{i+1}] by repeatedly
/// subtracting the largest f_n with f_n < j. Optionally reports the number
/// of subtractions performed.
inline std::uint64_t reduce_column(std::uint64_t j, int i, int* steps = nullptr) {
    if (j < 1 || i < 1)
        throw error("reduce_column: j and i must be positive");
    const std::uint64_t limit = fibonacci(i + 1);
    int count = 0;
    while (j > limit) {
        // Locate n with f_n < j <= f_{n+1}.
        int n = i + 1;
        while (fibonacci(n + 1) < j) ++n;
        j -= fibonacci(n);
        ++count;
    }
    if (steps != nullptr) *steps = count;
    return j;
}

}  // namespace fibwalk
