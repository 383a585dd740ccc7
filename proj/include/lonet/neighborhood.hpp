#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "lonet/nk_model.hpp"

namespace lonet {

enum class OperatorKind { BitFlip, OneSwap };

inline const char* operator_name(OperatorKind op) {
    return op == OperatorKind::BitFlip ? "bitflip" : "swap";
}

inline OperatorKind parse_operator(const std::string& name) {
    if (name == "bitflip") return OperatorKind::BitFlip;
    if (name == "swap") return OperatorKind::OneSwap;
    throw std::invalid_argument("unknown operator '" + name + "' (expected bitflip or swap)");
}

inline int hamming_weight(Solution s) { return std::popcount(s); }

/// Neighborhood size: n for bit-flip, ones*(n-ones) for 1-swap.
inline std::size_t neighbor_count(Solution s, int n, OperatorKind op) {
    if (op == OperatorKind::BitFlip) return static_cast<std::size_t>(n);
    const auto ones = static_cast<std::size_t>(std::popcount(s));
    return ones * (static_cast<std::size_t>(n) - ones);
}

/// Calls fn(Solution) for every neighbor, in an unspecified order.
template <typename Fn>
inline void for_each_neighbor(Solution s, int n, OperatorKind op, Fn&& fn) {
    if (op == OperatorKind::BitFlip) {
        for (int b = 0; b < n; ++b) fn(s ^ (Solution{1} << b));
        return;
    }
    for (int a = 0; a < n; ++a) {
        if (((s >> a) & 1u) == 0) continue;
        for (int b = 0; b < n; ++b) {
            if (((s >> b) & 1u) != 0) continue;
            fn(s ^ (Solution{1} << a) ^ (Solution{1} << b));
        }
    }
}

/// All neighbors in ascending integer encoding. Duplicates cannot occur:
/// bit-flip results differ in the flipped position, 1-swap results differ in
/// the chosen (one,zero) position pair.
inline std::vector<Solution> neighbors(Solution s, int n, OperatorKind op) {
    std::vector<Solution> out;
    out.reserve(neighbor_count(s, n, op));
    for_each_neighbor(s, n, op, [&](Solution t) { out.push_back(t); });
    std::sort(out.begin(), out.end());
    return out;
}

/// p(s -> s'): 1/n for a bit-flip neighbor, 1/T_N for a 1-swap neighbor
/// (T_N = ones*zeros of s), 0 otherwise. s is never its own neighbor and a
/// solution with an empty neighborhood yields 0 for every target.
inline double move_probability(Solution s, Solution s_prime, int n, OperatorKind op) {
    if (s == s_prime) return 0.0;
    const Solution diff = s ^ s_prime;
    if (op == OperatorKind::BitFlip) {
        return std::popcount(diff) == 1 ? 1.0 / n : 0.0;
    }
    // A 1-swap changes exactly one 1-bit and one 0-bit, preserving the weight.
    if (std::popcount(diff) != 2 || std::popcount(s) != std::popcount(s_prime)) return 0.0;
    return 1.0 / static_cast<double>(neighbor_count(s, n, op));
}

} // namespace lonet
