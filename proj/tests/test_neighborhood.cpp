#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "lonet/neighborhood.hpp"
#include "lonet/rng.hpp"
#include "oracles.hpp"

using lonet::move_probability;
using lonet::neighbor_count;
using lonet::neighbors;
using lonet::OperatorKind;
using lonet::Solution;

TEST_CASE("bit-flip neighbors of 000 are the three single flips") {
    REQUIRE(neighbors(0b000, 3, OperatorKind::BitFlip) ==
            std::vector<Solution>{0b001, 0b010, 0b100});
}

TEST_CASE("1-swap neighborhood of a constant string is empty") {
    REQUIRE(neighbors(0b000, 3, OperatorKind::OneSwap).empty());
    REQUIRE(neighbors(0b111, 3, OperatorKind::OneSwap).empty());
    REQUIRE(neighbor_count(0b000, 3, OperatorKind::OneSwap) == 0);
}

TEST_CASE("1-swap neighborhood of 0101 has T_N = 2*2 members of equal weight") {
    const auto nb = neighbors(0b0101, 4, OperatorKind::OneSwap);
    REQUIRE(nb.size() == 4);
    REQUIRE(nb == oracle::neighbors(0b0101, 4, OperatorKind::OneSwap));
    for (const Solution t : nb) REQUIRE(lonet::hamming_weight(t) == 2);
}

TEST_CASE("neighbors are ascending, duplicate-free, and match the oracle") {
    lonet::SplitMix64 pick(17);
    for (int round = 0; round < 60; ++round) {
        const int n = 1 + static_cast<int>(pick.next_below(8));
        const Solution s = pick.next_below(Solution{1} << n);
        for (const auto op : {OperatorKind::BitFlip, OperatorKind::OneSwap}) {
            const auto nb = neighbors(s, n, op);
            REQUIRE(nb == oracle::neighbors(s, n, op));
            REQUIRE(nb.size() == neighbor_count(s, n, op));
            REQUIRE(std::is_sorted(nb.begin(), nb.end()));
            REQUIRE(std::adjacent_find(nb.begin(), nb.end()) == nb.end());
        }
    }
}

TEST_CASE("bit-flip move probability is 1/n for neighbors") {
    const Solution s = 0b010101010101010101;
    REQUIRE(move_probability(s, s ^ 1u, 18, OperatorKind::BitFlip) == 1.0 / 18);
    REQUIRE(move_probability(s, s ^ 0b11u, 18, OperatorKind::BitFlip) == 0.0);
}

TEST_CASE("a solution is never its own neighbor") {
    REQUIRE(move_probability(0b0110, 0b0110, 4, OperatorKind::BitFlip) == 0.0);
    REQUIRE(move_probability(0b0110, 0b0110, 4, OperatorKind::OneSwap) == 0.0);
}

TEST_CASE("1-swap move probability is 1/T_N") {
    REQUIRE(move_probability(0b0011, 0b0101, 4, OperatorKind::OneSwap) == 0.25);
    // weight differs: not reachable by a swap
    REQUIRE(move_probability(0b0011, 0b0111, 4, OperatorKind::OneSwap) == 0.0);
    // same weight but three positions differ
    REQUIRE(move_probability(0b000111, 0b111000, 6, OperatorKind::OneSwap) == 0.0);
}

TEST_CASE("move probabilities agree with the oracle and account to one") {
    lonet::SplitMix64 pick(23);
    for (int round = 0; round < 40; ++round) {
        const int n = 1 + static_cast<int>(pick.next_below(7));
        const Solution s = pick.next_below(Solution{1} << n);
        for (const auto op : {OperatorKind::BitFlip, OperatorKind::OneSwap}) {
            const auto nb = neighbors(s, n, op);
            // Exact rational accounting: every neighbor carries exactly 1/|Nh|
            // and every other solution carries 0, so the total is |Nh|*(1/|Nh|).
            for (Solution t = 0; t < (Solution{1} << n); ++t) {
                const double p = move_probability(s, t, n, op);
                REQUIRE(p == oracle::move_probability(s, t, n, op));
                if (std::binary_search(nb.begin(), nb.end(), t)) {
                    REQUIRE(p == 1.0 / static_cast<double>(nb.size()));
                } else {
                    REQUIRE(p == 0.0);
                }
            }
        }
    }
}

TEST_CASE("neighborhood relations are symmetric") {
    lonet::SplitMix64 pick(29);
    for (int round = 0; round < 40; ++round) {
        const int n = 2 + static_cast<int>(pick.next_below(6));
        const Solution s = pick.next_below(Solution{1} << n);
        for (const auto op : {OperatorKind::BitFlip, OperatorKind::OneSwap}) {
            for (const Solution t : neighbors(s, n, op)) {
                const auto back = neighbors(t, n, op);
                REQUIRE(std::binary_search(back.begin(), back.end(), s));
            }
        }
    }
}

TEST_CASE("1-swap preserves Hamming weight and has equal probabilities both ways") {
    lonet::SplitMix64 pick(31);
    for (int round = 0; round < 40; ++round) {
        const int n = 2 + static_cast<int>(pick.next_below(6));
        const Solution s = pick.next_below(Solution{1} << n);
        for (const Solution t : neighbors(s, n, OperatorKind::OneSwap)) {
            REQUIRE(lonet::hamming_weight(t) == lonet::hamming_weight(s));
            REQUIRE(move_probability(s, t, n, OperatorKind::OneSwap) ==
                    move_probability(t, s, n, OperatorKind::OneSwap));
        }
    }
}
