#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "lonet/neighborhood.hpp"
#include "lonet/nk_model.hpp"
#include "lonet/parallel.hpp"

namespace lonet {

struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The deterministic hill-climb mapping over the full solution space of one
/// instance under one operator: every solution is assigned the identifier of
/// the local optimum best-improvement hill climbing reaches from it.
/// Identifiers are positions in `optima`, which is ordered by ascending
/// optimum encoding, so identifiers are stable across runs and worker counts.
struct BasinMap {
    OperatorKind op = OperatorKind::BitFlip;
    int n = 0;
    int k = 0;
    std::uint64_t seed = 0;

    struct Optimum {
        Solution solution = 0;
        double fitness = 0.0;
    };

    std::vector<std::uint32_t> assignment;     // solution encoding -> optimum id
    std::vector<Optimum> optima;               // ascending by solution encoding
    std::vector<std::uint64_t> basin_sizes;    // per optimum id
    std::vector<std::uint32_t> global_optima;  // ids attaining the maximum fitness
    double max_fitness = 0.0;                  // maximum fitness over all solutions

    std::size_t optimum_count() const { return optima.size(); }
};

/// Best-improvement hill climbing: move to the fittest neighbor while it
/// strictly improves fitness. Ties among equally-best neighbors are broken
/// toward the smallest integer encoding, which makes the climb deterministic.
/// A solution with an empty neighborhood is its own local optimum.
template <typename FitFn>
Solution hill_climb_with(FitFn&& fit, int n, OperatorKind op, Solution s0) {
    Solution cur = s0;
    double cur_f = fit(cur);
    for (;;) {
        bool any = false;
        Solution best_s = 0;
        double best_f = 0.0;
        for_each_neighbor(cur, n, op, [&](Solution t) {
            const double f = fit(t);
            if (!any || f > best_f || (f == best_f && t < best_s)) {
                any = true;
                best_f = f;
                best_s = t;
            }
        });
        if (!any || !(cur_f < best_f)) return cur;
        cur = best_s;
        cur_f = best_f;
    }
}

inline Solution hill_climb(const NkInstance& inst, OperatorKind op, Solution s0) {
    return hill_climb_with([&](Solution s) { return fitness(inst, s); }, inst.n, op, s0);
}

struct EnumerateOptions {
    unsigned workers = 0;  // 0 = hardware concurrency
    int max_n = 28;        // capacity guard: assignment and memo arrays grow as 2^n
    std::size_t fitness_cache_budget = std::size_t{1} << 29;  // bytes
};

namespace detail {

constexpr std::uint32_t kUnresolved = 0xFFFFFFFFu;

// Climb from s0, reusing previously resolved solutions, then record the
// optimum for the whole trajectory. The memo holds the optimum encoding per
// solution; concurrent writers always store the same value because the climb
// is a pure function of the start solution.
template <typename FitFn>
void resolve_trajectory(FitFn&& fit, int n, OperatorKind op, std::uint32_t s0,
                        std::vector<std::atomic<std::uint32_t>>& memo,
                        std::vector<std::uint32_t>& path) {
    if (memo[s0].load(std::memory_order_relaxed) != kUnresolved) return;
    path.clear();
    std::uint32_t cur = s0;
    double cur_f = fit(cur);
    std::uint32_t lo;
    for (;;) {
        const std::uint32_t seen = memo[cur].load(std::memory_order_relaxed);
        if (seen != kUnresolved) {
            lo = seen;
            break;
        }
        path.push_back(cur);
        bool any = false;
        std::uint32_t best_s = 0;
        double best_f = 0.0;
        for_each_neighbor(cur, n, op, [&](Solution t) {
            const double f = fit(t);
            const auto t32 = static_cast<std::uint32_t>(t);
            if (!any || f > best_f || (f == best_f && t32 < best_s)) {
                any = true;
                best_f = f;
                best_s = t32;
            }
        });
        if (!any || !(cur_f < best_f)) {
            lo = cur;
            break;
        }
        cur = best_s;
        cur_f = best_f;
    }
    for (const std::uint32_t p : path)
        memo[p].store(lo, std::memory_order_relaxed);
}

template <typename FitFn>
BasinMap enumerate_basins_with(FitFn&& fit, const NkInstance& inst, OperatorKind op,
                               const EnumerateOptions& opts) {
    const auto count = inst.solution_count();

    std::vector<std::atomic<std::uint32_t>> memo(count);
    parallel_chunks(count, opts.workers, 1u << 16, [&](std::uint64_t b, std::uint64_t e) {
        for (std::uint64_t s = b; s < e; ++s)
            memo[s].store(kUnresolved, std::memory_order_relaxed);
    });

    parallel_chunks(count, opts.workers, 4096, [&](std::uint64_t b, std::uint64_t e) {
        std::vector<std::uint32_t> path;
        for (std::uint64_t s = b; s < e; ++s)
            resolve_trajectory(fit, inst.n, op, static_cast<std::uint32_t>(s), memo, path);
    });

    BasinMap bm;
    bm.op = op;
    bm.n = inst.n;
    bm.k = inst.k;
    bm.seed = inst.seed;

    std::vector<std::uint32_t> optimum_solutions;
    for (std::uint64_t s = 0; s < count; ++s)
        if (memo[s].load(std::memory_order_relaxed) == s)
            optimum_solutions.push_back(static_cast<std::uint32_t>(s));

    bm.optima.resize(optimum_solutions.size());
    for (std::size_t id = 0; id < optimum_solutions.size(); ++id)
        bm.optima[id] = {optimum_solutions[id], fit(optimum_solutions[id])};

    bm.assignment.resize(count);
    parallel_chunks(count, opts.workers, 1u << 16, [&](std::uint64_t b, std::uint64_t e) {
        for (std::uint64_t s = b; s < e; ++s) {
            const std::uint32_t lo = memo[s].load(std::memory_order_relaxed);
            const auto it = std::lower_bound(optimum_solutions.begin(), optimum_solutions.end(), lo);
            bm.assignment[s] = static_cast<std::uint32_t>(it - optimum_solutions.begin());
        }
    });

    bm.basin_sizes.assign(bm.optima.size(), 0);
    for (const std::uint32_t id : bm.assignment)
        ++bm.basin_sizes[id];

    // The maximum over all solutions is attained at a local optimum of any
    // operator, since climbing never decreases fitness.
    bm.max_fitness = 0.0;
    for (const auto& o : bm.optima)
        bm.max_fitness = std::max(bm.max_fitness, o.fitness);
    for (std::uint32_t id = 0; id < bm.optima.size(); ++id)
        if (bm.optima[id].fitness == bm.max_fitness)
            bm.global_optima.push_back(id);

    return bm;
}

} // namespace detail

/// Runs the hill climb from every solution and partitions the space into
/// basins of attraction. Deterministic: the result does not depend on the
/// worker count or on the order in which start solutions are processed.
inline BasinMap enumerate_basins(const NkInstance& inst, OperatorKind op,
                                 const EnumerateOptions& opts = {}) {
    validate_instance(inst);
    if (inst.n > opts.max_n || inst.n > 31)
        throw CapacityError("basin enumeration requires n <= " +
                            std::to_string(std::min(opts.max_n, 31)) + ", got n=" +
                            std::to_string(inst.n));

    const auto count = inst.solution_count();
    if (count * sizeof(double) <= opts.fitness_cache_budget) {
        std::vector<double> table(count);
        parallel_chunks(count, opts.workers, 4096, [&](std::uint64_t b, std::uint64_t e) {
            for (std::uint64_t s = b; s < e; ++s)
                table[s] = fitness(inst, static_cast<Solution>(s));
        });
        return detail::enumerate_basins_with(
            [&table](Solution s) { return table[s]; }, inst, op, opts);
    }
    return detail::enumerate_basins_with(
        [&inst](Solution s) { return fitness(inst, s); }, inst, op, opts);
}

} // namespace lonet
