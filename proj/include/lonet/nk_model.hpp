#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "lonet/rng.hpp"

namespace lonet {

// A solution is a bit string of length n encoded as an integer:
// bit i of the encoding is variable i.
using Solution = std::uint64_t;

/// NK instance under the random neighborhood model: n binary variables, each
/// contributing a sub-function of itself plus k distinct linked variables.
///
/// Reproducibility contract: regenerating with the same (n, k, seed) yields a
/// bit-identical instance on any platform. Randomness is split into one
/// SplitMix64 substream per variable; substream seeds are the first n outputs
/// of a root SplitMix64 seeded with `seed`. Within variable i's substream the
/// draw order is: the k link indices (partial Fisher-Yates over the candidate
/// list {0..n-1}\{i} in ascending order), then the 2^(k+1) table values.
struct NkInstance {
    int n = 0;
    int k = 0;
    std::uint64_t seed = 0;
    std::vector<std::vector<int>> links;      // per variable: k distinct indices != i
    std::vector<std::vector<double>> tables;  // per variable: 2^(k+1) values in [0,1)

    std::size_t solution_count() const { return std::size_t{1} << n; }
};

inline void validate_instance(const NkInstance& inst) {
    if (inst.n < 1 || inst.n > 63)
        throw std::invalid_argument("nk: n must be in [1, 63], got " + std::to_string(inst.n));
    if (inst.k < 0 || inst.k >= inst.n)
        throw std::invalid_argument("nk: k must satisfy 0 <= k <= n-1, got k=" +
                                    std::to_string(inst.k) + " with n=" + std::to_string(inst.n));
    const std::size_t table_size = std::size_t{1} << (inst.k + 1);
    if (inst.links.size() != static_cast<std::size_t>(inst.n) ||
        inst.tables.size() != static_cast<std::size_t>(inst.n))
        throw std::invalid_argument("nk: links/tables must have one entry per variable");
    for (int i = 0; i < inst.n; ++i) {
        const auto& l = inst.links[static_cast<std::size_t>(i)];
        if (l.size() != static_cast<std::size_t>(inst.k))
            throw std::invalid_argument("nk: links[" + std::to_string(i) + "] must have k entries");
        for (std::size_t a = 0; a < l.size(); ++a) {
            if (l[a] < 0 || l[a] >= inst.n || l[a] == i)
                throw std::invalid_argument("nk: links[" + std::to_string(i) + "] contains invalid index");
            for (std::size_t b = a + 1; b < l.size(); ++b)
                if (l[a] == l[b])
                    throw std::invalid_argument("nk: links[" + std::to_string(i) + "] contains duplicates");
        }
        const auto& t = inst.tables[static_cast<std::size_t>(i)];
        if (t.size() != table_size)
            throw std::invalid_argument("nk: tables[" + std::to_string(i) + "] must have 2^(k+1) entries");
        for (double v : t)
            if (!(v >= 0.0 && v < 1.0))
                throw std::invalid_argument("nk: table values must lie in [0,1)");
    }
}

/// Draws the link lists uniformly without replacement and the table values
/// i.i.d. uniform on [0,1). Deterministic given (n, k, seed).
inline NkInstance generate_instance(int n, int k, std::uint64_t seed) {
    if (n < 1 || n > 63)
        throw std::invalid_argument("nk: n must be in [1, 63], got " + std::to_string(n));
    if (k < 0 || k >= n)
        throw std::invalid_argument("nk: k must satisfy 0 <= k <= n-1, got k=" +
                                    std::to_string(k) + " with n=" + std::to_string(n));

    NkInstance inst;
    inst.n = n;
    inst.k = k;
    inst.seed = seed;
    inst.links.resize(static_cast<std::size_t>(n));
    inst.tables.resize(static_cast<std::size_t>(n));

    SplitMix64 root(seed);
    std::vector<std::uint64_t> stream_seeds(static_cast<std::size_t>(n));
    for (auto& s : stream_seeds) s = root.next();

    const std::size_t table_size = std::size_t{1} << (k + 1);
    std::vector<int> pool;
    pool.reserve(static_cast<std::size_t>(n) - 1);
    for (int i = 0; i < n; ++i) {
        SplitMix64 g(stream_seeds[static_cast<std::size_t>(i)]);

        pool.clear();
        for (int j = 0; j < n; ++j)
            if (j != i) pool.push_back(j);
        auto& l = inst.links[static_cast<std::size_t>(i)];
        l.resize(static_cast<std::size_t>(k));
        for (int t = 0; t < k; ++t) {
            const auto pick = static_cast<std::size_t>(t) +
                              g.next_below(static_cast<std::uint64_t>(n - 1 - t));
            std::swap(pool[static_cast<std::size_t>(t)], pool[pick]);
            l[static_cast<std::size_t>(t)] = pool[static_cast<std::size_t>(t)];
        }

        auto& tab = inst.tables[static_cast<std::size_t>(i)];
        tab.resize(table_size);
        for (auto& v : tab) v = g.next_double();
    }
    return inst;
}

/// F(s): mean of the n sub-function values. The lookup index for variable i
/// packs the variable's own bit as the most significant bit, followed by the
/// bits at links[i] in stored order.
inline double fitness(const NkInstance& inst, Solution s) {
    if (inst.n < 64 && (s >> inst.n) != 0)
        throw std::invalid_argument("nk: solution does not fit the instance length");
    double sum = 0.0;
    for (int i = 0; i < inst.n; ++i) {
        std::size_t idx = (s >> i) & 1u;
        for (int j : inst.links[static_cast<std::size_t>(i)])
            idx = (idx << 1) | ((s >> j) & 1u);
        sum += inst.tables[static_cast<std::size_t>(i)][idx];
    }
    return sum / inst.n;
}

/// Fitness of every solution, indexed by integer encoding. 2^n * 8 bytes.
inline std::vector<double> fitness_table(const NkInstance& inst) {
    std::vector<double> table(inst.solution_count());
    for (std::size_t s = 0; s < table.size(); ++s)
        table[s] = fitness(inst, static_cast<Solution>(s));
    return table;
}

} // namespace lonet
