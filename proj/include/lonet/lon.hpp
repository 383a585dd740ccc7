#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "lonet/basin.hpp"
#include "lonet/neighborhood.hpp"
#include "lonet/nk_model.hpp"
#include "lonet/parallel.hpp"

namespace lonet {

/// Weighted directed local optima network for one operator. Edge (i,j) with
/// i != j carries the basin transition probability
///   w_ij = (1/|B_i|) * sum over s in B_i, s' in B_j of p(s -> s'),
/// stored only when positive. The probability mass that stays inside a basin
/// is not an edge; it is kept per node in `self_mass` so that
/// self_mass[i] + sum_j w_ij recovers the full distributed mass (1 per node,
/// or 0 for basins whose members all have empty neighborhoods).
struct Lon {
    OperatorKind op = OperatorKind::BitFlip;
    int n = 0;
    int k = 0;
    std::uint64_t seed = 0;

    struct Node {
        Solution solution = 0;
        double fitness = 0.0;
        std::uint64_t basin_size = 0;
        bool is_global = false;
    };

    std::vector<Node> nodes;        // index = optimum id
    std::vector<std::size_t> row;   // CSR offsets, size nodes+1
    std::vector<std::uint32_t> dst;
    std::vector<double> weight;
    std::vector<double> self_mass;  // per node

    std::size_t node_count() const { return nodes.size(); }
    std::size_t edge_count() const { return dst.size(); }
};

namespace detail {

struct KahanCell {
    double sum = 0.0;
    double comp = 0.0;

    void add(double v) {
        const double y = v - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

} // namespace detail

/// Builds the LON from a basin map by a single pass over every solution and
/// its neighborhood, accumulating move probabilities into (source basin,
/// target basin) cells. Compensated summation keeps the per-basin mass
/// conservation check tight.
inline Lon build_lon(const NkInstance& inst, OperatorKind op, const BasinMap& bm,
                     unsigned workers = 0) {
    if (bm.op != op)
        throw std::invalid_argument("build_lon: basin map was produced for operator '" +
                                    std::string(operator_name(bm.op)) + "', requested '" +
                                    operator_name(op) + "'");
    if (bm.n != inst.n || bm.k != inst.k || bm.seed != inst.seed)
        throw std::invalid_argument("build_lon: basin map does not match the instance");
    if (bm.assignment.size() != inst.solution_count())
        throw std::invalid_argument("build_lon: basin map assignment has wrong size");

    const auto count = inst.solution_count();
    const auto nv = bm.optimum_count();

    Lon lon;
    lon.op = op;
    lon.n = inst.n;
    lon.k = inst.k;
    lon.seed = inst.seed;
    lon.nodes.resize(nv);
    for (std::size_t id = 0; id < nv; ++id)
        lon.nodes[id] = {bm.optima[id].solution, bm.optima[id].fitness, bm.basin_sizes[id], false};
    for (const std::uint32_t id : bm.global_optima)
        lon.nodes[id].is_global = true;

    // Basin membership in CSR form; members of each basin are ascending.
    std::vector<std::size_t> member_row(nv + 1, 0);
    for (std::size_t id = 0; id < nv; ++id)
        member_row[id + 1] = member_row[id] + bm.basin_sizes[id];
    std::vector<std::uint32_t> members(count);
    {
        std::vector<std::size_t> cursor(member_row.begin(), member_row.end() - 1);
        for (std::uint64_t s = 0; s < count; ++s)
            members[cursor[bm.assignment[s]]++] = static_cast<std::uint32_t>(s);
    }

    std::vector<std::vector<std::pair<std::uint32_t, double>>> basin_edges(nv);
    lon.self_mass.assign(nv, 0.0);

    std::atomic<std::size_t> next_basin{0};
    run_workers(workers, [&](unsigned) {
        std::vector<detail::KahanCell> acc(nv);
        std::vector<std::uint32_t> touched;
        for (;;) {
            const std::size_t i = next_basin.fetch_add(1, std::memory_order_relaxed);
            if (i >= nv) break;

            touched.clear();
            for (std::size_t m = member_row[i]; m < member_row[i + 1]; ++m) {
                const Solution s = members[m];
                const std::size_t deg = neighbor_count(s, inst.n, op);
                if (deg == 0) continue;
                const double p = 1.0 / static_cast<double>(deg);
                for_each_neighbor(s, inst.n, op, [&](Solution t) {
                    const std::uint32_t j = bm.assignment[t];
                    if (acc[j].sum == 0.0 && acc[j].comp == 0.0) touched.push_back(j);
                    acc[j].add(p);
                });
            }
            std::sort(touched.begin(), touched.end());

            const auto inv_size = 1.0 / static_cast<double>(bm.basin_sizes[i]);
            auto& edges = basin_edges[i];
            edges.reserve(touched.size());
            for (const std::uint32_t j : touched) {
                const double w = acc[j].sum * inv_size;
                if (j == static_cast<std::uint32_t>(i))
                    lon.self_mass[i] = w;
                else if (w > 0.0)
                    edges.emplace_back(j, w);
                acc[j] = {};
            }
        }
    });

    lon.row.assign(nv + 1, 0);
    for (std::size_t i = 0; i < nv; ++i)
        lon.row[i + 1] = lon.row[i] + basin_edges[i].size();
    lon.dst.resize(lon.row[nv]);
    lon.weight.resize(lon.row[nv]);
    for (std::size_t i = 0; i < nv; ++i) {
        std::size_t at = lon.row[i];
        for (const auto& [j, w] : basin_edges[i]) {
            lon.dst[at] = j;
            lon.weight[at] = w;
            ++at;
        }
    }
    return lon;
}

} // namespace lonet
