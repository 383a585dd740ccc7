#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lonet/graph.hpp"
#include "lonet/parallel.hpp"

namespace lonet {

struct DescriptiveStats {
    std::size_t nv = 0;
    std::size_t ne = 0;
    std::optional<double> knn;  // strength vs. weighted neighbor strength
    std::optional<double> fnn;  // fitness vs. weighted neighbor fitness
};

struct PathStats {
    std::optional<double> mean;
    double reachable_fraction = 0.0;
};

struct StrengthStats {
    double st_mean = 0.0;
    double y2_mean = 0.0;
    double zout_mean = 0.0;
};

struct PointCloud {
    std::string x_label;
    std::string y_label;
    std::vector<std::pair<double, double>> points;
};

struct LocalPointClouds {
    PointCloud cumulative_strength;
    PointCloud strength_vs_basin;
    PointCloud fitness_vs_basin;
};

struct MetricsReport {
    std::size_t nv = 0;
    std::size_t ne = 0;
    std::optional<double> knn;
    std::optional<double> fnn;
    double wcc_mean = 0.0;
    double wcc_rand = 0.0;
    std::optional<double> l_mean;
    double l_reachable_fraction = 0.0;
    double st_mean = 0.0;
    double y2_mean = 0.0;
    double zout_mean = 0.0;
    std::optional<double> l_go_mean;
    double l_go_reach_fraction = 0.0;
};

struct MetricsOptions {
    unsigned workers = 0;
};

namespace detail {

inline std::vector<double> out_strengths(const Graph& g) {
    std::vector<double> st(g.node_count(), 0.0);
    for (std::uint32_t u = 0; u < g.node_count(); ++u)
        for (std::size_t e = g.row[u]; e < g.row[u + 1]; ++e)
            st[u] += g.weight[e];
    return st;
}

// Undefined (nullopt) when either marginal has zero variance.
inline std::optional<double> pearson(const std::vector<double>& xs,
                                     const std::vector<double>& ys) {
    const std::size_t m = xs.size();
    if (m < 2) return std::nullopt;
    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        mean_x += xs[i];
        mean_y += ys[i];
    }
    mean_x /= static_cast<double>(m);
    mean_y /= static_cast<double>(m);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double dx = xs[i] - mean_x;
        const double dy = ys[i] - mean_y;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) return std::nullopt;
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

} // namespace detail

/// Node and edge counts plus the two Pearson correlations.
///
/// knn is the degree assortativity: the Pearson correlation over directed
/// edges between the source's out-degree and the target's in-degree.
///
/// fnn correlates a node's fitness with the transition-weighted fitness of
/// its out-neighbors, sum_j w_ij * f_j. The weights are left unnormalized:
/// within a layer a node's total transition mass including the self
/// transition is 1, so this is the mean next-step fitness with the self term
/// dropped. Nodes without outgoing weight are excluded from the fnn sample.
inline DescriptiveStats descriptive_stats(const Graph& g) {
    if (g.node_count() == 0)
        throw std::invalid_argument("descriptive_stats: empty graph");
    DescriptiveStats d;
    d.nv = g.node_count();
    d.ne = g.edge_count();

    std::vector<double> zout(d.nv, 0.0), zin(d.nv, 0.0);
    for (std::uint32_t u = 0; u < d.nv; ++u) {
        for (std::size_t e = g.row[u]; e < g.row[u + 1]; ++e) {
            zout[u] += 1.0;
            zin[g.dst[e]] += 1.0;
        }
    }
    std::vector<double> deg_src, deg_dst;
    deg_src.reserve(d.ne);
    deg_dst.reserve(d.ne);
    for (std::uint32_t u = 0; u < d.nv; ++u) {
        for (std::size_t e = g.row[u]; e < g.row[u + 1]; ++e) {
            deg_src.push_back(zout[u]);
            deg_dst.push_back(zin[g.dst[e]]);
        }
    }
    d.knn = detail::pearson(deg_src, deg_dst);

    const auto st = detail::out_strengths(g);
    std::vector<double> xs_f, ys_f;
    for (std::uint32_t u = 0; u < d.nv; ++u) {
        if (st[u] <= 0.0) continue;
        double nb_f = 0.0;
        for (std::size_t e = g.row[u]; e < g.row[u + 1]; ++e)
            nb_f += g.weight[e] * g.nodes[g.dst[e]].fitness;
        xs_f.push_back(g.nodes[u].fitness);
        ys_f.push_back(nb_f);
    }
    d.fnn = detail::pearson(xs_f, ys_f);
    return d;
}

/// Weighted clustering coefficient averaged over all nodes, computed on the
/// symmetrized graph: an undirected edge exists where either direction does,
/// with weight (w_ij + w_ji)/2 and absent directions counting as 0. Per node,
///   c_i = 1 / (s_i (k_i - 1)) * sum over ordered neighbor pairs (j,h) with
///         an edge j-h of (w'_ij + w'_ih) / 2,
/// and c_i = 0 when the node has fewer than two neighbors.
inline double weighted_clustering(const Graph& g, unsigned workers = 0) {
    const auto nv = g.node_count();
    if (nv == 0) return 0.0;

    // Symmetrized adjacency in CSR form.
    std::vector<std::pair<std::uint64_t, double>> pairs;
    pairs.reserve(g.edge_count());
    for (std::uint32_t u = 0; u < nv; ++u)
        for (std::size_t e = g.row[u]; e < g.row[u + 1]; ++e) {
            const std::uint32_t v = g.dst[e];
            if (v == u) continue;
            const std::uint64_t key = (static_cast<std::uint64_t>(std::min(u, v)) << 32) |
                                      std::max(u, v);
            pairs.emplace_back(key, g.weight[e]);
        }
    std::sort(pairs.begin(), pairs.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    std::vector<std::size_t> urow(nv + 1, 0);
    std::size_t und_count = 0;
    for (std::size_t i = 0; i < pairs.size();) {
        std::size_t j = i;
        while (j < pairs.size() && pairs[j].first == pairs[i].first) ++j;
        ++und_count;
        const auto a = static_cast<std::uint32_t>(pairs[i].first >> 32);
        const auto b = static_cast<std::uint32_t>(pairs[i].first & 0xFFFFFFFFu);
        ++urow[a + 1];
        ++urow[b + 1];
        i = j;
    }
    for (std::size_t v = 0; v < nv; ++v) urow[v + 1] += urow[v];
    std::vector<std::uint32_t> udst(2 * und_count);
    std::vector<double> uw(2 * und_count);
    {
        std::vector<std::size_t> cursor(urow.begin(), urow.end() - 1);
        for (std::size_t i = 0; i < pairs.size();) {
            std::size_t j = i;
            double sum = 0.0;
            while (j < pairs.size() && pairs[j].first == pairs[i].first) sum += pairs[j++].second;
            const auto a = static_cast<std::uint32_t>(pairs[i].first >> 32);
            const auto b = static_cast<std::uint32_t>(pairs[i].first & 0xFFFFFFFFu);
            const double w = sum / 2.0;
            udst[cursor[a]] = b;
            uw[cursor[a]++] = w;
            udst[cursor[b]] = a;
            uw[cursor[b]++] = w;
            i = j;
        }
    }

    std::vector<double> coeff(nv, 0.0);
    std::atomic<std::uint64_t> node_cursor{0};
    run_workers(workers, [&](unsigned) {
        std::vector<double> mark_w(nv, 0.0);
        std::vector<std::uint32_t> mark_epoch(nv, 0);
        std::uint32_t epoch = 0;
        for (;;) {
            const std::uint64_t lo = node_cursor.fetch_add(256, std::memory_order_relaxed);
            if (lo >= nv) break;
            const std::uint64_t hi = std::min<std::uint64_t>(lo + 256, nv);
            for (std::uint64_t i = lo; i < hi; ++i) {
            const std::size_t deg = urow[i + 1] - urow[i];
            if (deg < 2) continue;
            double strength = 0.0;
            ++epoch;
            for (std::size_t e = urow[i]; e < urow[i + 1]; ++e) {
                strength += uw[e];
                mark_epoch[udst[e]] = epoch;
                mark_w[udst[e]] = uw[e];
            }
            double acc = 0.0;
            for (std::size_t e = urow[i]; e < urow[i + 1]; ++e) {
                const std::uint32_t j = udst[e];
                const double w_ij = uw[e];
                for (std::size_t f = urow[j]; f < urow[j + 1]; ++f) {
                    const std::uint32_t h = udst[f];
                    if (mark_epoch[h] == epoch)
                        acc += (w_ij + mark_w[h]) / 2.0;
                }
            }
            coeff[i] = acc / (strength * static_cast<double>(deg - 1));
            }
        }
    });

    double total = 0.0;
    for (const double c : coeff) total += c;
    return total / static_cast<double>(nv);
}

/// Expected clustering coefficient of an Erdos-Renyi graph with the same
/// vertex count and mean degree: mean_degree / (nv - 1), clamped to [0,1].
inline double random_clustering_baseline(std::size_t nv, double mean_degree) {
    if (nv < 2)
        throw std::invalid_argument("random_clustering_baseline: need nv >= 2");
    return std::clamp(mean_degree / static_cast<double>(nv - 1), 0.0, 1.0);
}

namespace detail {

// Direction-optimizing BFS over the directed graph: expands level by level
// top-down, switching to bottom-up scans of unvisited nodes when the frontier
// covers a large share of the edges. Returns the sum of hop distances and the
// number of nodes reached (the source excluded).
class BfsScratch {
public:
    explicit BfsScratch(std::size_t nv)
        : dist_(nv, 0), epoch_(nv, 0) {}

    void run(const Graph& g, const ReverseAdjacency& rev, std::uint32_t source,
             std::uint64_t& dist_sum, std::uint64_t& reached) {
        const std::size_t nv = g.node_count();
        const std::uint64_t m = g.edge_count();
        ++epoch_id_;
        frontier_.clear();
        frontier_.push_back(source);
        epoch_[source] = epoch_id_;
        dist_[source] = 0;
        dist_sum = 0;
        reached = 0;

        std::uint32_t level = 0;
        std::uint64_t frontier_size = 1;
        std::uint64_t frontier_out = g.row[source + 1] - g.row[source];
        bool bottom_up = false;
        bool frontier_valid = true;

        while (frontier_size > 0) {
            if (!bottom_up) {
                if (frontier_out * 14 > m && m > 0) bottom_up = true;
            } else if (frontier_size * 24 < nv) {
                bottom_up = false;
                frontier_valid = false;
            }

            std::uint64_t next_size = 0;
            if (bottom_up) {
                for (std::uint32_t v = 0; v < nv; ++v) {
                    if (epoch_[v] == epoch_id_) continue;
                    for (std::size_t e = rev.row[v]; e < rev.row[v + 1]; ++e) {
                        const std::uint32_t u = rev.src[e];
                        if (epoch_[u] == epoch_id_ && dist_[u] == level) {
                            epoch_[v] = epoch_id_;
                            dist_[v] = level + 1;
                            ++next_size;
                            break;
                        }
                    }
                }
                frontier_valid = false;
            } else {
                if (!frontier_valid) {
                    frontier_.clear();
                    for (std::uint32_t v = 0; v < nv; ++v)
                        if (epoch_[v] == epoch_id_ && dist_[v] == level) frontier_.push_back(v);
                    frontier_valid = true;
                }
                next_.clear();
                std::uint64_t next_out = 0;
                for (const std::uint32_t u : frontier_) {
                    for (std::size_t e = g.row[u]; e < g.row[u + 1]; ++e) {
                        const std::uint32_t v = g.dst[e];
                        if (epoch_[v] != epoch_id_) {
                            epoch_[v] = epoch_id_;
                            dist_[v] = level + 1;
                            next_.push_back(v);
                            next_out += g.row[v + 1] - g.row[v];
                        }
                    }
                }
                next_size = next_.size();
                frontier_.swap(next_);
                frontier_out = next_out;
            }

            ++level;
            dist_sum += static_cast<std::uint64_t>(level) * next_size;
            reached += next_size;
            frontier_size = next_size;
        }
    }

private:
    std::vector<std::uint32_t> dist_;
    std::vector<std::uint32_t> epoch_;
    std::uint32_t epoch_id_ = 0;
    std::vector<std::uint32_t> frontier_;
    std::vector<std::uint32_t> next_;
};

} // namespace detail

/// Mean hop distance over all reachable ordered pairs (i != j) of the
/// directed graph, plus the fraction of ordered pairs that are reachable.
inline PathStats shortest_path_stats(const Graph& g, unsigned workers = 0) {
    const auto nv = g.node_count();
    if (nv <= 1) return {std::nullopt, 0.0};

    const ReverseAdjacency rev = build_reverse(g);
    const unsigned nworkers = effective_workers(workers);
    std::vector<std::uint64_t> sums(nworkers, 0), counts(nworkers, 0);
    std::atomic<std::uint32_t> cursor{0};
    run_workers(nworkers, [&](unsigned id) {
        detail::BfsScratch scratch(nv);
        std::uint64_t local_sum = 0, local_count = 0;
        for (;;) {
            const std::uint32_t s = cursor.fetch_add(1, std::memory_order_relaxed);
            if (s >= nv) break;
            std::uint64_t dist_sum = 0, reached = 0;
            scratch.run(g, rev, s, dist_sum, reached);
            local_sum += dist_sum;
            local_count += reached;
        }
        sums[id] = local_sum;
        counts[id] = local_count;
    });

    std::uint64_t total_sum = 0, total_pairs = 0;
    for (unsigned id = 0; id < nworkers; ++id) {
        total_sum += sums[id];
        total_pairs += counts[id];
    }
    PathStats ps;
    const auto all_pairs = static_cast<double>(nv) * static_cast<double>(nv - 1);
    ps.reachable_fraction = static_cast<double>(total_pairs) / all_pairs;
    if (total_pairs > 0)
        ps.mean = static_cast<double>(total_sum) / static_cast<double>(total_pairs);
    return ps;
}

/// Weighted distance from every node to its nearest global optimum, using
/// edge length 1 - w (so heavier transitions are shorter). Implemented as one
/// multi-source Dijkstra over the reversed graph. The mean is taken over the
/// nodes that reach some global optimum; global optima themselves count 0.
inline PathStats path_to_global_optima(const Graph& g,
                                       const std::vector<std::uint32_t>& go_nodes) {
    if (go_nodes.empty())
        throw std::invalid_argument("path_to_global_optima: no global optimum nodes");
    for (const double w : g.weight)
        if (w > 1.0)
            throw std::invalid_argument("path_to_global_optima: edge weight exceeds 1");

    const auto nv = g.node_count();
    const ReverseAdjacency rev = build_reverse(g);
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(nv, kInf);

    using Entry = std::pair<double, std::uint32_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
    for (const std::uint32_t v : go_nodes) {
        if (v >= nv) throw std::invalid_argument("path_to_global_optima: node id out of range");
        dist[v] = 0.0;
        queue.emplace(0.0, v);
    }
    while (!queue.empty()) {
        const auto [d, u] = queue.top();
        queue.pop();
        if (d > dist[u]) continue;
        for (std::size_t e = rev.row[u]; e < rev.row[u + 1]; ++e) {
            const std::uint32_t v = rev.src[e];
            const double cand = d + (1.0 - rev.weight[e]);
            if (cand < dist[v]) {
                dist[v] = cand;
                queue.emplace(cand, v);
            }
        }
    }

    PathStats ps;
    double sum = 0.0;
    std::size_t reached = 0;
    for (std::size_t v = 0; v < nv; ++v) {
        if (dist[v] == kInf) continue;
        sum += dist[v];
        ++reached;
    }
    ps.reachable_fraction = static_cast<double>(reached) / static_cast<double>(nv);
    if (reached > 0) ps.mean = sum / static_cast<double>(reached);
    return ps;
}

inline PathStats path_to_global_optima(const Graph& g) {
    return path_to_global_optima(g, g.global_node_ids());
}

/// Mean out-strength, disparity, and out-degree over nodes with at least one
/// outgoing edge. Disparity y2_i = sum_j (w_ij / st_i)^2 is 1/zout for a node
/// with equal weights and 1 for a node with a single edge.
inline StrengthStats strength_disparity_degree(const Graph& g) {
    StrengthStats stats;
    std::size_t counted = 0;
    for (std::uint32_t u = 0; u < g.node_count(); ++u) {
        const std::size_t deg = g.row[u + 1] - g.row[u];
        if (deg == 0) continue;
        double st = 0.0;
        for (std::size_t e = g.row[u]; e < g.row[u + 1]; ++e) st += g.weight[e];
        double y2 = 0.0;
        for (std::size_t e = g.row[u]; e < g.row[u + 1]; ++e) {
            const double frac = g.weight[e] / st;
            y2 += frac * frac;
        }
        stats.st_mean += st;
        stats.y2_mean += y2;
        stats.zout_mean += static_cast<double>(deg);
        ++counted;
    }
    if (counted > 0) {
        stats.st_mean /= static_cast<double>(counted);
        stats.y2_mean /= static_cast<double>(counted);
        stats.zout_mean /= static_cast<double>(counted);
    }
    return stats;
}

/// Raw point clouds for external plotting: the cumulative strength
/// distribution P(st >= c) over the distinct strength values, and the
/// strength/fitness vs. basin-size scatters in node order.
inline LocalPointClouds local_point_clouds(const Graph& g) {
    for (const auto& node : g.nodes) {
        if (!std::isfinite(node.fitness) || node.basin_size == 0)
            throw std::invalid_argument("local_point_clouds: node lacks fitness or basin size");
    }
    LocalPointClouds clouds;
    clouds.cumulative_strength.x_label = "strength";
    clouds.cumulative_strength.y_label = "p_strength_ge";
    clouds.strength_vs_basin.x_label = "strength";
    clouds.strength_vs_basin.y_label = "basin_size";
    clouds.fitness_vs_basin.x_label = "fitness";
    clouds.fitness_vs_basin.y_label = "basin_size";

    const auto st = detail::out_strengths(g);
    const auto nv = g.node_count();

    std::vector<double> sorted(st);
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < nv;) {
        std::size_t j = i;
        while (j < nv && sorted[j] == sorted[i]) ++j;
        // nv - i nodes have strength >= sorted[i]
        clouds.cumulative_strength.points.emplace_back(
            sorted[i], static_cast<double>(nv - i) / static_cast<double>(nv));
        i = j;
    }

    clouds.strength_vs_basin.points.reserve(nv);
    clouds.fitness_vs_basin.points.reserve(nv);
    for (std::uint32_t v = 0; v < nv; ++v) {
        clouds.strength_vs_basin.points.emplace_back(st[v],
                                                     static_cast<double>(g.nodes[v].basin_size));
        clouds.fitness_vs_basin.points.emplace_back(g.nodes[v].fitness,
                                                    static_cast<double>(g.nodes[v].basin_size));
    }
    return clouds;
}

/// Full metric suite for one network.
inline MetricsReport compute_metrics(const Graph& g, const MetricsOptions& opts = {}) {
    MetricsReport r;
    const auto d = descriptive_stats(g);
    r.nv = d.nv;
    r.ne = d.ne;
    r.knn = d.knn;
    r.fnn = d.fnn;
    r.wcc_mean = weighted_clustering(g, opts.workers);
    r.wcc_rand = r.nv >= 2
                     ? random_clustering_baseline(
                           r.nv, 2.0 * static_cast<double>(r.ne) / static_cast<double>(r.nv))
                     : 0.0;
    const auto paths = shortest_path_stats(g, opts.workers);
    r.l_mean = paths.mean;
    r.l_reachable_fraction = paths.reachable_fraction;
    const auto strengths = strength_disparity_degree(g);
    r.st_mean = strengths.st_mean;
    r.y2_mean = strengths.y2_mean;
    r.zout_mean = strengths.zout_mean;
    const auto go = g.global_node_ids();
    if (!go.empty()) {
        const auto gp = path_to_global_optima(g, go);
        r.l_go_mean = gp.mean;
        r.l_go_reach_fraction = gp.reachable_fraction;
    }
    return r;
}

} // namespace lonet
