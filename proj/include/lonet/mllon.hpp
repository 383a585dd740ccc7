#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "lonet/basin.hpp"
#include "lonet/graph.hpp"
#include "lonet/lon.hpp"

namespace lonet {

/// Inter-layer coupling parameters. Defaults give the configuration used for
/// the experiment sweep: no self-loops, unit-weight mirror edges, no
/// different-optimum inter-layer edges.
struct MllonConfig {
    double p_sl = 0.0;        // intra-layer same-optimum (self-loop) probability
    double p_co_mirror = 1.0; // inter-layer same-optimum probability, in (0,1]
    double p_co_diff = 0.0;   // scale on inter-layer basin-overlap edges
};

inline void validate_config(const MllonConfig& cfg) {
    if (!(cfg.p_sl >= 0.0 && cfg.p_sl <= 1.0))
        throw std::invalid_argument("mllon: p_sl must lie in [0,1]");
    if (!(cfg.p_co_mirror > 0.0 && cfg.p_co_mirror <= 1.0))
        throw std::invalid_argument("mllon: p_co_mirror must lie in (0,1]");
    if (!(cfg.p_co_diff >= 0.0 && cfg.p_co_diff <= 1.0))
        throw std::invalid_argument("mllon: p_co_diff must lie in [0,1]");
}

/// Multi-layer LON: one LON layer per operator plus two kinds of inter-layer
/// edges. Mirror edges join supra-nodes whose optimum solutions are identical
/// and carry weight p_co_mirror. Overlap edges join supra-nodes with distinct
/// optima whose basins share solutions and carry weight
/// p_co_diff * |B_i and B_j| / |B_i or B_j|. Both kinds are stored in both
/// directions with equal weight.
struct Mllon {
    MllonConfig cfg;
    int n = 0;
    int k = 0;
    std::uint64_t seed = 0;

    std::vector<Lon> layers;

    struct InterEdge {
        std::uint16_t src_layer = 0;
        std::uint32_t src = 0;
        std::uint16_t dst_layer = 0;
        std::uint32_t dst = 0;
        double weight = 0.0;
    };

    std::vector<InterEdge> mirror_edges;   // both directions per mirrored optimum
    std::vector<InterEdge> overlap_edges;  // both directions per overlapping pair

    std::size_t supra_node_count() const {
        std::size_t total = 0;
        for (const auto& l : layers) total += l.node_count();
        return total;
    }
    std::size_t intra_edge_count() const {
        std::size_t total = 0;
        for (const auto& l : layers) total += l.edge_count();
        return total;
    }
};

/// Jaccard overlap of basin i of `a` with basin j of `b`, computed over the
/// integer-encoded solution sets.
inline double jaccard_overlap(const BasinMap& a, std::uint32_t i,
                              const BasinMap& b, std::uint32_t j) {
    if (a.n != b.n || a.assignment.size() != b.assignment.size())
        throw std::invalid_argument("jaccard_overlap: basin maps cover different solution spaces");
    if (i >= a.optimum_count() || j >= b.optimum_count())
        throw std::invalid_argument("jaccard_overlap: optimum id out of range");
    std::uint64_t common = 0;
    for (std::size_t s = 0; s < a.assignment.size(); ++s)
        if (a.assignment[s] == i && b.assignment[s] == j) ++common;
    const std::uint64_t unioned = a.basin_sizes[i] + b.basin_sizes[j] - common;
    return static_cast<double>(common) / static_cast<double>(unioned);
}

/// Assembles the multi-layer network. Intra-layer edges are taken from each
/// LON unchanged. For every layer pair, mirror edges are found by
/// intersecting the optimum solution lists (identity is exact solution
/// equality), and overlap edges by one joint scan over all solutions that
/// histograms (basin in layer a, basin in layer b) co-membership. When
/// p_co_diff is 0 the overlap edge set is omitted entirely.
inline Mllon build_mllon(const std::vector<std::pair<const BasinMap*, const Lon*>>& layers,
                         const MllonConfig& cfg = {}) {
    validate_config(cfg);
    if (layers.size() < 2)
        throw std::invalid_argument("mllon: at least two layers are required");
    if (layers.size() > 0xFFFF)
        throw std::invalid_argument("mllon: too many layers");
    for (const auto& [bm, lon] : layers) {
        if (bm == nullptr || lon == nullptr)
            throw std::invalid_argument("mllon: null layer input");
        if (bm->op != lon->op)
            throw std::invalid_argument("mllon: basin map and LON operators differ");
        if (bm->optimum_count() != lon->node_count())
            throw std::invalid_argument("mllon: basin map and LON disagree on optima");
    }
    const BasinMap& first = *layers.front().first;
    for (const auto& [bm, lon] : layers) {
        if (bm->n != first.n || bm->k != first.k || bm->seed != first.seed ||
            lon->n != first.n || lon->k != first.k || lon->seed != first.seed)
            throw std::invalid_argument("mllon: layers come from different instances");
    }
    for (std::size_t a = 0; a < layers.size(); ++a)
        for (std::size_t b = a + 1; b < layers.size(); ++b)
            if (layers[a].first->op == layers[b].first->op)
                throw std::invalid_argument("mllon: duplicate operator across layers");

    Mllon m;
    m.cfg = cfg;
    m.n = first.n;
    m.k = first.k;
    m.seed = first.seed;
    m.layers.reserve(layers.size());
    for (const auto& [bm, lon] : layers) m.layers.push_back(*lon);

    for (std::size_t la = 0; la < layers.size(); ++la) {
        for (std::size_t lb = la + 1; lb < layers.size(); ++lb) {
            const BasinMap& a = *layers[la].first;
            const BasinMap& b = *layers[lb].first;

            // Mirror pairs: common optimum solutions of the two layers.
            {
                std::uint32_t i = 0, j = 0;
                while (i < a.optimum_count() && j < b.optimum_count()) {
                    const Solution sa = a.optima[i].solution;
                    const Solution sb = b.optima[j].solution;
                    if (sa < sb) {
                        ++i;
                    } else if (sb < sa) {
                        ++j;
                    } else {
                        m.mirror_edges.push_back({static_cast<std::uint16_t>(la), i,
                                                  static_cast<std::uint16_t>(lb), j,
                                                  cfg.p_co_mirror});
                        m.mirror_edges.push_back({static_cast<std::uint16_t>(lb), j,
                                                  static_cast<std::uint16_t>(la), i,
                                                  cfg.p_co_mirror});
                        ++i;
                        ++j;
                    }
                }
            }

            if (cfg.p_co_diff == 0.0) continue;

            std::unordered_map<std::uint64_t, std::uint64_t> common;
            common.reserve(a.optimum_count() + b.optimum_count());
            for (std::size_t s = 0; s < a.assignment.size(); ++s) {
                const std::uint64_t key =
                    (static_cast<std::uint64_t>(a.assignment[s]) << 32) | b.assignment[s];
                ++common[key];
            }
            std::vector<std::pair<std::uint64_t, std::uint64_t>> cells(common.begin(), common.end());
            std::sort(cells.begin(), cells.end());
            for (const auto& [key, cnt] : cells) {
                const auto i = static_cast<std::uint32_t>(key >> 32);
                const auto j = static_cast<std::uint32_t>(key & 0xFFFFFFFFu);
                if (a.optima[i].solution == b.optima[j].solution) continue;  // mirror case
                const std::uint64_t unioned = a.basin_sizes[i] + b.basin_sizes[j] - cnt;
                const double w =
                    cfg.p_co_diff * (static_cast<double>(cnt) / static_cast<double>(unioned));
                if (w <= 0.0) continue;
                m.overlap_edges.push_back({static_cast<std::uint16_t>(la), i,
                                           static_cast<std::uint16_t>(lb), j, w});
                m.overlap_edges.push_back({static_cast<std::uint16_t>(lb), j,
                                           static_cast<std::uint16_t>(la), i, w});
            }
        }
    }
    return m;
}

inline Mllon build_mllon(const NkInstance& inst,
                         const std::vector<std::pair<const BasinMap*, const Lon*>>& layers,
                         const MllonConfig& cfg = {}) {
    for (const auto& [bm, lon] : layers)
        if (bm != nullptr && (bm->n != inst.n || bm->k != inst.k || bm->seed != inst.seed))
            throw std::invalid_argument("mllon: layer does not match the instance");
    return build_mllon(layers, cfg);
}

/// Single-graph view of the multi-layer network: one node per (layer,
/// optimum), all intra-layer, mirror, and overlap edges kept with their
/// weights. Node order is layer-major, then optimum identifier.
inline Graph flatten(const Mllon& m) {
    Graph g;
    g.n = m.n;
    g.k = m.k;
    g.seed = m.seed;

    std::vector<std::size_t> offset(m.layers.size() + 1, 0);
    for (std::size_t l = 0; l < m.layers.size(); ++l) {
        g.layer_ops.push_back(operator_name(m.layers[l].op));
        offset[l + 1] = offset[l] + m.layers[l].node_count();
    }

    g.nodes.resize(offset.back());
    for (std::size_t l = 0; l < m.layers.size(); ++l) {
        const auto& lon = m.layers[l];
        for (std::uint32_t id = 0; id < lon.node_count(); ++id) {
            const auto& node = lon.nodes[id];
            g.nodes[offset[l] + id] = {static_cast<std::uint16_t>(l), id, node.solution,
                                       node.fitness, node.basin_size, node.is_global};
        }
    }

    const std::size_t ne =
        m.intra_edge_count() + m.mirror_edges.size() + m.overlap_edges.size();
    std::vector<std::size_t> degree(g.nodes.size() + 1, 0);
    for (std::size_t l = 0; l < m.layers.size(); ++l) {
        const auto& lon = m.layers[l];
        for (std::uint32_t id = 0; id < lon.node_count(); ++id)
            degree[offset[l] + id + 1] += lon.row[id + 1] - lon.row[id];
    }
    for (const auto& e : m.mirror_edges) degree[offset[e.src_layer] + e.src + 1] += 1;
    for (const auto& e : m.overlap_edges) degree[offset[e.src_layer] + e.src + 1] += 1;

    g.row.resize(g.nodes.size() + 1);
    g.row[0] = 0;
    for (std::size_t v = 0; v < g.nodes.size(); ++v) g.row[v + 1] = g.row[v] + degree[v + 1];
    g.dst.resize(ne);
    g.weight.resize(ne);
    g.kind.resize(ne);

    std::vector<std::size_t> cursor(g.row.begin(), g.row.end() - 1);
    for (std::size_t l = 0; l < m.layers.size(); ++l) {
        const auto& lon = m.layers[l];
        for (std::uint32_t id = 0; id < lon.node_count(); ++id) {
            const auto src = offset[l] + id;
            for (std::size_t e = lon.row[id]; e < lon.row[id + 1]; ++e) {
                const std::size_t at = cursor[src]++;
                g.dst[at] = static_cast<std::uint32_t>(offset[l] + lon.dst[e]);
                g.weight[at] = lon.weight[e];
                g.kind[at] = EdgeKind::Intra;
            }
        }
    }
    auto place_inter = [&](const std::vector<Mllon::InterEdge>& edges, EdgeKind kind) {
        for (const auto& e : edges) {
            const std::size_t at = cursor[offset[e.src_layer] + e.src]++;
            g.dst[at] = static_cast<std::uint32_t>(offset[e.dst_layer] + e.dst);
            g.weight[at] = e.weight;
            g.kind[at] = kind;
        }
    };
    place_inter(m.mirror_edges, EdgeKind::Mirror);
    place_inter(m.overlap_edges, EdgeKind::Overlap);
    return g;
}

} // namespace lonet
