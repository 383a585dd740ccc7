#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "lonet/lon.hpp"

namespace lonet {

enum class EdgeKind : std::uint8_t { Intra, Mirror, Overlap };

inline const char* edge_kind_name(EdgeKind k) {
    switch (k) {
        case EdgeKind::Mirror: return "mirror";
        case EdgeKind::Overlap: return "overlap";
        default: return "intra";
    }
}

/// A weighted directed graph with per-node landscape attributes. Both a
/// single-layer LON and a flattened multi-layer network take this form, so
/// all metrics consume it. Nodes are ordered layer-major, then by optimum
/// identifier within the layer.
struct Graph {
    int n = 0;
    int k = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> layer_ops;  // operator name per layer

    struct Node {
        std::uint16_t layer = 0;
        std::uint32_t id = 0;  // optimum id within its layer
        Solution solution = 0;
        double fitness = 0.0;
        std::uint64_t basin_size = 0;
        bool is_global = false;
    };

    std::vector<Node> nodes;
    std::vector<std::size_t> row;  // CSR offsets, size nodes+1
    std::vector<std::uint32_t> dst;
    std::vector<double> weight;
    std::vector<EdgeKind> kind;

    std::size_t node_count() const { return nodes.size(); }
    std::size_t edge_count() const { return dst.size(); }

    std::vector<std::uint32_t> global_node_ids() const {
        std::vector<std::uint32_t> ids;
        for (std::uint32_t v = 0; v < nodes.size(); ++v)
            if (nodes[v].is_global) ids.push_back(v);
        return ids;
    }
};

inline Graph to_graph(const Lon& lon) {
    Graph g;
    g.n = lon.n;
    g.k = lon.k;
    g.seed = lon.seed;
    g.layer_ops = {operator_name(lon.op)};
    g.nodes.resize(lon.node_count());
    for (std::uint32_t id = 0; id < lon.node_count(); ++id) {
        const auto& node = lon.nodes[id];
        g.nodes[id] = {0, id, node.solution, node.fitness, node.basin_size, node.is_global};
    }
    g.row = lon.row;
    g.dst = lon.dst;
    g.weight = lon.weight;
    g.kind.assign(g.dst.size(), EdgeKind::Intra);
    return g;
}

/// In-edge adjacency of a Graph, for reverse traversals.
struct ReverseAdjacency {
    std::vector<std::size_t> row;
    std::vector<std::uint32_t> src;
    std::vector<double> weight;
};

inline ReverseAdjacency build_reverse(const Graph& g) {
    ReverseAdjacency rev;
    const auto nv = g.node_count();
    rev.row.assign(nv + 1, 0);
    for (const std::uint32_t v : g.dst)
        ++rev.row[v + 1];
    std::partial_sum(rev.row.begin(), rev.row.end(), rev.row.begin());
    rev.src.resize(g.edge_count());
    rev.weight.resize(g.edge_count());
    std::vector<std::size_t> cursor(rev.row.begin(), rev.row.end() - 1);
    for (std::uint32_t u = 0; u < nv; ++u) {
        for (std::size_t e = g.row[u]; e < g.row[u + 1]; ++e) {
            const std::size_t at = cursor[g.dst[e]]++;
            rev.src[at] = u;
            rev.weight[at] = g.weight[e];
        }
    }
    return rev;
}

/// Component label per node, ignoring edge direction. Labels are the smallest
/// node index in each component.
inline std::vector<std::uint32_t> weakly_connected_components(const Graph& g) {
    const auto nv = g.node_count();
    std::vector<std::uint32_t> parent(nv);
    for (std::uint32_t v = 0; v < nv; ++v) parent[v] = v;

    auto find = [&](std::uint32_t v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    };
    for (std::uint32_t u = 0; u < nv; ++u) {
        for (std::size_t e = g.row[u]; e < g.row[u + 1]; ++e) {
            const std::uint32_t a = find(u);
            const std::uint32_t b = find(g.dst[e]);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    }
    std::vector<std::uint32_t> label(nv);
    for (std::uint32_t v = 0; v < nv; ++v) label[v] = find(v);
    return label;
}

inline std::size_t component_count(const Graph& g) {
    const auto label = weakly_connected_components(g);
    std::size_t count = 0;
    for (std::uint32_t v = 0; v < label.size(); ++v)
        if (label[v] == v) ++count;
    return count;
}

} // namespace lonet
