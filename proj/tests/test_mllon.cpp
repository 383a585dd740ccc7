#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "lonet/mllon.hpp"
#include "lonet/rng.hpp"
#include "oracles.hpp"

using lonet::BasinMap;
using lonet::build_lon;
using lonet::build_mllon;
using lonet::enumerate_basins;
using lonet::flatten;
using lonet::generate_instance;
using lonet::jaccard_overlap;
using lonet::Lon;
using lonet::Mllon;
using lonet::MllonConfig;
using lonet::NkInstance;
using lonet::OperatorKind;
using lonet::Solution;

namespace {

NkInstance step_instance(int n) {
    NkInstance inst;
    inst.n = n;
    inst.k = 0;
    inst.seed = 0;
    inst.links.assign(static_cast<std::size_t>(n), {});
    inst.tables.assign(static_cast<std::size_t>(n), {0.1, 0.9});
    return inst;
}

struct Layers {
    BasinMap bm_bf, bm_sw;
    Lon lon_bf, lon_sw;

    std::vector<std::pair<const BasinMap*, const Lon*>> refs() const {
        return {{&bm_bf, &lon_bf}, {&bm_sw, &lon_sw}};
    }
};

Layers make_layers(const NkInstance& inst) {
    Layers l;
    l.bm_bf = enumerate_basins(inst, OperatorKind::BitFlip);
    l.lon_bf = build_lon(inst, OperatorKind::BitFlip, l.bm_bf);
    l.bm_sw = enumerate_basins(inst, OperatorKind::OneSwap);
    l.lon_sw = build_lon(inst, OperatorKind::OneSwap, l.bm_sw);
    return l;
}

// Hand-made pair of basin maps over n=2 with basins {0,1,2},{3} and {0,1},{2,3}.
std::pair<BasinMap, BasinMap> handmade_maps() {
    BasinMap a;
    a.n = 2;
    a.assignment = {0, 0, 0, 1};
    a.optima = {{0, 0.5}, {3, 0.75}};
    a.basin_sizes = {3, 1};
    BasinMap b;
    b.n = 2;
    b.assignment = {0, 0, 1, 1};
    b.optima = {{0, 0.5}, {2, 0.75}};
    b.basin_sizes = {2, 2};
    return {a, b};
}

} // namespace

TEST_CASE("jaccard overlap of identical, disjoint, and partial basins") {
    const auto [a, b] = handmade_maps();
    REQUIRE(jaccard_overlap(a, 0, a, 0) == 1.0);   // identical
    REQUIRE(jaccard_overlap(a, 1, b, 0) == 0.0);   // {3} vs {0,1}
    REQUIRE(jaccard_overlap(a, 0, b, 1) == 0.25);  // {0,1,2} vs {2,3}
}

TEST_CASE("jaccard overlap matches the set oracle on real basins") {
    const auto inst = generate_instance(5, 2, 12);
    const auto l = make_layers(inst);
    const auto oracle_bf = oracle::basins(inst, OperatorKind::BitFlip);
    const auto oracle_sw = oracle::basins(inst, OperatorKind::OneSwap);
    for (std::uint32_t i = 0; i < l.bm_bf.optimum_count(); ++i) {
        for (std::uint32_t j = 0; j < l.bm_sw.optimum_count(); ++j) {
            const auto& set_i = oracle_bf.at(l.bm_bf.optima[i].solution);
            const auto& set_j = oracle_sw.at(l.bm_sw.optima[j].solution);
            REQUIRE(jaccard_overlap(l.bm_bf, i, l.bm_sw, j) ==
                    Catch::Approx(oracle::jaccard(set_i, set_j)).margin(1e-15));
        }
    }
}

TEST_CASE("jaccard overlap rejects mismatched solution spaces") {
    const auto [a, b] = handmade_maps();
    BasinMap c = b;
    c.n = 3;
    c.assignment = {0, 0, 1, 1, 0, 0, 1, 1};
    REQUIRE_THROWS_AS(jaccard_overlap(a, 0, c, 0), std::invalid_argument);
    REQUIRE_THROWS_AS(jaccard_overlap(a, 5, b, 0), std::invalid_argument);
}

TEST_CASE("separable landscape mirrors its single bit-flip optimum") {
    const auto inst = step_instance(5);
    const auto l = make_layers(inst);
    const auto m = build_mllon(inst, l.refs());

    REQUIRE(m.layers[0].node_count() == 1);
    REQUIRE(m.overlap_edges.empty());
    // the global optimum exists in both layers, so a mirror pair must exist
    bool found = false;
    for (const auto& e : m.mirror_edges) {
        REQUIRE(e.weight == 1.0);
        if (e.src_layer == 0 && m.layers[0].nodes[e.src].solution == 0b11111) found = true;
    }
    REQUIRE(found);
    REQUIRE(m.mirror_edges.size() == 2);  // one pair, both directions
}

TEST_CASE("default configuration omits overlap edges entirely") {
    const auto inst = generate_instance(6, 2, 90);
    const auto l = make_layers(inst);
    const auto m = build_mllon(inst, l.refs());
    REQUIRE(m.overlap_edges.empty());
    for (const auto& e : m.mirror_edges) REQUIRE(e.weight == 1.0);
}

TEST_CASE("mirror pairs are exactly the shared optima, stored both ways") {
    const auto inst = generate_instance(7, 2, 33);
    const auto l = make_layers(inst);
    const auto m = build_mllon(inst, l.refs());

    std::set<Solution> shared;
    {
        std::set<Solution> bf;
        for (const auto& o : l.bm_bf.optima) bf.insert(o.solution);
        for (const auto& o : l.bm_sw.optima)
            if (bf.count(o.solution)) shared.insert(o.solution);
    }
    REQUIRE(m.mirror_edges.size() == 2 * shared.size());

    std::map<Solution, int> seen_forward, seen_backward;
    for (const auto& e : m.mirror_edges) {
        const auto& src_lon = m.layers[e.src_layer];
        const auto& dst_lon = m.layers[e.dst_layer];
        REQUIRE(e.src_layer != e.dst_layer);
        REQUIRE(src_lon.nodes[e.src].solution == dst_lon.nodes[e.dst].solution);
        REQUIRE(shared.count(src_lon.nodes[e.src].solution) == 1);
        (e.src_layer == 0 ? seen_forward : seen_backward)[src_lon.nodes[e.src].solution]++;
    }
    for (const Solution s : shared) {
        REQUIRE(seen_forward[s] == 1);
        REQUIRE(seen_backward[s] == 1);
    }

    // mirrored basins always share the optimum itself
    for (const auto& e : m.mirror_edges) {
        if (e.src_layer != 0) continue;
        REQUIRE(jaccard_overlap(l.bm_bf, e.src, l.bm_sw, e.dst) > 0.0);
    }
}

TEST_CASE("every global optimum induces a mirror pair") {
    const auto inst = generate_instance(6, 3, 77);
    const auto l = make_layers(inst);
    const auto m = build_mllon(inst, l.refs());
    for (const auto go : l.bm_bf.global_optima) {
        const Solution s = l.bm_bf.optima[go].solution;
        bool found = false;
        for (const auto& e : m.mirror_edges)
            if (e.src_layer == 0 && m.layers[0].nodes[e.src].solution == s) found = true;
        REQUIRE(found);
    }
}

TEST_CASE("overlap edges scale the oracle jaccard by p_co_diff") {
    const auto inst = generate_instance(4, 1, 3);
    const auto l = make_layers(inst);
    MllonConfig cfg;
    cfg.p_co_diff = 0.5;
    const auto m = build_mllon(inst, l.refs(), cfg);

    REQUIRE_FALSE(m.overlap_edges.empty());
    const auto oracle_bf = oracle::basins(inst, OperatorKind::BitFlip);
    const auto oracle_sw = oracle::basins(inst, OperatorKind::OneSwap);

    std::map<std::pair<Solution, Solution>, double> got;
    for (const auto& e : m.overlap_edges) {
        if (e.src_layer != 0) continue;
        const Solution si = m.layers[0].nodes[e.src].solution;
        const Solution sj = m.layers[1].nodes[e.dst].solution;
        REQUIRE(si != sj);
        got[{si, sj}] = e.weight;
    }
    // every cross-layer pair with common members and distinct optima appears
    for (const auto& [lo_i, set_i] : oracle_bf) {
        for (const auto& [lo_j, set_j] : oracle_sw) {
            const double jac = oracle::jaccard(set_i, set_j);
            if (lo_i == lo_j || jac == 0.0) {
                REQUIRE(got.count({lo_i, lo_j}) == 0);
            } else {
                REQUIRE(got.at({lo_i, lo_j}) == Catch::Approx(0.5 * jac).margin(1e-15));
            }
        }
    }
}

TEST_CASE("flattening preserves nodes, edges, and attributes") {
    const auto inst = generate_instance(6, 2, 41);
    const auto l = make_layers(inst);
    const auto m = build_mllon(inst, l.refs());
    const auto g = flatten(m);

    REQUIRE(g.node_count() == l.lon_bf.node_count() + l.lon_sw.node_count());
    REQUIRE(g.edge_count() ==
            l.lon_bf.edge_count() + l.lon_sw.edge_count() + m.mirror_edges.size());

    // layer-major node order with intact attributes
    for (std::uint32_t id = 0; id < l.lon_bf.node_count(); ++id) {
        REQUIRE(g.nodes[id].layer == 0);
        REQUIRE(g.nodes[id].solution == l.lon_bf.nodes[id].solution);
        REQUIRE(g.nodes[id].fitness == l.lon_bf.nodes[id].fitness);
        REQUIRE(g.nodes[id].basin_size == l.lon_bf.nodes[id].basin_size);
        REQUIRE(g.nodes[id].is_global == l.lon_bf.nodes[id].is_global);
    }
    for (std::uint32_t id = 0; id < l.lon_sw.node_count(); ++id) {
        const auto v = l.lon_bf.node_count() + id;
        REQUIRE(g.nodes[v].layer == 1);
        REQUIRE(g.nodes[v].solution == l.lon_sw.nodes[id].solution);
    }

    // intra edges keep their weights; mirror edges carry weight 1
    std::size_t mirror_seen = 0;
    for (std::uint32_t u = 0; u < g.node_count(); ++u) {
        for (std::size_t e = g.row[u]; e < g.row[u + 1]; ++e) {
            if (g.kind[e] == lonet::EdgeKind::Mirror) {
                REQUIRE(g.weight[e] == 1.0);
                REQUIRE(g.nodes[u].layer != g.nodes[g.dst[e]].layer);
                REQUIRE(g.nodes[u].solution == g.nodes[g.dst[e]].solution);
                ++mirror_seen;
            } else {
                REQUIRE(g.nodes[u].layer == g.nodes[g.dst[e]].layer);
            }
        }
    }
    REQUIRE(mirror_seen == m.mirror_edges.size());
}

TEST_CASE("flattened edge count identity holds with overlap edges") {
    const auto inst = generate_instance(5, 2, 7);
    const auto l = make_layers(inst);
    MllonConfig cfg;
    cfg.p_co_diff = 0.25;
    const auto m = build_mllon(inst, l.refs(), cfg);
    const auto g = flatten(m);
    REQUIRE(g.edge_count() == l.lon_bf.edge_count() + l.lon_sw.edge_count() +
                                  m.mirror_edges.size() + m.overlap_edges.size());
    REQUIRE(m.mirror_edges.size() % 2 == 0);
    REQUIRE(m.overlap_edges.size() % 2 == 0);
}

TEST_CASE("a single-layer network flattens to its own LON") {
    const auto inst = generate_instance(5, 1, 19);
    const auto bm = enumerate_basins(inst, OperatorKind::BitFlip);
    const auto lon = build_lon(inst, OperatorKind::BitFlip, bm);

    Mllon single;
    single.n = inst.n;
    single.k = inst.k;
    single.seed = inst.seed;
    single.layers = {lon};
    const auto g = flatten(single);
    const auto direct = lonet::to_graph(lon);
    REQUIRE(g.row == direct.row);
    REQUIRE(g.dst == direct.dst);
    REQUIRE(g.weight == direct.weight);
    REQUIRE(g.node_count() == direct.node_count());
}

TEST_CASE("invalid layer combinations are rejected") {
    const auto inst = generate_instance(5, 1, 4);
    const auto l = make_layers(inst);

    // fewer than two layers
    std::vector<std::pair<const BasinMap*, const Lon*>> one = {{&l.bm_bf, &l.lon_bf}};
    REQUIRE_THROWS_AS(build_mllon(inst, one), std::invalid_argument);

    // duplicate operators
    std::vector<std::pair<const BasinMap*, const Lon*>> dup = {{&l.bm_bf, &l.lon_bf},
                                                               {&l.bm_bf, &l.lon_bf}};
    REQUIRE_THROWS_AS(build_mllon(inst, dup), std::invalid_argument);

    // layers from different instances
    const auto other = generate_instance(5, 1, 5);
    const auto lo = make_layers(other);
    std::vector<std::pair<const BasinMap*, const Lon*>> mixed = {{&l.bm_bf, &l.lon_bf},
                                                                 {&lo.bm_sw, &lo.lon_sw}};
    REQUIRE_THROWS_AS(build_mllon(mixed), std::invalid_argument);

    // configuration outside the declared ranges
    REQUIRE_THROWS_AS(build_mllon(inst, l.refs(), {0.0, 0.0, 0.0}), std::invalid_argument);
    REQUIRE_THROWS_AS(build_mllon(inst, l.refs(), {0.0, 1.5, 0.0}), std::invalid_argument);
    REQUIRE_THROWS_AS(build_mllon(inst, l.refs(), {-0.1, 1.0, 0.0}), std::invalid_argument);
    REQUIRE_THROWS_AS(build_mllon(inst, l.refs(), {0.0, 1.0, 1.1}), std::invalid_argument);
}
