#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "lonet/basin.hpp"
#include "lonet/graph.hpp"
#include "lonet/io.hpp"
#include "lonet/lon.hpp"
#include "lonet/metrics.hpp"
#include "lonet/mllon.hpp"
#include "lonet/nk_model.hpp"
#include "lonet/version.hpp"

namespace lonet {

struct ExportFormats {
    bool csv = true;
    bool graphml = false;
    bool edgelist = false;

    bool any() const { return csv || graphml || edgelist; }
};

/// Configuration of one experiment sweep. Defaults cover n=18 with every even
/// k from 2 to 16, bit-flip and 1-swap layers, unit mirror weights and no
/// overlap edges.
struct RunConfig {
    int n = 18;
    std::vector<int> k_values = {2, 4, 6, 8, 10, 12, 14, 16};
    std::uint64_t seed = 1;
    unsigned replicates = 1;
    std::vector<OperatorKind> operators = {OperatorKind::BitFlip, OperatorKind::OneSwap};
    MllonConfig mllon;
    std::filesystem::path out_dir = "lonet_out";
    unsigned workers = 0;
    int max_n = 28;
    ExportFormats formats;

    std::vector<std::uint64_t> seeds() const {
        std::vector<std::uint64_t> out;
        for (unsigned r = 0; r < replicates; ++r) out.push_back(seed + r);
        return out;
    }
};

inline void validate_config(const RunConfig& cfg) {
    if (cfg.n < 1)
        throw std::invalid_argument("sweep: n must be positive");
    if (cfg.k_values.empty())
        throw std::invalid_argument("sweep: no k values given");
    for (const int k : cfg.k_values)
        if (k < 0 || k >= cfg.n)
            throw std::invalid_argument("sweep: k=" + std::to_string(k) +
                                        " outside [0, n-1] for n=" + std::to_string(cfg.n));
    if (cfg.replicates < 1)
        throw std::invalid_argument("sweep: replicates must be >= 1");
    if (cfg.operators.empty())
        throw std::invalid_argument("sweep: no operators given");
    for (std::size_t a = 0; a < cfg.operators.size(); ++a)
        for (std::size_t b = a + 1; b < cfg.operators.size(); ++b)
            if (cfg.operators[a] == cfg.operators[b])
                throw std::invalid_argument("sweep: duplicate operator");
    validate_config(cfg.mllon);
}

struct SweepRow {
    std::uint64_t seed = 0;
    int k = 0;
    std::string network;  // operator name, or "mllon" for the flattened network
    MetricsReport report;
};

struct SweepResult {
    std::vector<SweepRow> rows;
};

/// Called after each network's metrics are computed, while the flattened
/// graph is still alive. Used by callers that need node-level data the
/// report does not carry.
using SweepObserver = std::function<void(std::uint64_t seed, int k, const std::string& network,
                                         const Graph& graph, const MetricsReport& report)>;

namespace detail {

inline std::string zero_pad2(int v) {
    std::string s = std::to_string(v);
    return s.size() < 2 ? "0" + s : s;
}

inline std::string instance_stem(int n, int k, std::uint64_t seed) {
    return "nk_n" + std::to_string(n) + "_k" + zero_pad2(k) + "_s" + std::to_string(seed);
}

inline void write_metrics_bundle(const std::filesystem::path& dir, const std::string& network,
                                 const Provenance& prov, const MetricsReport& report,
                                 const Graph& graph) {
    std::filesystem::create_directories(dir);
    write_metrics_json(dir / "metrics.json", network, prov, report);
    write_metrics_csv(dir / "metrics.csv", network, prov, report);
    const auto clouds = local_point_clouds(graph);
    write_point_cloud_csv(dir / "cumstrength.csv", clouds.cumulative_strength, prov);
    write_point_cloud_csv(dir / "strength_basin.csv", clouds.strength_vs_basin, prov);
    write_point_cloud_csv(dir / "fitness_basin.csv", clouds.fitness_vs_basin, prov);
}

inline void export_lon_artifacts(const std::filesystem::path& dir, const std::string& stem,
                                 const BasinMap& bm, const Lon& lon, const ExportFormats& fmt) {
    if (fmt.csv) {
        write_basins(dir / (stem + ".basins"), bm);
        write_lon_nodes_csv(dir / (stem + ".nodes.csv"), lon);
        write_lon_edges_csv(dir / (stem + ".edges.csv"), lon);
    }
    if (fmt.graphml || fmt.edgelist) {
        const Graph g = to_graph(lon);
        if (fmt.graphml) write_graphml(dir / (stem + ".graphml"), g);
        if (fmt.edgelist)
            write_edgelist(dir / (stem + ".edges.txt"), g,
                           {lon.n, lon.k, lon.seed, operator_name(lon.op)});
    }
}

inline void export_mllon_artifacts(const std::filesystem::path& dir, const std::string& stem,
                                   const Mllon& m, const Graph& flat, const ExportFormats& fmt) {
    if (fmt.csv) {
        write_supra_nodes_csv(dir / (stem + ".supra.nodes.csv"), m);
        write_supra_edges_csv(dir / (stem + ".supra.csv"), m);
    }
    if (fmt.graphml) write_graphml(dir / (stem + ".graphml"), flat);
    if (fmt.edgelist)
        write_edgelist(dir / (stem + ".edges.txt"), flat, {m.n, m.k, m.seed, joined_operators(m)});
}

} // namespace detail

/// Runs the full pipeline for every (seed, k): generate the instance, build
/// one LON per operator, assemble and flatten the multi-layer network, and
/// compute the metric suite for each network. Writes per-network metric
/// bundles plus consolidated tables under cfg.out_dir; graph artifacts are
/// written in the selected export formats. Reruns with an identical
/// configuration produce byte-identical files.
inline SweepResult run_sweep(const RunConfig& cfg, std::ostream* log = nullptr,
                             const SweepObserver& observer = {}) {
    validate_config(cfg);
    std::filesystem::create_directories(cfg.out_dir);

    SweepResult result;
    const MetricsOptions mopts{cfg.workers};
    const EnumerateOptions eopts{cfg.workers, cfg.max_n};

    for (const std::uint64_t seed : cfg.seeds()) {
        for (const int k : cfg.k_values) {
            const auto dir =
                cfg.out_dir / ("seed" + std::to_string(seed)) / ("k" + detail::zero_pad2(k));
            std::filesystem::create_directories(dir);
            const auto stem = detail::instance_stem(cfg.n, k, seed);

            if (log) *log << "[sweep] seed=" << seed << " k=" << k << " generating\n";
            const NkInstance inst = generate_instance(cfg.n, k, seed);
            if (cfg.formats.csv) write_instance(dir / (stem + ".json"), inst);

            std::vector<BasinMap> basins;
            std::vector<Lon> lons;
            basins.reserve(cfg.operators.size());
            lons.reserve(cfg.operators.size());
            for (const OperatorKind op : cfg.operators) {
                if (log) *log << "[sweep] seed=" << seed << " k=" << k << " basins "
                              << operator_name(op) << "\n";
                basins.push_back(enumerate_basins(inst, op, eopts));
                lons.push_back(build_lon(inst, op, basins.back(), cfg.workers));
                detail::export_lon_artifacts(
                    dir, stem + "_" + operator_name(op), basins.back(), lons.back(), cfg.formats);
            }

            for (std::size_t l = 0; l < lons.size(); ++l) {
                const std::string network = operator_name(cfg.operators[l]);
                if (log) *log << "[sweep] seed=" << seed << " k=" << k << " metrics " << network
                              << "\n";
                const Graph g = to_graph(lons[l]);
                const MetricsReport report = compute_metrics(g, mopts);
                detail::write_metrics_bundle(dir / ("metrics_" + network), network,
                                             {cfg.n, k, seed, network}, report, g);
                result.rows.push_back({seed, k, network, report});
                if (observer) observer(seed, k, network, g, report);
            }

            if (cfg.operators.size() >= 2) {
                if (log) *log << "[sweep] seed=" << seed << " k=" << k << " mllon\n";
                std::vector<std::pair<const BasinMap*, const Lon*>> layers;
                for (std::size_t l = 0; l < lons.size(); ++l)
                    layers.emplace_back(&basins[l], &lons[l]);
                const Mllon m = build_mllon(inst, layers, cfg.mllon);
                const Graph flat = flatten(m);
                detail::export_mllon_artifacts(dir, stem + "_mllon", m, flat, cfg.formats);

                const MetricsReport report = compute_metrics(flat, mopts);
                detail::write_metrics_bundle(dir / "metrics_mllon", "mllon",
                                             {cfg.n, k, seed, joined_operators(m)}, report, flat);
                result.rows.push_back({seed, k, "mllon", report});
                if (observer) observer(seed, k, "mllon", flat, report);
            }
        }
    }

    // Consolidated tables, rows grouped by network type, then k, then seed.
    std::vector<std::string> network_order;
    for (const OperatorKind op : cfg.operators) network_order.emplace_back(operator_name(op));
    if (cfg.operators.size() >= 2) network_order.emplace_back("mllon");

    const std::string head_comment = "# n=" + std::to_string(cfg.n) + " seed=" +
                                     std::to_string(cfg.seed) + " replicates=" +
                                     std::to_string(cfg.replicates) + " tool=" + kToolName + " " +
                                     kVersion + "\n";
    std::string all_csv = head_comment + metrics_csv_header() + "\n";
    std::string table1 = head_comment + "network,k,seed,nv,ne,knn,fnn\n";
    std::string table2 = head_comment + "network,k,seed,wcc,wcc_rand,l,st,y2,zout,l_go\n";
    for (const auto& network : network_order) {
        for (const int k : cfg.k_values) {
            for (const std::uint64_t seed : cfg.seeds()) {
                for (const auto& row : result.rows) {
                    if (row.network != network || row.k != k || row.seed != seed) continue;
                    const Provenance prov{cfg.n, k, seed, network};
                    all_csv += metrics_csv_row(network, prov, row.report) + "\n";

                    const auto& r = row.report;
                    std::string line1 = network + "," + std::to_string(k) + "," +
                                        std::to_string(seed) + "," + std::to_string(r.nv) + "," +
                                        std::to_string(r.ne) + ",";
                    detail::append_optional(line1, r.knn);
                    line1 += ',';
                    detail::append_optional(line1, r.fnn);
                    table1 += line1 + "\n";

                    std::string line2 =
                        network + "," + std::to_string(k) + "," + std::to_string(seed) + ",";
                    detail::append_double(line2, r.wcc_mean);
                    line2 += ',';
                    detail::append_double(line2, r.wcc_rand);
                    line2 += ',';
                    detail::append_optional(line2, r.l_mean);
                    line2 += ',';
                    detail::append_double(line2, r.st_mean);
                    line2 += ',';
                    detail::append_double(line2, r.y2_mean);
                    line2 += ',';
                    detail::append_double(line2, r.zout_mean);
                    line2 += ',';
                    detail::append_optional(line2, r.l_go_mean);
                    table2 += line2 + "\n";
                }
            }
        }
    }
    detail::write_file(cfg.out_dir / "metrics.csv", all_csv);
    detail::write_file(cfg.out_dir / "table1.csv", table1);
    detail::write_file(cfg.out_dir / "table2.csv", table2);
    return result;
}

} // namespace lonet
