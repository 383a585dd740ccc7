// lonet: build and analyze local optima networks of NK landscapes.
//
// Subcommands: generate, lon, mllon, metrics, sweep. Every data file records
// the (n, k, seed, operator) provenance it was produced from, and downstream
// subcommands refuse inputs whose provenance disagrees. Exit code is 0 on
// success and nonzero with a diagnostic on stderr otherwise.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lonet/lonet.hpp"

namespace fs = std::filesystem;

namespace {

fs::path resolve_out_dir(const std::string& cli_value, const fs::path& fallback) {
    if (!cli_value.empty()) return cli_value;
    if (const char* env = std::getenv("LONET_OUT_DIR"); env != nullptr && *env != '\0')
        return env;
    return fallback;
}

std::string joined(const std::vector<std::string>& parts, char sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) out += sep;
        out += parts[i];
    }
    return out;
}

struct GenerateArgs {
    int n = 18;
    std::vector<int> k_values = {2, 4, 6, 8, 10, 12, 14, 16};
    std::uint64_t seed = 1;
    std::string out;
};

int cmd_generate(const GenerateArgs& args) {
    const fs::path dir = resolve_out_dir(args.out, fs::current_path());
    fs::create_directories(dir);
    for (const int k : args.k_values) {
        const lonet::NkInstance inst = lonet::generate_instance(args.n, k, args.seed);
        const fs::path path =
            dir / (lonet::detail::instance_stem(args.n, k, args.seed) + ".json");
        lonet::write_instance(path, inst);
        std::cout << path.string() << "\n";
    }
    return 0;
}

struct LonArgs {
    std::string instance;
    std::string op = "bitflip";
    std::string out;
    unsigned workers = 0;
    int max_n = 28;
    bool graphml = false;
    bool edgelist = false;
};

int cmd_lon(const LonArgs& args) {
    const lonet::NkInstance inst = lonet::read_instance(args.instance);
    const lonet::OperatorKind op = lonet::parse_operator(args.op);
    const fs::path dir = resolve_out_dir(args.out, fs::path(args.instance).parent_path());
    fs::create_directories(dir);

    const lonet::BasinMap bm =
        lonet::enumerate_basins(inst, op, {args.workers, args.max_n});
    const lonet::Lon lon = lonet::build_lon(inst, op, bm, args.workers);

    const std::string stem =
        lonet::detail::instance_stem(inst.n, inst.k, inst.seed) + "_" + args.op;
    lonet::ExportFormats formats;
    formats.csv = true;
    formats.graphml = args.graphml;
    formats.edgelist = args.edgelist;
    lonet::detail::export_lon_artifacts(dir, stem, bm, lon, formats);

    std::cout << "nv=" << lon.node_count() << " ne=" << lon.edge_count() << "\n";
    std::cout << (dir / (stem + ".basins")).string() << "\n";
    return 0;
}

struct MllonArgs {
    std::vector<std::string> basins;
    double p_sl = 0.0;
    double p_co_mirror = 1.0;
    double p_co_diff = 0.0;
    std::string out;
    bool graphml = false;
    bool edgelist = false;
};

fs::path sibling_with_suffix(const fs::path& basins_path, const char* suffix) {
    std::string name = basins_path.filename().string();
    const std::string ext = ".basins";
    if (name.size() <= ext.size() || name.substr(name.size() - ext.size()) != ext)
        throw lonet::IoError("expected a .basins file, got " + basins_path.string());
    name.replace(name.size() - ext.size(), ext.size(), suffix);
    return basins_path.parent_path() / name;
}

int cmd_mllon(const MllonArgs& args) {
    if (args.basins.size() < 2)
        throw std::invalid_argument("mllon needs at least two .basins inputs, got " +
                                    std::to_string(args.basins.size()));
    std::vector<lonet::BasinMap> basins;
    std::vector<lonet::Lon> lons;
    for (const auto& path : args.basins) {
        basins.push_back(lonet::read_basins(path));
        lons.push_back(lonet::read_lon(sibling_with_suffix(path, ".nodes.csv"),
                                       sibling_with_suffix(path, ".edges.csv")));
    }
    std::vector<std::pair<const lonet::BasinMap*, const lonet::Lon*>> layers;
    for (std::size_t l = 0; l < basins.size(); ++l)
        layers.emplace_back(&basins[l], &lons[l]);

    const lonet::MllonConfig cfg{args.p_sl, args.p_co_mirror, args.p_co_diff};
    const lonet::Mllon m = lonet::build_mllon(layers, cfg);
    const lonet::Graph flat = lonet::flatten(m);

    const fs::path dir = resolve_out_dir(args.out, fs::path(args.basins[0]).parent_path());
    fs::create_directories(dir);
    const std::string stem = lonet::detail::instance_stem(m.n, m.k, m.seed) + "_mllon";
    lonet::ExportFormats formats;
    formats.csv = true;
    formats.graphml = args.graphml;
    formats.edgelist = args.edgelist;
    lonet::detail::export_mllon_artifacts(dir, stem, m, flat, formats);

    std::cout << "supra_nodes=" << m.supra_node_count() << " supra_edges=" << flat.edge_count()
              << " mirror_edges=" << m.mirror_edges.size()
              << " overlap_edges=" << m.overlap_edges.size() << "\n";
    std::cout << (dir / (stem + ".supra.csv")).string() << "\n";
    return 0;
}

struct MetricsArgs {
    std::string network;
    std::string out;
    unsigned workers = 0;
};

bool ends_with(const std::string& text, const std::string& suffix) {
    return text.size() >= suffix.size() &&
           text.compare(text.size() - suffix.size(), suffix.size(), suffix) == 0;
}

int cmd_metrics(const MetricsArgs& args) {
    const std::string path = args.network;
    lonet::Graph g;
    std::string base;
    if (ends_with(path, ".supra.csv")) {
        base = path.substr(0, path.size() - std::string(".supra.csv").size());
        g = lonet::read_supra(base + ".supra.nodes.csv", path);
    } else if (ends_with(path, ".edges.csv")) {
        base = path.substr(0, path.size() - std::string(".edges.csv").size());
        g = lonet::to_graph(lonet::read_lon(base + ".nodes.csv", path));
    } else {
        throw lonet::IoError("metrics expects an .edges.csv or .supra.csv artifact, got " + path);
    }

    const std::string network = g.layer_ops.size() > 1 ? "mllon" : g.layer_ops.front();
    const lonet::Provenance prov{g.n, g.k, g.seed, joined(g.layer_ops, ',')};
    const lonet::MetricsReport report = lonet::compute_metrics(g, {args.workers});

    const fs::path dir = resolve_out_dir(args.out, fs::path(base + ".metrics"));
    lonet::detail::write_metrics_bundle(dir, network, prov, report, g);

    std::cout << "nv=" << report.nv << " ne=" << report.ne;
    if (report.l_go_mean) std::cout << " l_go=" << *report.l_go_mean;
    std::cout << "\n" << dir.string() << "\n";
    return 0;
}

struct SweepArgs {
    int n = 18;
    std::vector<int> k_values = {2, 4, 6, 8, 10, 12, 14, 16};
    std::uint64_t seed = 1;
    unsigned replicates = 1;
    std::vector<std::string> operators = {"bitflip", "swap"};
    double p_sl = 0.0;
    double p_co_mirror = 1.0;
    double p_co_diff = 0.0;
    std::string out;
    unsigned workers = 0;
    int max_n = 28;
    std::vector<std::string> formats = {"csv"};
};

int cmd_sweep(const SweepArgs& args) {
    lonet::RunConfig cfg;
    cfg.n = args.n;
    cfg.k_values = args.k_values;
    cfg.seed = args.seed;
    cfg.replicates = args.replicates;
    cfg.operators.clear();
    for (const auto& name : args.operators) cfg.operators.push_back(lonet::parse_operator(name));
    cfg.mllon = {args.p_sl, args.p_co_mirror, args.p_co_diff};
    cfg.out_dir = resolve_out_dir(args.out, "lonet_out");
    cfg.workers = args.workers;
    cfg.max_n = args.max_n;
    cfg.formats = {false, false, false};
    for (const auto& f : args.formats) {
        if (f == "csv") cfg.formats.csv = true;
        else if (f == "graphml") cfg.formats.graphml = true;
        else if (f == "edgelist") cfg.formats.edgelist = true;
        else if (f != "none")
            throw std::invalid_argument("unknown format '" + f +
                                        "' (expected csv, graphml, edgelist, or none)");
    }

    lonet::run_sweep(cfg, &std::cout);
    std::cout << cfg.out_dir.string() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"local optima network toolkit for NK landscapes"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* cmd_gen = app.add_subcommand("generate", "generate NK instance files");
    cmd_gen->add_option("--n", gen.n, "number of binary variables")->capture_default_str();
    cmd_gen->add_option("--k", gen.k_values, "epistasis degrees (comma separated)")
        ->delimiter(',')
        ->capture_default_str();
    cmd_gen->add_option("--seed", gen.seed, "instance seed")->capture_default_str();
    cmd_gen->add_option("--out", gen.out, "output directory (default: $LONET_OUT_DIR or cwd)");

    LonArgs lon;
    auto* cmd_l = app.add_subcommand("lon", "enumerate basins and build one LON layer");
    cmd_l->add_option("--instance", lon.instance, "instance JSON file")->required();
    cmd_l->add_option("--operator", lon.op, "bitflip or swap")->capture_default_str();
    cmd_l->add_option("--out", lon.out, "output directory (default: next to the instance)");
    cmd_l->add_option("--workers", lon.workers, "worker threads (0 = all cores)");
    cmd_l->add_option("--max-n", lon.max_n, "capacity guard on n")->capture_default_str();
    cmd_l->add_flag("--graphml", lon.graphml, "also export GraphML");
    cmd_l->add_flag("--edgelist", lon.edgelist, "also export a plain edge list");

    MllonArgs mll;
    auto* cmd_m = app.add_subcommand("mllon", "combine LON layers into a multi-layer network");
    cmd_m->add_option("basins", mll.basins, "two or more .basins files (one per layer)");
    cmd_m->add_option("--p-sl", mll.p_sl, "self-loop probability")->capture_default_str();
    cmd_m->add_option("--p-co-mirror", mll.p_co_mirror, "mirror edge weight")
        ->capture_default_str();
    cmd_m->add_option("--p-co-diff", mll.p_co_diff, "overlap edge scale")->capture_default_str();
    cmd_m->add_option("--out", mll.out, "output directory (default: next to the first input)");
    cmd_m->add_flag("--graphml", mll.graphml, "also export flattened GraphML");
    cmd_m->add_flag("--edgelist", mll.edgelist, "also export a plain edge list");

    MetricsArgs met;
    auto* cmd_met = app.add_subcommand("metrics", "compute the metric suite for a network");
    cmd_met->add_option("network", met.network, "an .edges.csv or .supra.csv artifact")
        ->required();
    cmd_met->add_option("--out", met.out, "output directory (default: <artifact>.metrics)");
    cmd_met->add_option("--workers", met.workers, "worker threads (0 = all cores)");

    SweepArgs sw;
    auto* cmd_sw = app.add_subcommand("sweep", "run the full experiment pipeline");
    cmd_sw->add_option("--n", sw.n, "number of binary variables")->capture_default_str();
    cmd_sw->add_option("--k", sw.k_values, "epistasis degrees (comma separated)")
        ->delimiter(',')
        ->capture_default_str();
    cmd_sw->add_option("--seed", sw.seed, "first instance seed")->capture_default_str();
    cmd_sw->add_option("--replicates", sw.replicates, "number of consecutive seeds")
        ->capture_default_str();
    cmd_sw->add_option("--operators", sw.operators, "layer operators (comma separated)")
        ->delimiter(',')
        ->capture_default_str();
    cmd_sw->add_option("--p-sl", sw.p_sl, "self-loop probability")->capture_default_str();
    cmd_sw->add_option("--p-co-mirror", sw.p_co_mirror, "mirror edge weight")
        ->capture_default_str();
    cmd_sw->add_option("--p-co-diff", sw.p_co_diff, "overlap edge scale")->capture_default_str();
    cmd_sw->add_option("--out", sw.out, "output directory (default: $LONET_OUT_DIR or lonet_out)");
    cmd_sw->add_option("--workers", sw.workers, "worker threads (0 = all cores)");
    cmd_sw->add_option("--max-n", sw.max_n, "capacity guard on n")->capture_default_str();
    cmd_sw->add_option("--formats", sw.formats, "graph exports: csv, graphml, edgelist, none")
        ->delimiter(',')
        ->capture_default_str();

    try {
        app.parse(argc, argv);
        if (cmd_gen->parsed()) return cmd_generate(gen);
        if (cmd_l->parsed()) return cmd_lon(lon);
        if (cmd_m->parsed()) return cmd_mllon(mll);
        if (cmd_met->parsed()) return cmd_metrics(met);
        if (cmd_sw->parsed()) return cmd_sweep(sw);
        return 1;
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
