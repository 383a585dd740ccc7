#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lonet/basin.hpp"
#include "lonet/graph.hpp"
#include "lonet/lon.hpp"
#include "lonet/metrics.hpp"
#include "lonet/mllon.hpp"
#include "lonet/nk_model.hpp"
#include "lonet/version.hpp"

namespace lonet {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

// Doubles are always written with 17 significant digits, locale-independent,
// so every value round-trips exactly through its decimal representation.
inline void append_double(std::string& out, double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    out.append(buf, res.ptr);
}

inline std::string format_double(double v) {
    std::string s;
    append_double(s, v);
    return s;
}

inline void append_u64(std::string& out, std::uint64_t v) {
    char buf[24];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, res.ptr);
}

inline double parse_double(std::string_view text, const std::string& context) {
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        throw IoError(context + ": bad real value '" + std::string(text) + "'");
    return v;
}

inline std::uint64_t parse_u64(std::string_view text, const std::string& context) {
    std::uint64_t v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        throw IoError(context + ": bad integer value '" + std::string(text) + "'");
    return v;
}

inline std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == sep) {
            out.push_back(line.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

inline std::vector<std::string> read_lines(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("write failed for " + path.string());
}

} // namespace detail

/// Instance identity carried by every data file, so downstream commands can
/// refuse inputs that were produced from different instances.
struct Provenance {
    int n = 0;
    int k = 0;
    std::uint64_t seed = 0;
    std::string operators;  // "bitflip", "swap", or comma-joined for supra files
};

namespace detail {

inline std::string provenance_comment(const Provenance& p) {
    std::string line = "# n=" + std::to_string(p.n) + " k=" + std::to_string(p.k) +
                       " seed=" + std::to_string(p.seed);
    if (!p.operators.empty()) line += " operators=" + p.operators;
    line += " tool=";
    line += kToolName;
    line += " ";
    line += kVersion;
    line += "\n";
    return line;
}

inline Provenance parse_provenance_comment(const std::string& line, const std::string& context) {
    if (line.rfind("# ", 0) != 0) throw IoError(context + ": missing provenance comment");
    Provenance p;
    bool have_n = false, have_k = false, have_seed = false;
    for (const auto token : split(std::string_view(line).substr(2), ' ')) {
        const auto eq = token.find('=');
        if (eq == std::string_view::npos) continue;
        const auto key = token.substr(0, eq);
        const auto value = token.substr(eq + 1);
        if (key == "n") {
            p.n = static_cast<int>(parse_u64(value, context));
            have_n = true;
        } else if (key == "k") {
            p.k = static_cast<int>(parse_u64(value, context));
            have_k = true;
        } else if (key == "seed") {
            p.seed = parse_u64(value, context);
            have_seed = true;
        } else if (key == "operators") {
            p.operators = std::string(value);
        }
    }
    if (!have_n || !have_k || !have_seed)
        throw IoError(context + ": incomplete provenance comment");
    return p;
}

} // namespace detail

// ---------------------------------------------------------------------------
// NK instance files (JSON)

inline void write_instance(const std::filesystem::path& path, const NkInstance& inst) {
    std::string out;
    out.reserve(64 + inst.solution_count() / 8);
    out += "{\n";
    out += "  \"format\": \"lonet-nk-instance\",\n";
    out += "  \"tool\": \"";
    out += kToolName;
    out += " ";
    out += kVersion;
    out += "\",\n";
    out += "  \"n\": " + std::to_string(inst.n) + ",\n";
    out += "  \"k\": " + std::to_string(inst.k) + ",\n";
    out += "  \"seed\": " + std::to_string(inst.seed) + ",\n";
    out += "  \"links\": [";
    for (int i = 0; i < inst.n; ++i) {
        out += i == 0 ? "[" : ", [";
        const auto& l = inst.links[static_cast<std::size_t>(i)];
        for (std::size_t a = 0; a < l.size(); ++a) {
            if (a > 0) out += ", ";
            out += std::to_string(l[a]);
        }
        out += "]";
    }
    out += "],\n";
    out += "  \"tables\": [";
    for (int i = 0; i < inst.n; ++i) {
        out += i == 0 ? "[" : ", [";
        const auto& t = inst.tables[static_cast<std::size_t>(i)];
        for (std::size_t a = 0; a < t.size(); ++a) {
            if (a > 0) out += ", ";
            detail::append_double(out, t[a]);
        }
        out += "]";
    }
    out += "]\n}\n";
    detail::write_file(path, out);
}

inline NkInstance read_instance(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw IoError("instance parse error in " + path.string() + ": " + e.what());
    }
    try {
        if (doc.at("format").get<std::string>() != "lonet-nk-instance")
            throw IoError("not an instance file: " + path.string());
        NkInstance inst;
        inst.n = doc.at("n").get<int>();
        inst.k = doc.at("k").get<int>();
        inst.seed = doc.at("seed").get<std::uint64_t>();
        inst.links = doc.at("links").get<std::vector<std::vector<int>>>();
        inst.tables = doc.at("tables").get<std::vector<std::vector<double>>>();
        validate_instance(inst);
        return inst;
    } catch (const nlohmann::json::exception& e) {
        throw IoError("instance parse error in " + path.string() + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw IoError("invalid instance in " + path.string() + ": " + e.what());
    }
}

// ---------------------------------------------------------------------------
// Basin map files

inline void write_basins(const std::filesystem::path& path, const BasinMap& bm) {
    std::string out;
    out.reserve(bm.assignment.size() * 4 + bm.optima.size() * 48 + 256);
    out += "lonet-basins,1\n";
    out += "n," + std::to_string(bm.n) + "\n";
    out += "k," + std::to_string(bm.k) + "\n";
    out += "seed," + std::to_string(bm.seed) + "\n";
    out += "operator,";
    out += operator_name(bm.op);
    out += "\n";
    out += "tool,";
    out += kToolName;
    out += " ";
    out += kVersion;
    out += "\n";
    out += "optima," + std::to_string(bm.optima.size()) + "\n";
    out += "id,solution,fitness,basin_size\n";
    for (std::size_t id = 0; id < bm.optima.size(); ++id) {
        detail::append_u64(out, id);
        out += ',';
        detail::append_u64(out, bm.optima[id].solution);
        out += ',';
        detail::append_double(out, bm.optima[id].fitness);
        out += ',';
        detail::append_u64(out, bm.basin_sizes[id]);
        out += '\n';
    }
    out += "assignment," + std::to_string(bm.assignment.size()) + "\n";
    for (const std::uint32_t id : bm.assignment) {
        detail::append_u64(out, id);
        out += '\n';
    }
    detail::write_file(path, out);
}

inline BasinMap read_basins(const std::filesystem::path& path) {
    const auto lines = detail::read_lines(path);
    const std::string ctx = "basins file " + path.string();
    if (lines.empty() || lines[0] != "lonet-basins,1")
        throw IoError(ctx + ": bad or missing header");

    BasinMap bm;
    std::size_t at = 1;
    auto expect_kv = [&](std::string_view key) -> std::string_view {
        if (at >= lines.size()) throw IoError(ctx + ": truncated header");
        const auto fields = detail::split(lines[at], ',');
        if (fields.size() != 2 || fields[0] != key)
            throw IoError(ctx + ": expected '" + std::string(key) + "' at line " +
                          std::to_string(at + 1));
        ++at;
        return fields[1];
    };
    bm.n = static_cast<int>(detail::parse_u64(expect_kv("n"), ctx));
    bm.k = static_cast<int>(detail::parse_u64(expect_kv("k"), ctx));
    bm.seed = detail::parse_u64(expect_kv("seed"), ctx);
    bm.op = parse_operator(std::string(expect_kv("operator")));
    expect_kv("tool");

    const auto n_optima = detail::parse_u64(expect_kv("optima"), ctx);
    if (at >= lines.size() || lines[at] != "id,solution,fitness,basin_size")
        throw IoError(ctx + ": missing optima table header");
    ++at;
    bm.optima.resize(n_optima);
    bm.basin_sizes.resize(n_optima);
    for (std::uint64_t id = 0; id < n_optima; ++id, ++at) {
        if (at >= lines.size()) throw IoError(ctx + ": truncated optima table");
        const auto fields = detail::split(lines[at], ',');
        if (fields.size() != 4 || detail::parse_u64(fields[0], ctx) != id)
            throw IoError(ctx + ": bad optima row at line " + std::to_string(at + 1));
        bm.optima[id].solution = detail::parse_u64(fields[1], ctx);
        bm.optima[id].fitness = detail::parse_double(fields[2], ctx);
        bm.basin_sizes[id] = detail::parse_u64(fields[3], ctx);
    }

    const auto n_assign = detail::parse_u64(expect_kv("assignment"), ctx);
    if (n_assign != (std::uint64_t{1} << bm.n))
        throw IoError(ctx + ": assignment length does not match n");
    bm.assignment.resize(n_assign);
    for (std::uint64_t s = 0; s < n_assign; ++s, ++at) {
        if (at >= lines.size()) throw IoError(ctx + ": truncated assignment");
        const auto id = detail::parse_u64(lines[at], ctx);
        if (id >= n_optima) throw IoError(ctx + ": assignment id out of range");
        bm.assignment[s] = static_cast<std::uint32_t>(id);
    }

    bm.max_fitness = 0.0;
    for (const auto& o : bm.optima) bm.max_fitness = std::max(bm.max_fitness, o.fitness);
    for (std::uint32_t id = 0; id < bm.optima.size(); ++id)
        if (bm.optima[id].fitness == bm.max_fitness) bm.global_optima.push_back(id);
    return bm;
}

// ---------------------------------------------------------------------------
// LON node/edge CSV files

inline void write_lon_nodes_csv(const std::filesystem::path& path, const Lon& lon) {
    std::string out = detail::provenance_comment({lon.n, lon.k, lon.seed, operator_name(lon.op)});
    out += "id,solution_int,fitness,basin_size,is_global_opt\n";
    for (std::size_t id = 0; id < lon.node_count(); ++id) {
        const auto& node = lon.nodes[id];
        detail::append_u64(out, id);
        out += ',';
        detail::append_u64(out, node.solution);
        out += ',';
        detail::append_double(out, node.fitness);
        out += ',';
        detail::append_u64(out, node.basin_size);
        out += node.is_global ? ",1\n" : ",0\n";
    }
    detail::write_file(path, out);
}

inline void write_lon_edges_csv(const std::filesystem::path& path, const Lon& lon) {
    std::string out = detail::provenance_comment({lon.n, lon.k, lon.seed, operator_name(lon.op)});
    out += "src_id,dst_id,weight\n";
    out.reserve(out.size() + lon.edge_count() * 32);
    for (std::uint32_t i = 0; i < lon.node_count(); ++i) {
        for (std::size_t e = lon.row[i]; e < lon.row[i + 1]; ++e) {
            detail::append_u64(out, i);
            out += ',';
            detail::append_u64(out, lon.dst[e]);
            out += ',';
            detail::append_double(out, lon.weight[e]);
            out += '\n';
        }
    }
    detail::write_file(path, out);
}

/// Reads a LON back from its node/edge CSV pair. The self-loop mass is not
/// part of the artifact, so it is zero on loaded networks.
inline Lon read_lon(const std::filesystem::path& nodes_path,
                    const std::filesystem::path& edges_path) {
    const std::string nctx = "lon nodes file " + nodes_path.string();
    const std::string ectx = "lon edges file " + edges_path.string();
    const auto node_lines = detail::read_lines(nodes_path);
    const auto edge_lines = detail::read_lines(edges_path);
    if (node_lines.size() < 2 || edge_lines.size() < 2)
        throw IoError("lon artifact truncated: " + nodes_path.string());

    const auto nprov = detail::parse_provenance_comment(node_lines[0], nctx);
    const auto eprov = detail::parse_provenance_comment(edge_lines[0], ectx);
    if (nprov.n != eprov.n || nprov.k != eprov.k || nprov.seed != eprov.seed ||
        nprov.operators != eprov.operators)
        throw IoError("lon node/edge files disagree on provenance: " + nodes_path.string());
    if (node_lines[1] != "id,solution_int,fitness,basin_size,is_global_opt")
        throw IoError(nctx + ": bad column header");
    if (edge_lines[1] != "src_id,dst_id,weight")
        throw IoError(ectx + ": bad column header");

    Lon lon;
    lon.n = nprov.n;
    lon.k = nprov.k;
    lon.seed = nprov.seed;
    lon.op = parse_operator(nprov.operators);

    for (std::size_t at = 2; at < node_lines.size(); ++at) {
        if (node_lines[at].empty()) continue;
        const auto fields = detail::split(node_lines[at], ',');
        if (fields.size() != 5) throw IoError(nctx + ": bad row at line " + std::to_string(at + 1));
        if (detail::parse_u64(fields[0], nctx) != lon.nodes.size())
            throw IoError(nctx + ": node ids must be dense and ascending");
        Lon::Node node;
        node.solution = detail::parse_u64(fields[1], nctx);
        node.fitness = detail::parse_double(fields[2], nctx);
        node.basin_size = detail::parse_u64(fields[3], nctx);
        node.is_global = fields[4] == "1";
        lon.nodes.push_back(node);
    }

    std::vector<std::tuple<std::uint32_t, std::uint32_t, double>> edges;
    edges.reserve(edge_lines.size());
    for (std::size_t at = 2; at < edge_lines.size(); ++at) {
        if (edge_lines[at].empty()) continue;
        const auto fields = detail::split(edge_lines[at], ',');
        if (fields.size() != 3) throw IoError(ectx + ": bad row at line " + std::to_string(at + 1));
        const auto src = detail::parse_u64(fields[0], ectx);
        const auto dst = detail::parse_u64(fields[1], ectx);
        if (src >= lon.node_count() || dst >= lon.node_count())
            throw IoError(ectx + ": edge endpoint out of range");
        edges.emplace_back(static_cast<std::uint32_t>(src), static_cast<std::uint32_t>(dst),
                           detail::parse_double(fields[2], ectx));
    }
    std::sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) {
        return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
    });
    lon.row.assign(lon.node_count() + 1, 0);
    for (const auto& [src, dst, w] : edges) ++lon.row[src + 1];
    for (std::size_t i = 0; i < lon.node_count(); ++i) lon.row[i + 1] += lon.row[i];
    lon.dst.resize(edges.size());
    lon.weight.resize(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) {
        lon.dst[e] = std::get<1>(edges[e]);
        lon.weight[e] = std::get<2>(edges[e]);
    }
    lon.self_mass.assign(lon.node_count(), 0.0);
    return lon;
}

// ---------------------------------------------------------------------------
// Supra-adjacency files for multi-layer networks

inline std::string joined_operators(const Mllon& m) {
    std::string ops;
    for (std::size_t l = 0; l < m.layers.size(); ++l) {
        if (l > 0) ops += ',';
        ops += operator_name(m.layers[l].op);
    }
    return ops;
}

inline void write_supra_nodes_csv(const std::filesystem::path& path, const Mllon& m) {
    std::string out = detail::provenance_comment({m.n, m.k, m.seed, joined_operators(m)});
    out += "layer,id,solution_int,fitness,basin_size,is_global_opt\n";
    for (std::size_t l = 0; l < m.layers.size(); ++l) {
        const auto& lon = m.layers[l];
        for (std::size_t id = 0; id < lon.node_count(); ++id) {
            const auto& node = lon.nodes[id];
            detail::append_u64(out, l);
            out += ',';
            detail::append_u64(out, id);
            out += ',';
            detail::append_u64(out, node.solution);
            out += ',';
            detail::append_double(out, node.fitness);
            out += ',';
            detail::append_u64(out, node.basin_size);
            out += node.is_global ? ",1\n" : ",0\n";
        }
    }
    detail::write_file(path, out);
}

inline void write_supra_edges_csv(const std::filesystem::path& path, const Mllon& m) {
    std::string out = detail::provenance_comment({m.n, m.k, m.seed, joined_operators(m)});
    out += "# p_sl=" + detail::format_double(m.cfg.p_sl) +
           " p_co_mirror=" + detail::format_double(m.cfg.p_co_mirror) +
           " p_co_diff=" + detail::format_double(m.cfg.p_co_diff) + "\n";
    out += "src_layer,src_id,dst_layer,dst_id,weight,edge_kind\n";
    out.reserve(out.size() + (m.intra_edge_count() + m.mirror_edges.size()) * 40);
    auto append_edge = [&out](std::size_t sl, std::uint64_t s, std::size_t dl, std::uint64_t d,
                              double w, EdgeKind kind) {
        detail::append_u64(out, sl);
        out += ',';
        detail::append_u64(out, s);
        out += ',';
        detail::append_u64(out, dl);
        out += ',';
        detail::append_u64(out, d);
        out += ',';
        detail::append_double(out, w);
        out += ',';
        out += edge_kind_name(kind);
        out += '\n';
    };
    for (std::size_t l = 0; l < m.layers.size(); ++l) {
        const auto& lon = m.layers[l];
        for (std::uint32_t i = 0; i < lon.node_count(); ++i)
            for (std::size_t e = lon.row[i]; e < lon.row[i + 1]; ++e)
                append_edge(l, i, l, lon.dst[e], lon.weight[e], EdgeKind::Intra);
    }
    for (const auto& e : m.mirror_edges)
        append_edge(e.src_layer, e.src, e.dst_layer, e.dst, e.weight, EdgeKind::Mirror);
    for (const auto& e : m.overlap_edges)
        append_edge(e.src_layer, e.src, e.dst_layer, e.dst, e.weight, EdgeKind::Overlap);
    detail::write_file(path, out);
}

/// Loads a flattened multi-layer graph from its supra node/edge CSV pair.
inline Graph read_supra(const std::filesystem::path& nodes_path,
                        const std::filesystem::path& edges_path) {
    const std::string nctx = "supra nodes file " + nodes_path.string();
    const std::string ectx = "supra edges file " + edges_path.string();
    const auto node_lines = detail::read_lines(nodes_path);
    const auto edge_lines = detail::read_lines(edges_path);
    if (node_lines.size() < 2 || edge_lines.size() < 3)
        throw IoError("supra artifact truncated: " + nodes_path.string());

    const auto nprov = detail::parse_provenance_comment(node_lines[0], nctx);
    const auto eprov = detail::parse_provenance_comment(edge_lines[0], ectx);
    if (nprov.n != eprov.n || nprov.k != eprov.k || nprov.seed != eprov.seed ||
        nprov.operators != eprov.operators)
        throw IoError("supra node/edge files disagree on provenance: " + nodes_path.string());
    if (node_lines[1] != "layer,id,solution_int,fitness,basin_size,is_global_opt")
        throw IoError(nctx + ": bad column header");
    if (edge_lines[2] != "src_layer,src_id,dst_layer,dst_id,weight,edge_kind")
        throw IoError(ectx + ": bad column header");

    Graph g;
    g.n = nprov.n;
    g.k = nprov.k;
    g.seed = nprov.seed;
    for (const auto op : detail::split(nprov.operators, ','))
        g.layer_ops.emplace_back(op);

    std::vector<std::size_t> layer_offset(g.layer_ops.size() + 1, 0);
    std::uint16_t current_layer = 0;
    for (std::size_t at = 2; at < node_lines.size(); ++at) {
        if (node_lines[at].empty()) continue;
        const auto fields = detail::split(node_lines[at], ',');
        if (fields.size() != 6) throw IoError(nctx + ": bad row at line " + std::to_string(at + 1));
        Graph::Node node;
        node.layer = static_cast<std::uint16_t>(detail::parse_u64(fields[0], nctx));
        node.id = static_cast<std::uint32_t>(detail::parse_u64(fields[1], nctx));
        node.solution = detail::parse_u64(fields[2], nctx);
        node.fitness = detail::parse_double(fields[3], nctx);
        node.basin_size = detail::parse_u64(fields[4], nctx);
        node.is_global = fields[5] == "1";
        if (node.layer >= g.layer_ops.size())
            throw IoError(nctx + ": layer index out of range");
        if (node.layer < current_layer)
            throw IoError(nctx + ": nodes must be grouped by layer");
        while (current_layer < node.layer)
            layer_offset[++current_layer] = g.nodes.size();
        if (node.id != g.nodes.size() - layer_offset[current_layer])
            throw IoError(nctx + ": node ids must be dense and ascending per layer");
        g.nodes.push_back(node);
    }
    while (current_layer < g.layer_ops.size())
        layer_offset[++current_layer] = g.nodes.size();

    std::vector<std::tuple<std::uint32_t, std::uint32_t, double, EdgeKind>> edges;
    edges.reserve(edge_lines.size());
    for (std::size_t at = 3; at < edge_lines.size(); ++at) {
        if (edge_lines[at].empty()) continue;
        const auto fields = detail::split(edge_lines[at], ',');
        if (fields.size() != 6) throw IoError(ectx + ": bad row at line " + std::to_string(at + 1));
        const auto sl = detail::parse_u64(fields[0], ectx);
        const auto si = detail::parse_u64(fields[1], ectx);
        const auto dl = detail::parse_u64(fields[2], ectx);
        const auto di = detail::parse_u64(fields[3], ectx);
        if (sl >= g.layer_ops.size() || dl >= g.layer_ops.size())
            throw IoError(ectx + ": layer index out of range");
        const auto src = layer_offset[sl] + si;
        const auto dst = layer_offset[dl] + di;
        if (src >= g.nodes.size() || dst >= g.nodes.size())
            throw IoError(ectx + ": edge endpoint out of range");
        EdgeKind kind = EdgeKind::Intra;
        if (fields[5] == "mirror") kind = EdgeKind::Mirror;
        else if (fields[5] == "overlap") kind = EdgeKind::Overlap;
        else if (fields[5] != "intra") throw IoError(ectx + ": unknown edge kind");
        edges.emplace_back(static_cast<std::uint32_t>(src), static_cast<std::uint32_t>(dst),
                           detail::parse_double(fields[4], ectx), kind);
    }
    std::stable_sort(edges.begin(), edges.end(),
                     [](const auto& a, const auto& b) { return std::get<0>(a) < std::get<0>(b); });
    g.row.assign(g.nodes.size() + 1, 0);
    for (const auto& e : edges) ++g.row[std::get<0>(e) + 1];
    for (std::size_t v = 0; v < g.nodes.size(); ++v) g.row[v + 1] += g.row[v];
    g.dst.resize(edges.size());
    g.weight.resize(edges.size());
    g.kind.resize(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) {
        g.dst[e] = std::get<1>(edges[e]);
        g.weight[e] = std::get<2>(edges[e]);
        g.kind[e] = std::get<3>(edges[e]);
    }
    return g;
}

// ---------------------------------------------------------------------------
// GraphML and plain edge-list exports

inline void write_graphml(const std::filesystem::path& path, const Graph& g) {
    std::string ops;
    for (std::size_t l = 0; l < g.layer_ops.size(); ++l) {
        if (l > 0) ops += ',';
        ops += g.layer_ops[l];
    }
    std::string out;
    out.reserve(g.node_count() * 160 + g.edge_count() * 120 + 2048);
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n";
    out += "  <key id=\"n\" for=\"graph\" attr.name=\"n\" attr.type=\"int\"/>\n";
    out += "  <key id=\"k\" for=\"graph\" attr.name=\"k\" attr.type=\"int\"/>\n";
    out += "  <key id=\"seed\" for=\"graph\" attr.name=\"seed\" attr.type=\"string\"/>\n";
    out += "  <key id=\"operators\" for=\"graph\" attr.name=\"operators\" attr.type=\"string\"/>\n";
    out += "  <key id=\"tool\" for=\"graph\" attr.name=\"tool\" attr.type=\"string\"/>\n";
    out += "  <key id=\"solution\" for=\"node\" attr.name=\"solution\" attr.type=\"long\"/>\n";
    out += "  <key id=\"fitness\" for=\"node\" attr.name=\"fitness\" attr.type=\"double\"/>\n";
    out += "  <key id=\"basin_size\" for=\"node\" attr.name=\"basin_size\" attr.type=\"long\"/>\n";
    out += "  <key id=\"layer\" for=\"node\" attr.name=\"layer\" attr.type=\"string\"/>\n";
    out += "  <key id=\"is_global_opt\" for=\"node\" attr.name=\"is_global_opt\" "
           "attr.type=\"boolean\"/>\n";
    out += "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n";
    out += "  <key id=\"edge_kind\" for=\"edge\" attr.name=\"edge_kind\" attr.type=\"string\"/>\n";
    out += "  <graph id=\"G\" edgedefault=\"directed\">\n";
    out += "    <data key=\"n\">" + std::to_string(g.n) + "</data>\n";
    out += "    <data key=\"k\">" + std::to_string(g.k) + "</data>\n";
    out += "    <data key=\"seed\">" + std::to_string(g.seed) + "</data>\n";
    out += "    <data key=\"operators\">" + ops + "</data>\n";
    out += "    <data key=\"tool\">" + std::string(kToolName) + " " + kVersion + "</data>\n";

    auto node_name = [&](std::uint32_t v) {
        return "L" + std::to_string(g.nodes[v].layer) + "_" + std::to_string(g.nodes[v].id);
    };
    for (std::uint32_t v = 0; v < g.node_count(); ++v) {
        const auto& node = g.nodes[v];
        out += "    <node id=\"" + node_name(v) + "\">";
        out += "<data key=\"solution\">";
        detail::append_u64(out, node.solution);
        out += "</data>";
        out += "<data key=\"fitness\">";
        detail::append_double(out, node.fitness);
        out += "</data>";
        out += "<data key=\"basin_size\">";
        detail::append_u64(out, node.basin_size);
        out += "</data>";
        out += "<data key=\"layer\">";
        out += g.layer_ops[node.layer];
        out += "</data>";
        out += "<data key=\"is_global_opt\">";
        out += node.is_global ? "true" : "false";
        out += "</data></node>\n";
    }
    for (std::uint32_t u = 0; u < g.node_count(); ++u) {
        for (std::size_t e = g.row[u]; e < g.row[u + 1]; ++e) {
            out += "    <edge source=\"" + node_name(u) + "\" target=\"" + node_name(g.dst[e]) +
                   "\">";
            out += "<data key=\"weight\">";
            detail::append_double(out, g.weight[e]);
            out += "</data>";
            out += "<data key=\"edge_kind\">";
            out += edge_kind_name(g.kind[e]);
            out += "</data></edge>\n";
        }
    }
    out += "  </graph>\n</graphml>\n";
    detail::write_file(path, out);
}

inline void write_edgelist(const std::filesystem::path& path, const Graph& g,
                           const Provenance& prov) {
    std::string out = detail::provenance_comment(prov);
    out.reserve(out.size() + g.edge_count() * 32);
    for (std::uint32_t u = 0; u < g.node_count(); ++u) {
        for (std::size_t e = g.row[u]; e < g.row[u + 1]; ++e) {
            detail::append_u64(out, u);
            out += ' ';
            detail::append_u64(out, g.dst[e]);
            out += ' ';
            detail::append_double(out, g.weight[e]);
            out += '\n';
        }
    }
    detail::write_file(path, out);
}

// ---------------------------------------------------------------------------
// Metrics reports and point clouds

inline const char* metrics_csv_header() {
    return "network,n,k,seed,nv,ne,knn,fnn,wcc,wcc_rand,l,l_reach_frac,st,y2,zout,l_go,"
           "l_go_reach_frac";
}

namespace detail {

inline void append_optional(std::string& out, const std::optional<double>& v) {
    if (v)
        append_double(out, *v);
    else
        out += "NA";
}

} // namespace detail

inline std::string metrics_csv_row(const std::string& network, const Provenance& prov,
                                   const MetricsReport& r) {
    std::string out = network;
    out += ',' + std::to_string(prov.n) + ',' + std::to_string(prov.k) + ',' +
           std::to_string(prov.seed) + ',';
    detail::append_u64(out, r.nv);
    out += ',';
    detail::append_u64(out, r.ne);
    out += ',';
    detail::append_optional(out, r.knn);
    out += ',';
    detail::append_optional(out, r.fnn);
    out += ',';
    detail::append_double(out, r.wcc_mean);
    out += ',';
    detail::append_double(out, r.wcc_rand);
    out += ',';
    detail::append_optional(out, r.l_mean);
    out += ',';
    detail::append_double(out, r.l_reachable_fraction);
    out += ',';
    detail::append_double(out, r.st_mean);
    out += ',';
    detail::append_double(out, r.y2_mean);
    out += ',';
    detail::append_double(out, r.zout_mean);
    out += ',';
    detail::append_optional(out, r.l_go_mean);
    out += ',';
    detail::append_double(out, r.l_go_reach_fraction);
    return out;
}

inline void write_metrics_csv(const std::filesystem::path& path, const std::string& network,
                              const Provenance& prov, const MetricsReport& r) {
    std::string out = metrics_csv_header();
    out += '\n';
    out += metrics_csv_row(network, prov, r);
    out += '\n';
    detail::write_file(path, out);
}

inline void write_metrics_json(const std::filesystem::path& path, const std::string& network,
                               const Provenance& prov, const MetricsReport& r) {
    std::string out = "{\n";
    out += "  \"format\": \"lonet-metrics\",\n";
    out += "  \"tool\": \"";
    out += kToolName;
    out += " ";
    out += kVersion;
    out += "\",\n";
    out += "  \"network\": \"" + network + "\",\n";
    out += "  \"n\": " + std::to_string(prov.n) + ",\n";
    out += "  \"k\": " + std::to_string(prov.k) + ",\n";
    out += "  \"seed\": " + std::to_string(prov.seed) + ",\n";
    out += "  \"operators\": \"" + prov.operators + "\",\n";
    auto field = [&out](const char* name, const std::string& value, bool last = false) {
        out += "  \"";
        out += name;
        out += "\": " + value + (last ? "\n" : ",\n");
    };
    auto num = [](double v) { return detail::format_double(v); };
    auto opt = [&num](const std::optional<double>& v) { return v ? num(*v) : "null"; };
    field("nv", std::to_string(r.nv));
    field("ne", std::to_string(r.ne));
    field("knn", opt(r.knn));
    field("fnn", opt(r.fnn));
    field("wcc_mean", num(r.wcc_mean));
    field("wcc_rand", num(r.wcc_rand));
    field("l_mean", opt(r.l_mean));
    field("l_reachable_fraction", num(r.l_reachable_fraction));
    field("st_mean", num(r.st_mean));
    field("y2_mean", num(r.y2_mean));
    field("zout_mean", num(r.zout_mean));
    field("l_go_mean", opt(r.l_go_mean));
    field("l_go_reach_fraction", num(r.l_go_reach_fraction), true);
    out += "}\n";
    detail::write_file(path, out);
}

inline void write_point_cloud_csv(const std::filesystem::path& path, const PointCloud& cloud,
                                  const Provenance& prov) {
    std::string out = detail::provenance_comment(prov);
    out += cloud.x_label + "," + cloud.y_label + "\n";
    for (const auto& [x, y] : cloud.points) {
        detail::append_double(out, x);
        out += ',';
        detail::append_double(out, y);
        out += '\n';
    }
    detail::write_file(path, out);
}

} // namespace lonet
