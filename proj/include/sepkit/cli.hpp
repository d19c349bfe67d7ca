#pragma once

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "io.hpp"
#include "parallel.hpp"

namespace sepkit::cli {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot read " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot write " + path);
    out << text;
}

inline std::string sidecar_path(const std::string& graph_path) { return graph_path + ".meta.json"; }

// "1,2,3" or a token ("leaves", "root") looked up in the graph's sidecar.
inline VertexSet parse_vertex_list(const std::string& text, const std::string& graph_path,
                                   const Graph& g) {
    if (!text.empty() && std::isalpha(static_cast<unsigned char>(text[0]))) {
        std::ifstream in(sidecar_path(graph_path));
        if (!in)
            throw InvalidInput("token '" + text + "' needs a sidecar " + sidecar_path(graph_path) +
                               " (written by gen for bt fixtures)");
        json meta = json::parse(in);
        if (!meta.contains("tokens") || !meta["tokens"].contains(text))
            throw InvalidInput("sidecar has no token '" + text + "'");
        return vertex_set_from_json(meta["tokens"][text]);
    }
    std::vector<Vertex> v;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
        if (item.empty()) continue;
        long long x = detail::to_int(item, 0);
        if (x < 1 || x > g.n()) throw InvalidInput("vertex " + item + " out of range");
        v.push_back(static_cast<Vertex>(x));
    }
    return VertexSet(std::move(v));
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"sepkit: vertex separators and treewidth approximation"};
    app.require_subcommand(1);

    std::string graph_path, source, target, forced, td_path, out_path, fixture;
    int k = 0;
    bool directed = false, leftmost = false, important = false, no_volume = false, classic = false;
    double epsilon = 0;
    long long n = 0, m = 0, levels = 0, rows = 0, cols = 0, seed = 1, count = 500;

    auto* minsep = app.add_subcommand("minsep", "leftmost minimum separator");
    auto* en = app.add_subcommand("enum", "enumerate leftmost or important separators");
    auto* tw = app.add_subcommand("tw", "approximate tree decomposition");
    auto* val = app.add_subcommand("validate", "check a tree decomposition");
    auto* gen = app.add_subcommand("gen", "write a fixture graph");
    auto* orc = app.add_subcommand("oracle", "brute-force reference answers");
    auto* orc_tw = orc->add_subcommand("tw-exact", "exact treewidth (n <= 18)");
    auto* orc_seps = orc->add_subcommand("seps", "all minimal separators (n <= 16)");
    orc->require_subcommand(1);

    for (auto* c : {minsep, en, orc_seps}) {
        c->add_option("--graph", graph_path, "graph in .gr format")->required();
        c->add_option("--source", source, "X as a list or token")->required();
        c->add_option("--target", target, "Y as a list or token")->required();
        c->add_option("-k", k, "budget")->required();
        c->add_flag("--directed", directed, "read edges as arcs");
    }
    minsep->add_option("--forced-out", forced, "vertices the cut must avoid");
    auto* lm = en->add_flag("--leftmost", leftmost);
    auto* im = en->add_flag("--important", important);
    lm->excludes(im);

    std::string mode = "all";
    orc_seps->add_option("--mode", mode, "all | leftmost | important")
        ->check(CLI::IsMember({"all", "leftmost", "important"}));

    tw->add_option("--graph", graph_path)->required();
    tw->add_option("-k", k)->required();
    tw->add_option("-o", out_path, "write the .td here");
    tw->add_flag("--no-volume-splits", no_volume);
    tw->add_option("--epsilon", epsilon, "volume split slack");
    tw->add_flag("--classic-width", classic, "report width as bag size - 1");

    val->add_option("--graph", graph_path)->required();
    val->add_option("--td", td_path)->required();
    val->add_flag("--classic-width", classic);

    orc_tw->add_option("--graph", graph_path)->required();

    gen->add_option("fixture", fixture, "bt path cycle clique grid star4 diamond gnm tree corpus")
        ->required();
    gen->add_option("--n", n);
    gen->add_option("--m", m);
    gen->add_option("--levels", levels);
    gen->add_option("--rows", rows);
    gen->add_option("--cols", cols);
    gen->add_option("--seed", seed);
    gen->add_option("--count", count, "GNM records in a corpus manifest");
    gen->add_option("-o", out_path);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    auto load = [&] { return parse_graph(read_file(graph_path), directed); };
    auto list = [&](const std::string& s, const Graph& g) { return parse_vertex_list(s, graph_path, g); };

    try {
        if (*minsep) {
            Graph g = load();
            VertexSet x = list(source, g), y = list(target, g);
            CutConstraints c{forced.empty() ? VertexSet{} : list(forced, g), std::nullopt};
            CutResult r = leftmost_min_separator(g, x, y, k, c);
            if (auto* fc = std::get_if<FlowCut>(&r)) {
                out << json{{"status", "ok"}, {"separator", to_json(fc->separator)},
                            {"size", fc->separator.size()}, {"paths", to_json(fc->paths)}}
                           .dump()
                    << "\n";
                return 0;
            }
            out << json{{"status", "too_large"}, {"k", k},
                        {"witness", to_json(std::get<TooLarge>(r).witness)}}
                       .dump()
                << "\n";
            return 2;
        }
        if (*en) {
            if (!leftmost && !important) {
                err << "enum: pass --leftmost or --important\n";
                return 1;
            }
            Graph g = load();
            VertexSet x = list(source, g), y = list(target, g);
            Enumeration e = leftmost ? enumerate_leftmost(g, x, y, k) : enumerate_important(g, x, y, k);
            out << to_json(e, leftmost ? "leftmost" : "important", k).dump() << "\n";
            return 0;
        }
        if (*tw) {
            Graph g = load();
            DecomposeOptions opt;
            opt.volume_splits = !no_volume;
            if (epsilon > 0) opt.epsilon = epsilon;
            opt.threads = thread_budget();
            DecomposeStats st;
            DecomposeResult r = decompose(g, k, opt, &st);
            if (auto* rej = std::get_if<Rejection>(&r)) {
                out << to_json(*rej).dump() << "\n";
                return 2;
            }
            const auto& td = std::get<TreeDecomposition>(r);
            std::string text = emit_td(td, g);
            if (out_path.empty()) {
                out << text;
            } else {
                write_file(out_path, text);
                int w = td_width(td);
                out << json{{"status", "accept"}, {"k", k}, {"bags", td.size()},
                            {"width", classic ? w - 1 : w},
                            {"width_convention", classic ? "classic" : "bag_size"},
                            {"w_splits", st.w_splits}, {"volume_splits", st.volume_splits}}
                           .dump()
                    << "\n";
            }
            return 0;
        }
        if (*val) {
            Graph g = load();
            TreeDecomposition td = parse_td(read_file(td_path));
            auto v = validate_td(g, td);
            if (!v.empty()) {
                json list_v = json::array();
                for (const auto& x : v) list_v.push_back({{"kind", to_string(x.kind)}, {"detail", x.detail}});
                out << json{{"status", "invalid"}, {"violations", list_v}}.dump() << "\n";
                return 2;
            }
            int w = td.bags.empty() ? 0 : td_width(td);
            out << json{{"status", "valid"}, {"width", classic ? w - 1 : w}}.dump() << "\n";
            return 0;
        }
        if (*gen) {
            if (fixture == "corpus") {
                std::string text = emit_manifest(oracle::separator_corpus(static_cast<int>(count),
                                                                          static_cast<std::uint64_t>(seed)));
                if (out_path.empty())
                    out << text;
                else
                    write_file(out_path, text);
                return 0;
            }
            fixtures::Params p;
            if (n) p["n"] = n;
            if (m || fixture == "gnm") p["m"] = m;
            if (levels) p["levels"] = levels;
            if (rows) p["rows"] = rows;
            if (cols) p["cols"] = cols;
            p["seed"] = seed;
            Graph g = fixtures::make(fixture, p);
            std::string text = emit_graph(g);
            if (out_path.empty()) {
                out << text;
                return 0;
            }
            write_file(out_path, text);
            if (fixture == "bt") {
                int L = static_cast<int>(levels);
                json meta{{"fixture", "bt"}, {"levels", L},
                          {"tokens", {{"leaves", to_json(fixtures::binary_tree_leaves(L))},
                                      {"root", to_json(fixtures::binary_tree_root())}}}};
                write_file(sidecar_path(out_path), meta.dump(1) + "\n");
            }
            return 0;
        }
        if (*orc_tw) {
            Graph g = load();
            int w = oracle::exact_treewidth(g);
            out << json{{"treewidth", w}, {"classic", w - 1}}.dump() << "\n";
            return 0;
        }
        if (*orc_seps) {
            Graph g = load();
            VertexSet x = list(source, g), y = list(target, g);
            auto all = oracle::brute_minimal_separators(g, x, y, k);
            if (mode == "leftmost") all = oracle::filter_leftmost(g, x, all);
            if (mode == "important") all = oracle::filter_important(g, y, all);
            json seps = json::array();
            for (const auto& s : all) seps.push_back(to_json(s.members));
            out << json{{"mode", mode}, {"k", k}, {"count", all.size()}, {"separators", seps}}.dump() << "\n";
            return 0;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const json::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace sepkit::cli
