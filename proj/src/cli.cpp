#include "homlab/cli.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <map>
#include <optional>
#include <ostream>
#include <regex>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "homlab/caps.hpp"
#include "homlab/cfi.hpp"
#include "homlab/enumerate.hpp"
#include "homlab/equiv.hpp"
#include "homlab/graph_io.hpp"
#include "homlab/graph_stats.hpp"
#include "homlab/hom.hpp"
#include "homlab/imgame.hpp"
#include "homlab/nice.hpp"
#include "homlab/tree_decomposition.hpp"
#include "homlab/verify.hpp"

namespace homlab {

using nlohmann::json;

Graph parse_graph_spec(const std::string& spec) {
    static const std::regex named(R"(([a-z]+)(\d+)(?:x(\d+))?)");
    std::smatch m;
    if (spec == "petersen") return petersen_graph();
    if (std::regex_match(spec, m, named)) {
        const std::string kind = m[1];
        const std::size_t a = std::stoul(m[2]);
        if (m[3].matched) {
            if (kind == "k") return complete_bipartite_graph(a, std::stoul(m[3]));
        } else {
            if (kind == "k") return complete_graph(a);
            if (kind == "p") return path_graph(a);
            if (kind == "c") return cycle_graph(a);
            if (kind == "star") return star_graph(a);
            if (kind == "empty") return empty_graph(a);
        }
    }
    std::ifstream probe(spec);
    if (!probe) throw std::invalid_argument("'" + spec + "' is neither a builtin graph nor a readable file");
    return read_graph_file(spec).graph;
}

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Outcome {
    json doc;
    bool pass = true;
    /// Rows for CSV output; derived from doc when empty.
    std::optional<std::string> csv;
};

std::string scalar_text(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

// One header line and one row from the top-level scalar fields.
std::string flat_csv(const json& doc) {
    std::string head, row;
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        if (it->is_structured()) continue;
        if (!head.empty()) {
            head += ',';
            row += ',';
        }
        head += csv_escape(it.key());
        row += csv_escape(scalar_text(*it));
    }
    return head + "\n" + row + "\n";
}

struct CfiArgs {
    std::string gamma = "2";
    std::string base = "k3";
    std::string u;
};

void add_cfi_args(CLI::App* cmd, CfiArgs& a) {
    cmd->add_option("--gamma", a.gamma, "cyclic orders, e.g. 2 or 2x2")->capture_default_str();
    cmd->add_option("--base", a.base, "base graph")->capture_default_str();
    cmd->add_option("--u", a.u, "U vector, e.g. 1,0,0 or 1.0,0.0,0.0,0.0 over 2x2 (default zero)");
}

CfiGraph make_cfi(const CfiArgs& a, const std::string& u_text) {
    auto gamma = FiniteAbelianGroup::parse(a.gamma);
    Graph base = parse_graph_spec(a.base);
    GroupVector u = u_text.empty() ? GroupVector(base.num_vertices(), gamma.zero()) : parse_group_vector(gamma, u_text);
    return CfiGraph(gamma, base, u);
}

std::pair<Vertex, Vertex> parse_edge(const std::string& text) {
    static const std::regex re(R"((\d+)-(\d+))");
    std::smatch m;
    if (!std::regex_match(text, m, re)) throw UsageError("edge must look like 0-1, got '" + text + "'");
    return {static_cast<Vertex>(std::stoul(m[1])), static_cast<Vertex>(std::stoul(m[2]))};
}

json permutation_json(const Permutation& p) { return json(p); }

std::string status_text(GameStatus s) {
    switch (s) {
    case GameStatus::spoiler_wins: return "spoiler_wins";
    case GameStatus::duplicator_survives: return "duplicator_survives";
    case GameStatus::inconclusive: return "inconclusive";
    }
    return "";
}

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"homlab: CFI graphs, homomorphism counts, modular counting logic and matrix games"};
    app.require_subcommand(1);
    bool csv = false, timing = false;
    std::uint64_t seed = 0;
    std::string out_path;
    app.add_flag("--csv", csv, "emit CSV instead of JSON");
    app.add_flag("--timing", timing, "record wall-clock milliseconds");
    app.add_option("--seed", seed, "seed for randomised searches")->capture_default_str();
    app.add_option("-o,--out", out_path, "write the report to a file");
    app.fallthrough();

    std::function<Outcome()> action;

    // cfi
    auto* cfi = app.add_subcommand("cfi", "build CFI graphs, twists and nice witnesses");
    cfi->require_subcommand(1);
    CfiArgs cfi_args;
    auto* cfi_build = cfi->add_subcommand("build", "CFI[gamma, base, U] as JSON");
    add_cfi_args(cfi_build, cfi_args);
    cfi_build->callback([&] {
        action = [&] {
            CfiGraph c = make_cfi(cfi_args, cfi_args.u);
            json doc = c.to_json();
            doc["vertex_count_formula"] = cfi_vertex_count(c.gamma(), c.base());
            return Outcome{doc, c.num_vertices() == cfi_vertex_count(c.gamma(), c.base()), std::nullopt};
        };
    });
    std::string twist_edge, twist_j;
    auto* cfi_twist = cfi->add_subcommand("twist", "twist isomorphism along a base edge");
    add_cfi_args(cfi_twist, cfi_args);
    cfi_twist->add_option("--edge", twist_edge, "base edge u-v")->required();
    cfi_twist->add_option("--j", twist_j, "group element moved along the edge (default all ones)");
    cfi_twist->callback([&] {
        action = [&] {
            CfiGraph c = make_cfi(cfi_args, cfi_args.u);
            auto [u, v] = parse_edge(twist_edge);
            std::optional<GroupElement> j;
            if (!twist_j.empty()) j = c.gamma().parse_element(twist_j);
            CfiIsomorphism iso = twist_isomorphism(c, u, v, j);
            const bool ok = is_isomorphism(c.graph(), iso.target.graph(), iso.map);
            json doc{{"source_u", format_group_vector(c.gamma(), c.u_vector())},
                     {"target_u", format_group_vector(c.gamma(), iso.target.u_vector())},
                     {"target", iso.target.to_json()},
                     {"map", permutation_json(iso.map)},
                     {"verified", ok}};
            return Outcome{doc, ok, std::nullopt};
        };
    });
    std::size_t nice_n = 1;
    bool nice_check = false;
    auto* cfi_nice = cfi->add_subcommand("nice", "planar nice witness graph");
    cfi_nice->add_option("--n", nice_n, "parameter n")->capture_default_str();
    cfi_nice->add_flag("--check", nice_check, "validate niceness (default for n = 1)");
    cfi_nice->callback([&] {
        action = [&] {
            NiceWitness w = build_nice_planar(nice_n);
            const bool planar = is_planar(w.graph);
            json doc{{"n", nice_n},
                     {"graph", graph_to_json(w.graph)},
                     {"witness_vertex", w.witness_vertex},
                     {"params", {w.params.r, w.params.d, w.params.g, w.params.c}},
                     {"tree_vertices", w.tree_vertices},
                     {"leaves", w.leaves},
                     {"vertices", w.graph.num_vertices()},
                     {"vertex_count_formula", nice_planar_vertex_count(nice_n)},
                     {"planar", planar}};
            bool pass = planar && w.graph.num_vertices() == nice_planar_vertex_count(nice_n);
            if (nice_check || nice_n == 1) {
                NiceVerdict v = check_nice(w.graph, w.witness_vertex, w.params);
                doc["nice"] = v.status == NiceStatus::nice       ? "nice"
                              : v.status == NiceStatus::not_nice ? "not_nice"
                                                                 : "inconclusive";
                if (!v.reason.empty()) doc["reason"] = v.reason;
                pass = pass && v.status == NiceStatus::nice;
            }
            return Outcome{doc, pass, std::nullopt};
        };
    });

    // hom
    auto* hom = app.add_subcommand("hom", "homomorphism counts and distinguishing patterns");
    hom->require_subcommand(1);
    std::string hom_methods = "brute";
    std::vector<std::string> hom_graphs;
    std::optional<std::uint32_t> hom_modulus;
    CfiArgs hom_cfi;
    bool hom_use_cfi = false;
    auto* hom_count = hom->add_subcommand("count", "hom(F, G) by one or more methods");
    hom_count->add_option("graphs", hom_graphs, "pattern F, then target G (omit G with --base)")->required();
    hom_count->add_option("--method", hom_methods, "comma list of brute, cfi, tw")->capture_default_str();
    hom_count->add_option("--modulus", hom_modulus, "report counts modulo this number");
    add_cfi_args(hom_count, hom_cfi);
    hom_count->get_option("--base")->each([&](const std::string&) { hom_use_cfi = true; });
    hom_count->callback([&] {
        action = [&] {
            if (hom_graphs.size() != (hom_use_cfi ? 1u : 2u))
                throw UsageError(hom_use_cfi ? "with --base give only the pattern" : "give a pattern and a target");
            Graph f = parse_graph_spec(hom_graphs[0]);
            std::optional<CfiGraph> c;
            if (hom_use_cfi) c = make_cfi(hom_cfi, hom_cfi.u);
            const Graph g = c ? c->graph() : parse_graph_spec(hom_graphs[1]);
            json counts = json::object();
            std::optional<mpz_class> first;
            bool agree = true;
            for (const std::string& method : split_commas(hom_methods)) {
                mpz_class value;
                if (method == "brute") {
                    value = hom_count_brute(f, g);
                } else if (method == "cfi") {
                    if (!c) throw UsageError("method cfi needs a CFI target (--base)");
                    value = hom_count_cfi(f, *c).total;
                } else if (method == "tw") {
                    auto td = exact_tree_decomposition(f, f.num_vertices());
                    if (!td) throw std::runtime_error("no tree decomposition found");
                    value = hom_count_tw(f, *td, g);
                } else {
                    throw UsageError("unknown method '" + method + "'");
                }
                if (hom_modulus) {
                    if (*hom_modulus == 0) throw UsageError("modulus must be positive");
                    value %= *hom_modulus;
                }
                if (first && *first != value) agree = false;
                if (!first) first = value;
                counts[method] = value.get_str();
            }
            json doc{{"pattern_vertices", f.num_vertices()},
                     {"target_vertices", g.num_vertices()},
                     {"counts", counts},
                     {"agree", agree}};
            if (hom_modulus) doc["modulus"] = *hom_modulus;
            return Outcome{doc, agree, std::nullopt};
        };
    });
    std::string dist_family = "all", dist_u2;
    std::size_t dist_max = 5;
    auto* hom_dist = hom->add_subcommand("distinguish", "smallest connected pattern with different counts");
    hom_dist->add_option("graphs", hom_graphs, "graphs G and H (omit with --base: CFI[0] vs CFI[U])");
    hom_dist->add_option("--family", dist_family, "all, planar or tw<=k")->capture_default_str();
    hom_dist->add_option("--max-size", dist_max, "largest pattern size")->capture_default_str();
    hom_dist->add_option("--modulus", hom_modulus, "compare counts modulo this number");
    add_cfi_args(hom_dist, hom_cfi);
    hom_dist->add_option("--u2", dist_u2, "second U vector (default zero)");
    hom_dist->get_option("--base")->each([&](const std::string&) { hom_use_cfi = true; });
    hom_dist->callback([&] {
        action = [&] {
            Graph g, h;
            if (hom_use_cfi) {
                if (!hom_graphs.empty()) throw UsageError("with --base give no graph arguments");
                g = make_cfi(hom_cfi, dist_u2).graph();
                h = make_cfi(hom_cfi, hom_cfi.u).graph();
            } else {
                if (hom_graphs.size() != 2) throw UsageError("give two graphs");
                g = parse_graph_spec(hom_graphs[0]);
                h = parse_graph_spec(hom_graphs[1]);
            }
            GraphFamily family = GraphFamily::parse(dist_family);
            auto d = find_distinguisher(g, h, family, dist_max, hom_modulus);
            json doc{{"family", family.to_string()}, {"max_size", dist_max}, {"found", d.has_value()}};
            if (hom_modulus) doc["modulus"] = *hom_modulus;
            if (d) {
                doc["pattern"] = graph_to_json(d->f);
                doc["hom_g"] = d->hom_g.get_str();
                doc["hom_h"] = d->hom_h.get_str();
                doc["pattern_isomorphic_to_base"] =
                    hom_use_cfi && is_isomorphic(d->f, parse_graph_spec(hom_cfi.base)).has_value();
            }
            return Outcome{doc, true, std::nullopt};
        };
    });

    // verify
    std::string verify_id;
    std::optional<std::uint32_t> verify_p;
    std::optional<std::size_t> verify_k;
    auto* verify = app.add_subcommand("verify", "run a verification suite (or 'all')");
    verify->add_option("id", verify_id, "suite id")->required();
    verify->add_option("--p", verify_p, "restrict the prime (dvorak)");
    verify->add_option("--k", verify_k, "restrict the width (dvorak)");
    verify->callback([&] {
        action = [&] {
            std::vector<std::string> ids;
            if (verify_id == "all") ids = verify_ids();
            else if (is_verify_id(verify_id)) ids = {verify_id};
            else throw UsageError("unknown verification id '" + verify_id + "'");
            VerifyOptions opt{seed, verify_p, verify_k, timing};
            std::vector<std::future<VerifyReport>> jobs;
            for (const auto& id : ids)
                jobs.push_back(std::async(std::launch::async, [id, opt] { return run_verification(id, opt); }));
            std::vector<VerifyReport> reports;
            for (auto& j : jobs) reports.push_back(j.get());
            bool pass = std::all_of(reports.begin(), reports.end(), [](const VerifyReport& r) { return r.pass(); });
            json doc;
            if (reports.size() == 1) {
                doc = to_json(reports[0]);
            } else {
                doc = {{"status", pass ? "pass" : "fail"}, {"reports", json::array()}};
                for (const auto& r : reports) doc["reports"].push_back(to_json(r));
            }
            return Outcome{doc, pass, to_csv(reports)};
        };
    });

    // game
    auto* game = app.add_subcommand("game", "invertible-map game tools");
    game->require_subcommand(1);
    std::string transcript_path;
    auto* game_validate = game->add_subcommand("validate-transcript", "replay and validate a recorded game");
    game_validate->add_option("transcript", transcript_path, "transcript JSON file")->required();
    game_validate->callback([&] {
        action = [&] {
            std::ifstream in(transcript_path);
            if (!in) throw std::runtime_error("cannot open '" + transcript_path + "'");
            TranscriptReport rep = replay_transcript(json::parse(in));
            json doc{{"valid", rep.valid},
                     {"rounds_checked", rep.rounds_checked},
                     {"spoiler_won", rep.spoiler_won},
                     {"reason", rep.reason}};
            return Outcome{doc, rep.valid, std::nullopt};
        };
    });
    std::vector<std::string> game_graphs;
    std::size_t game_k = 2, game_l = 1, game_rounds = 5;
    std::vector<std::uint32_t> game_primes{2};
    auto* game_solve = game->add_subcommand("solve-tiny", "exhaustive game search on tiny graphs");
    game_solve->add_option("graphs", game_graphs, "graphs A and B")->required()->expected(2);
    game_solve->add_option("--k", game_k, "pebbles")->capture_default_str();
    game_solve->add_option("--l", game_l, "largest partition arity")->capture_default_str();
    game_solve->add_option("--rounds", game_rounds, "round cap")->capture_default_str();
    game_solve->add_option("--primes", game_primes, "primes available to Duplicator")->delimiter(',');
    game_solve->callback([&] {
        action = [&] {
            Graph a = parse_graph_spec(game_graphs[0]), b = parse_graph_spec(game_graphs[1]);
            GameVerdict v = solve_game_tiny(a, b, game_k, game_l, game_primes, game_rounds, seed);
            json doc{{"status", status_text(v.status)}, {"rounds", v.rounds}, {"k", game_k}, {"note", v.note}};
            return Outcome{doc, v.status != GameStatus::inconclusive, std::nullopt};
        };
    });

    // wl
    std::vector<std::string> wl_graphs;
    std::size_t wl_k = 1;
    bool wl_colors = false;
    auto* wl = app.add_subcommand("wl", "Weisfeiler-Leman refinement of two graphs");
    wl->add_option("graphs", wl_graphs, "graphs G and H")->required()->expected(2);
    wl->add_option("--k", wl_k, "dimension")->capture_default_str();
    wl->add_flag("--colors", wl_colors, "include the final colourings");
    wl->callback([&] {
        action = [&] {
            WlResult r = wl_refine(parse_graph_spec(wl_graphs[0]), parse_graph_spec(wl_graphs[1]), wl_k);
            json doc{{"k", wl_k}, {"distinguished", r.distinguished}, {"rounds", r.rounds}};
            if (wl_colors) {
                doc["colors_g"] = r.colors_g;
                doc["colors_h"] = r.colors_h;
            }
            return Outcome{doc, true, std::nullopt};
        };
    });

    // reduce
    std::string reduce_graph;
    std::uint32_t reduce_p = 2;
    auto* reduce = app.add_subcommand("reduce", "iterated fixed points of order-p automorphisms");
    reduce->add_option("graph", reduce_graph, "input graph")->required();
    reduce->add_option("--p", reduce_p, "prime")->capture_default_str();
    reduce->callback([&] {
        action = [&] {
            Graph g = parse_graph_spec(reduce_graph);
            Graph r = faben_jerrum_reduce(g, reduce_p);
            json doc{{"p", reduce_p},
                     {"input_vertices", g.num_vertices()},
                     {"vertices", r.num_vertices()},
                     {"graph", graph_to_json(r)}};
            return Outcome{doc, true, std::nullopt};
        };
    });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    try {
        (void)caps();
        Outcome result = action();
        std::string text = csv ? result.csv.value_or(flat_csv(result.doc)) : result.doc.dump(2) + "\n";
        if (out_path.empty()) {
            out << text;
        } else {
            std::ofstream file(out_path);
            if (!file) throw std::runtime_error("cannot write '" + out_path + "'");
            file << text;
        }
        return result.pass ? 0 : 1;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n" << app.help();
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace homlab
