#include "homlab/enumerate.hpp"

#include <map>
#include <mutex>
#include <set>
#include <stdexcept>

#include "homlab/graph_stats.hpp"
#include "homlab/hom.hpp"
#include "homlab/refine.hpp"
#include "homlab/structure.hpp"
#include "homlab/tree_decomposition.hpp"

namespace homlab {

GraphFamily GraphFamily::parse(const std::string& text) {
    if (text == "all") return all();
    if (text == "planar") return planar();
    std::string rest;
    if (text.rfind("tw<=", 0) == 0) rest = text.substr(4);
    else if (text.rfind("tw", 0) == 0) rest = text.substr(2);
    else throw std::invalid_argument("unknown graph family '" + text + "'");
    if (rest.empty() || rest.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("unknown graph family '" + text + "'");
    return treewidth_at_most(std::stoul(rest));
}

std::string GraphFamily::to_string() const {
    switch (kind) {
    case Kind::all: return "all";
    case Kind::planar: return "planar";
    case Kind::treewidth: return "tw<=" + std::to_string(k);
    }
    return "";
}

bool in_family(const Graph& f, const GraphFamily& family) {
    switch (family.kind) {
    case GraphFamily::Kind::all: return true;
    case GraphFamily::Kind::planar: return is_planar(f);
    case GraphFamily::Kind::treewidth: return exact_tree_decomposition(f, family.k).has_value();
    }
    return false;
}

Graph canonical_representative(const Graph& g) {
    return g.relabel(canonical_form(to_digraph(g)).labeling);
}

namespace {

using Key = std::pair<std::size_t, std::vector<std::uint32_t>>;

Graph extend(const Graph& g, std::uint64_t subset) {
    std::vector<Edge> e(g.edges().begin(), g.edges().end());
    const auto n = static_cast<Vertex>(g.num_vertices());
    for (Vertex v = 0; v < n; ++v)
        if (subset >> v & 1) e.emplace_back(v, n);
    return Graph(n + 1, e);
}

// Next level of a hereditary class: all one-vertex extensions, deduplicated.
std::vector<Graph> grow(const std::vector<Graph>& level, bool connected_only, const GraphFamily& family) {
    std::map<Key, Graph> found;
    for (const Graph& g : level) {
        const std::size_t n = g.num_vertices();
        for (std::uint64_t s = connected_only ? 1 : 0; s < (std::uint64_t{1} << n); ++s) {
            Graph x = extend(g, s);
            auto cf = canonical_form(to_digraph(x));
            Key key{x.num_edges(), cf.certificate};
            if (found.count(key)) continue;
            Graph rep = x.relabel(cf.labeling);
            found.emplace(std::move(key), std::move(rep));
        }
    }
    std::vector<Graph> out;
    for (auto& [key, g] : found)
        if (in_family(g, family)) out.push_back(std::move(g));
    return out;
}

std::mutex cache_mutex;

} // namespace

const std::vector<Graph>& connected_graphs(std::size_t max_n, const GraphFamily& family) {
    static std::map<std::pair<std::string, std::size_t>, std::vector<Graph>> cache;
    static std::map<std::string, std::vector<std::vector<Graph>>> levels;
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto key = std::make_pair(family.to_string(), max_n);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto& lv = levels[family.to_string()];
    if (lv.empty()) lv.push_back({Graph(1)});
    while (lv.size() < max_n) lv.push_back(grow(lv.back(), true, family));
    std::vector<Graph> out;
    for (std::size_t i = 0; i < max_n; ++i) out.insert(out.end(), lv[i].begin(), lv[i].end());
    return cache.emplace(key, std::move(out)).first->second;
}

const std::vector<Graph>& all_graphs(std::size_t n) {
    static std::vector<std::vector<Graph>> levels;
    std::lock_guard<std::mutex> lock(cache_mutex);
    if (levels.empty()) levels.push_back({Graph(0)});
    while (levels.size() <= n) levels.push_back(grow(levels.back(), false, GraphFamily::all()));
    return levels[n];
}

std::optional<Distinguisher> find_distinguisher(const Graph& g, const Graph& h, const GraphFamily& family,
                                                std::size_t max_size, std::optional<std::uint32_t> modulus) {
    if (max_size == 0) return std::nullopt;
    for (const Graph& f : connected_graphs(max_size, family)) {
        mpz_class a = hom_count_brute(f, g), b = hom_count_brute(f, h);
        bool differ = modulus ? (a % static_cast<unsigned long>(*modulus)) != (b % static_cast<unsigned long>(*modulus))
                              : a != b;
        if (differ) return Distinguisher{f, a, b};
    }
    return std::nullopt;
}

} // namespace homlab
