#include "homlab/graph_io.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace homlab {

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

namespace {

bool parse_uint(std::string_view tok, std::uint64_t& out) {
    if (tok.empty() || tok.size() > 18) return false;
    out = 0;
    for (char c : tok) {
        if (c < '0' || c > '9') return false;
        out = out * 10 + static_cast<std::uint64_t>(c - '0');
    }
    return true;
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> toks;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        if (j > i) toks.push_back(line.substr(i, j - i));
        i = j;
    }
    return toks;
}

std::string edge_text(Vertex a, Vertex b) { return std::to_string(a) + " " + std::to_string(b); }

} // namespace

GraphDocument read_edge_list(std::string_view text) {
    GraphDocument doc;
    std::optional<std::uint64_t> n;
    std::vector<Edge> edges;
    std::set<Edge> seen;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++lineno;
        auto toks = split_ws(line);
        if (toks.empty() || toks[0].front() == '#') continue;
        if (!n) {
            std::uint64_t v;
            if (toks.size() != 1 || !parse_uint(toks[0], v)) throw ParseError(lineno, "expected vertex count");
            n = v;
            continue;
        }
        std::uint64_t a, b;
        if (toks.size() != 2 || !parse_uint(toks[0], a) || !parse_uint(toks[1], b))
            throw ParseError(lineno, "expected \"u v\"");
        if (a == b) throw ParseError(lineno, "loop at vertex " + std::to_string(a));
        if (a >= *n || b >= *n) throw ParseError(lineno, "endpoint out of range");
        Edge e(static_cast<Vertex>(a), static_cast<Vertex>(b));
        if (!seen.insert(e).second) {
            doc.warnings.push_back("line " + std::to_string(lineno) + ": duplicate edge " + edge_text(e.u, e.v));
            continue;
        }
        edges.push_back(e);
    }
    if (!n) throw ParseError(0, "empty input");
    doc.graph = Graph(*n, edges);
    return doc;
}

std::string write_edge_list(const Graph& g) {
    std::ostringstream os;
    os << g.num_vertices() << '\n';
    for (const Edge& e : g.edges()) os << e.u << ' ' << e.v << '\n';
    return os.str();
}

GraphDocument graph_from_json(const nlohmann::json& j) {
    GraphDocument doc;
    if (!j.is_object() || !j.contains("n") || !j["n"].is_number_unsigned())
        throw ParseError(0, "JSON graph needs a nonnegative \"n\"");
    const std::uint64_t n = j["n"].get<std::uint64_t>();
    std::vector<Edge> edges;
    std::set<Edge> seen;
    if (j.contains("edges")) {
        if (!j["edges"].is_array()) throw ParseError(0, "\"edges\" must be an array");
        for (std::size_t i = 0; i < j["edges"].size(); ++i) {
            const auto& e = j["edges"][i];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned())
                throw ParseError(0, "edge " + std::to_string(i) + " is not a pair of vertex ids");
            auto a = e[0].get<std::uint64_t>(), b = e[1].get<std::uint64_t>();
            if (a == b) throw ParseError(0, "edge " + std::to_string(i) + ": loop at vertex " + std::to_string(a));
            if (a >= n || b >= n) throw ParseError(0, "edge " + std::to_string(i) + ": endpoint out of range");
            Edge ed(static_cast<Vertex>(a), static_cast<Vertex>(b));
            if (!seen.insert(ed).second) {
                doc.warnings.push_back("duplicate edge " + edge_text(ed.u, ed.v));
                continue;
            }
            edges.push_back(ed);
        }
    }
    doc.graph = Graph(n, edges);
    auto read_ids = [&](const char* key) -> std::optional<std::vector<Vertex>> {
        if (!j.contains(key)) return std::nullopt;
        std::vector<Vertex> ids;
        for (const auto& x : j[key]) {
            if (!x.is_number_unsigned() || x.get<std::uint64_t>() >= n)
                throw ParseError(0, std::string("\"") + key + "\" entry is not a vertex id");
            ids.push_back(x.get<Vertex>());
        }
        return ids;
    };
    doc.labels = read_ids("labels");
    doc.order = read_ids("order");
    if (doc.order) OrderedGraph(doc.graph, *doc.order);  // validates the permutation
    return doc;
}

nlohmann::json graph_to_json(const Graph& g) {
    nlohmann::json edges = nlohmann::json::array();
    for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
    return {{"n", g.num_vertices()}, {"edges", std::move(edges)}};
}

nlohmann::json graph_to_json(const LabelledGraph& g) {
    auto j = graph_to_json(g.graph);
    j["labels"] = g.labels;
    return j;
}

nlohmann::json graph_to_json(const OrderedGraph& g) {
    auto j = graph_to_json(g.graph);
    j["order"] = g.order;
    return j;
}

GraphDocument read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(ss.str());
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(0, path + ": " + e.what());
        }
        return graph_from_json(j);
    }
    return read_edge_list(ss.str());
}

} // namespace homlab
