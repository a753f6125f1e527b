#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "homlab/graph.hpp"

namespace homlab {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what);
    /// 1-based; 0 when the error is not tied to a line.
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

struct GraphDocument {
    Graph graph;
    std::optional<std::vector<Vertex>> labels;
    std::optional<std::vector<Vertex>> order;
    std::vector<std::string> warnings;
};

/// First non-blank line is the vertex count, then one "u v" per line.
/// Blank lines and lines starting with '#' are skipped.
GraphDocument read_edge_list(std::string_view text);
std::string write_edge_list(const Graph& g);

/// {"n": int, "edges": [[u,v],...], "labels": [...]?, "order": [...]?}
GraphDocument graph_from_json(const nlohmann::json& j);
nlohmann::json graph_to_json(const Graph& g);
nlohmann::json graph_to_json(const LabelledGraph& g);
nlohmann::json graph_to_json(const OrderedGraph& g);

/// Dispatches on extension: ".json" is JSON, anything else an edge list.
GraphDocument read_graph_file(const std::string& path);

} // namespace homlab
