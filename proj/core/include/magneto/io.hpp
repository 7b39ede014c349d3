#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "magneto/functional.hpp"
#include "magneto/graph.hpp"

namespace magneto {

// Graph files:
//   {"n": 3, "group": {"kind": "cyclic", "k": 2} | {"kind": "circle"},
//    "edges": [[u, v, weight, sig], ...], "measure": [mu_0, ...]}
// sig is an integer exponent (cyclic) or an angle in turns (circle). A missing
// "measure" means mu == 1. Malformed input raises kParseError; structural
// problems raise the usual graph construction errors.
MagneticGraph parse_graph_json(std::string_view text);
MagneticGraph load_graph(const std::filesystem::path& path);
std::string graph_to_json(const MagneticGraph& g);

// Vertex functions: {"re": [...], "im": [...]}.
VertexFunction parse_vertex_function_json(std::string_view text);
VertexFunction load_vertex_function(const std::filesystem::path& path);
std::string vertex_function_to_json(const VertexFunction& f);

}  // namespace magneto
