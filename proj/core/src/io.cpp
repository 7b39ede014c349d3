#include "magneto/io.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

namespace magneto {

namespace {

using nlohmann::json;

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::kParseError, what); }

json parse_text(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    parse_error(e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Group parse_group(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) parse_error("\"group\" needs a \"kind\"");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "circle") return Group::circle();
  if (kind == "cyclic") {
    if (!j.contains("k") || !j["k"].is_number_integer()) parse_error("cyclic group needs integer \"k\"");
    return Group::cyclic(j["k"].get<int>());
  }
  parse_error("unknown group kind \"" + kind + "\"");
}

}  // namespace

MagneticGraph parse_graph_json(std::string_view text) {
  const json doc = parse_text(text);
  if (!doc.is_object()) parse_error("graph must be a JSON object");
  if (!doc.contains("n") || !doc["n"].is_number_integer()) parse_error("graph needs integer \"n\"");
  if (!doc.contains("group")) parse_error("graph needs \"group\"");
  const Group group = parse_group(doc["group"]);
  const int n = doc["n"].get<int>();

  std::vector<EdgeSpec> edges;
  if (doc.contains("edges")) {
    if (!doc["edges"].is_array()) parse_error("\"edges\" must be an array");
    for (const json& e : doc["edges"]) {
      if (!e.is_array() || e.size() != 4) parse_error("edge entries are [u, v, weight, sig]");
      if (!e[0].is_number_integer() || !e[1].is_number_integer() || !e[2].is_number()) {
        parse_error("edge endpoints must be integers and weight a number");
      }
      GroupElement sig = GroupElement::identity(group);
      if (group.is_cyclic()) {
        if (!e[3].is_number_integer()) parse_error("cyclic signatures are integer exponents");
        sig = GroupElement::cyclic(e[3].get<std::int64_t>(), group.order());
      } else {
        if (!e[3].is_number()) parse_error("circle signatures are angles in turns");
        sig = GroupElement::circle_turns(e[3].get<double>());
      }
      edges.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<double>(), sig});
    }
  }

  std::vector<double> measure;
  if (doc.contains("measure")) {
    if (!doc["measure"].is_array()) parse_error("\"measure\" must be an array");
    for (const json& m : doc["measure"]) {
      if (!m.is_number()) parse_error("measure entries must be numbers");
      measure.push_back(m.get<double>());
    }
    if (measure.empty() && n > 0) parse_error("\"measure\" is empty");
  }
  return MagneticGraph::build(group, n, edges, std::move(measure));
}

MagneticGraph load_graph(const std::filesystem::path& path) { return parse_graph_json(read_file(path)); }

std::string graph_to_json(const MagneticGraph& g) {
  json doc;
  doc["n"] = g.vertex_count();
  doc["group"] = g.group().is_cyclic() ? json{{"kind", "cyclic"}, {"k", g.group().order()}} : json{{"kind", "circle"}};
  json edges = json::array();
  for (const Edge& e : g.edges()) {
    json sig = g.group().is_cyclic() ? json(e.signature.exponent()) : json(e.signature.angle() / (2.0 * std::numbers::pi));
    edges.push_back(json::array({e.u, e.v, e.weight, sig}));
  }
  doc["edges"] = std::move(edges);
  doc["measure"] = std::vector<double>(g.measure().begin(), g.measure().end());
  return doc.dump();
}

VertexFunction parse_vertex_function_json(std::string_view text) {
  const json doc = parse_text(text);
  if (!doc.is_object() || !doc.contains("re") || !doc["re"].is_array()) parse_error("vertex function needs \"re\"");
  const json& re = doc["re"];
  const json im = doc.contains("im") ? doc["im"] : json::array();
  if (!im.is_array() || (!im.empty() && im.size() != re.size())) parse_error("\"im\" must match \"re\" in length");
  VertexFunction f = VertexFunction::zeros(static_cast<int>(re.size()));
  for (std::size_t u = 0; u < re.size(); ++u) {
    if (!re[u].is_number() || (!im.empty() && !im[u].is_number())) parse_error("vertex values must be numbers");
    const double x = re[u].get<double>();
    const double y = im.empty() ? 0.0 : im[u].get<double>();
    if (!std::isfinite(x) || !std::isfinite(y)) parse_error("vertex values must be finite");
    f[static_cast<int>(u)] = Complex(x, y);
  }
  return f;
}

VertexFunction load_vertex_function(const std::filesystem::path& path) {
  return parse_vertex_function_json(read_file(path));
}

std::string vertex_function_to_json(const VertexFunction& f) {
  json re = json::array();
  json im = json::array();
  for (const Complex& z : f.values) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  return json{{"re", re}, {"im", im}}.dump();
}

}  // namespace magneto
