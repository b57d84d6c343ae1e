#include "budgetgraph/io.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>

namespace budgetgraph {

using nlohmann::json;

namespace {

struct RawEdge {
  std::string u;
  std::string v;
  double length;
};

bool is_integer_label(const std::string& s) {
  if (s.empty() || s.size() > 18) return false;
  std::size_t i = (s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; });
}

BudgetGraph build_graph(std::vector<std::string> labels, const std::vector<RawEdge>& raw) {
  for (const RawEdge& e : raw) {
    labels.push_back(e.u);
    labels.push_back(e.v);
  }
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  if (labels.empty()) throw InvalidInput("graph has no vertices");
  if (std::all_of(labels.begin(), labels.end(), is_integer_label)) {
    std::sort(labels.begin(), labels.end(), [](const std::string& a, const std::string& b) {
      return std::stoll(a) < std::stoll(b);
    });
  }

  std::map<std::string, VertexId> index;
  for (std::size_t i = 0; i < labels.size(); ++i) index.emplace(labels[i], static_cast<VertexId>(i));
  std::vector<Edge> edges;
  edges.reserve(raw.size());
  for (const RawEdge& e : raw) edges.push_back({index.at(e.u), index.at(e.v), e.length});
  const auto n = static_cast<VertexId>(labels.size());
  return BudgetGraph(n, std::move(edges), std::move(labels));
}

double parse_number(const std::string& token, const std::string& where) {
  const char* begin = token.c_str();
  char* end = nullptr;
  errno = 0;
  const double value = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || errno == ERANGE) {
    throw InvalidInput(where + ": cannot parse number '" + token + "'");
  }
  return value;
}

std::string label_from_json(const json& value, const std::string& where) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) return std::to_string(value.get<long long>());
  if (value.is_number()) return value.dump();
  throw InvalidInput(where + ": vertex must be a string or number");
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("JSON parse error: ") + e.what());
  }
}

}  // namespace

BudgetGraph parse_edge_list(std::string_view text) {
  std::vector<RawEdge> raw;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string tok; fields >> tok;) tokens.push_back(tok);
    if (tokens.empty()) continue;
    const std::string where = "line " + std::to_string(line_no);
    if (tokens.size() != 3) throw InvalidInput(where + ": expected '<u> <v> <length>'");
    const double length = parse_number(tokens[2], where);
    if (!(length > 0.0)) throw InvalidInput(where + ": non-positive length " + tokens[2]);
    raw.push_back({tokens[0], tokens[1], length});
  }
  if (raw.empty()) throw InvalidInput("edge list is empty");
  return build_graph({}, raw);
}

BudgetGraph parse_graph_json(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw InvalidInput("graph JSON must be an object");
  std::vector<std::string> labels;
  if (auto it = doc.find("nodes"); it != doc.end()) {
    if (!it->is_array()) throw InvalidInput("\"nodes\" must be an array");
    for (const json& node : *it) labels.push_back(label_from_json(node, "nodes"));
    std::vector<std::string> sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw InvalidInput("duplicate entry in \"nodes\"");
    }
  }
  std::vector<RawEdge> raw;
  const auto edges = doc.find("edges");
  if (edges == doc.end() || !edges->is_array()) throw InvalidInput("\"edges\" array is required");
  for (std::size_t i = 0; i < edges->size(); ++i) {
    const json& e = (*edges)[i];
    const std::string where = "edges[" + std::to_string(i) + "]";
    if (!e.is_object() || !e.contains("u") || !e.contains("v") || !e.contains("len")) {
      throw InvalidInput(where + ": expected {\"u\", \"v\", \"len\"}");
    }
    if (!e["len"].is_number()) throw InvalidInput(where + ": \"len\" must be a number");
    const double length = e["len"].get<double>();
    if (!(length > 0.0)) throw InvalidInput(where + ": non-positive length");
    raw.push_back({label_from_json(e["u"], where), label_from_json(e["v"], where), length});
  }
  if (!labels.empty()) {
    std::vector<std::string> known = labels;
    std::sort(known.begin(), known.end());
    for (const RawEdge& e : raw) {
      if (!std::binary_search(known.begin(), known.end(), e.u) ||
          !std::binary_search(known.begin(), known.end(), e.v)) {
        throw InvalidInput("edge endpoint missing from \"nodes\": " + e.u + "-" + e.v);
      }
    }
  }
  return build_graph(std::move(labels), raw);
}

BudgetGraph load_graph(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return parse_graph_json(text);
  return parse_edge_list(text);
}

BudgetGraph load_graph_file(const std::filesystem::path& path) { return load_graph(read_file(path)); }

std::string graph_to_json(const BudgetGraph& graph) {
  json doc;
  doc["nodes"] = graph.labels();
  json edges = json::array();
  for (const Edge& e : graph.edges()) {
    edges.push_back({{"u", graph.label(e.u)}, {"v", graph.label(e.v)}, {"len", e.length}});
  }
  doc["edges"] = std::move(edges);
  return doc.dump(2);
}

Allocation parse_allocation_json(const BudgetGraph& graph, std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object() || !doc.contains("fractions") || !doc["fractions"].is_object()) {
    throw InvalidInput("allocation JSON needs a \"fractions\" object");
  }
  double budget = 1.0;
  if (doc.contains("budget")) {
    if (!doc["budget"].is_number()) throw InvalidInput("\"budget\" must be a number");
    budget = doc["budget"].get<double>();
  }

  std::map<std::string, EdgeId, std::less<>> by_key;
  for (EdgeId id = 0; id < graph.num_edges(); ++id) {
    const Edge& e = graph.edge(id);
    by_key.emplace(graph.label(e.u) + "-" + graph.label(e.v), id);
    by_key.emplace(graph.label(e.v) + "-" + graph.label(e.u), id);
  }
  std::vector<double> fractions(static_cast<std::size_t>(graph.num_edges()), 0.0);
  std::vector<char> assigned(fractions.size(), 0);
  for (const auto& [key, value] : doc["fractions"].items()) {
    auto it = by_key.find(key);
    if (it == by_key.end()) throw InvalidInput("allocation names unknown edge '" + key + "'");
    if (!value.is_number()) throw InvalidInput("fraction for '" + key + "' must be a number");
    const auto e = static_cast<std::size_t>(it->second);
    if (assigned[e]) throw InvalidInput("edge '" + key + "' assigned twice");
    assigned[e] = 1;
    fractions[e] = value.get<double>();
  }
  return Allocation(std::move(fractions), budget);
}

std::vector<std::pair<std::string, double>> keyed_fractions(const BudgetGraph& graph,
                                                            const Allocation& allocation) {
  std::vector<std::pair<std::string, double>> out;
  out.reserve(allocation.size());
  for (EdgeId id = 0; id < graph.num_edges(); ++id) out.emplace_back(graph.edge_key(id), allocation.fraction(id));
  std::sort(out.begin(), out.end());
  return out;
}

std::string allocation_to_json(const BudgetGraph& graph, const Allocation& allocation) {
  json fractions = json::object();
  for (const auto& [key, b] : keyed_fractions(graph, allocation)) fractions[key] = b;
  json doc{{"budget", allocation.total_budget()}, {"fractions", std::move(fractions)}};
  return doc.dump(2);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<std::vector<double>> parse_numeric_csv(std::string_view text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  bool header_allowed = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string tok; fields >> tok;) tokens.push_back(tok);
    if (tokens.empty()) continue;
    std::vector<double> row;
    try {
      for (const auto& tok : tokens) row.push_back(parse_number(tok, "line " + std::to_string(line_no)));
    } catch (const InvalidInput&) {
      if (header_allowed) {
        header_allowed = false;
        continue;
      }
      throw;
    }
    header_allowed = false;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace budgetgraph
