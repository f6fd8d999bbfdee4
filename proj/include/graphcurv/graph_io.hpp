#pragma once

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "graphcurv/graph.hpp"

namespace graphcurv {

// Graph document, JSON flavor:
//   {
//     "vertices": ["a", "b", ...],
//     "edges":    [["a", "b", 1.0], ...],
//     "measure":  "unit" | "degree" | {"a": 1.0, ...}   (default "unit")
//   }
// Unknown top-level keys are ignored. Text flavor: one "u v w" triple per
// line, '#' starts a comment, measure defaults to unit.

inline WeightedGraph load_graph_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ValidationError("graph document must be a JSON object");
  if (!doc.contains("vertices") || !doc["vertices"].is_array()) {
    throw ValidationError("graph document needs a \"vertices\" array");
  }
  std::vector<std::string> names;
  for (const auto& v : doc["vertices"]) {
    if (!v.is_string()) throw ValidationError("vertex names must be strings");
    names.push_back(v.get<std::string>());
  }
  std::unordered_map<std::string, int> index;
  for (int i = 0; i < static_cast<int>(names.size()); ++i) {
    if (!index.emplace(names[static_cast<std::size_t>(i)], i).second) {
      throw ValidationError("duplicate vertex name: " + names[static_cast<std::size_t>(i)]);
    }
  }
  auto resolve = [&](const nlohmann::json& j) {
    if (!j.is_string()) throw ValidationError("edge endpoints must be vertex names");
    const auto it = index.find(j.get<std::string>());
    if (it == index.end()) throw ValidationError("edge references unknown vertex: " + j.get<std::string>());
    return it->second;
  };

  std::vector<RawEdge> edges;
  if (doc.contains("edges")) {
    if (!doc["edges"].is_array()) throw ValidationError("\"edges\" must be an array");
    for (const auto& e : doc["edges"]) {
      if (!e.is_array() || e.size() != 3 || !e[2].is_number()) {
        throw ValidationError("edges must be [u, v, w] triples");
      }
      edges.push_back({resolve(e[0]), resolve(e[1]), e[2].get<double>()});
    }
  }

  if (!doc.contains("measure") || (doc["measure"].is_string() && doc["measure"] == "unit")) {
    return {std::move(names), edges, MeasureRule::Unit};
  }
  const auto& m = doc["measure"];
  if (m.is_string()) {
    if (m == "degree") return {std::move(names), edges, MeasureRule::Degree};
    throw ValidationError("measure must be \"unit\", \"degree\", or an object");
  }
  if (!m.is_object()) throw ValidationError("measure must be \"unit\", \"degree\", or an object");
  std::vector<double> measure(names.size(), 0.0);
  std::vector<bool> present(names.size(), false);
  for (const auto& [key, value] : m.items()) {
    const auto it = index.find(key);
    if (it == index.end()) throw ValidationError("measure references unknown vertex: " + key);
    if (!value.is_number()) throw ValidationError("measure values must be numbers");
    measure[static_cast<std::size_t>(it->second)] = value.get<double>();
    present[static_cast<std::size_t>(it->second)] = true;
  }
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!present[i]) throw ValidationError("measure missing for vertex " + names[i]);
  }
  return {std::move(names), edges, std::move(measure)};
}

inline WeightedGraph load_edge_list(std::istream& in) {
  std::vector<std::string> names;
  std::unordered_map<std::string, int> index;
  auto intern = [&](const std::string& name) {
    const auto it = index.find(name);
    if (it != index.end()) return it->second;
    const int id = static_cast<int>(names.size());
    names.push_back(name);
    index.emplace(name, id);
    return id;
  };
  std::vector<RawEdge> edges;
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string u, v;
    double w = 0.0;
    if (!(ls >> u)) continue;  // blank line
    if (!(ls >> v >> w)) {
      throw ValidationError("edge list line " + std::to_string(lineNo) + ": expected \"u v w\"");
    }
    std::string extra;
    if (ls >> extra) {
      throw ValidationError("edge list line " + std::to_string(lineNo) + ": trailing tokens");
    }
    edges.push_back({intern(u), intern(v), w});
  }
  if (names.empty()) throw ValidationError("edge list contains no vertices");
  return {std::move(names), edges, MeasureRule::Unit};
}

/// Loads a graph document; files ending in .json use the JSON schema,
/// anything else is parsed as edge-list text.
inline WeightedGraph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open graph file: " + path);
  if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) {
    nlohmann::json doc;
    try {
      in >> doc;
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError("cannot parse " + path + ": " + e.what());
    }
    return load_graph_json(doc);
  }
  return load_edge_list(in);
}

/// Per-vertex measure file: JSON object {"name": m, ...} for .json paths,
/// otherwise "name m" lines.
inline std::vector<double> load_measure_file(const std::string& path, const WeightedGraph& g) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open measure file: " + path);
  std::vector<double> measure(static_cast<std::size_t>(g.vertex_count()), 0.0);
  std::vector<bool> present(static_cast<std::size_t>(g.vertex_count()), false);
  auto set = [&](const std::string& name, double m) {
    const int i = g.index_of(name);
    measure[static_cast<std::size_t>(i)] = m;
    present[static_cast<std::size_t>(i)] = true;
  };
  if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) {
    nlohmann::json doc;
    try {
      in >> doc;
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError("cannot parse " + path + ": " + e.what());
    }
    if (!doc.is_object()) throw ValidationError("measure file must be a JSON object");
    for (const auto& [key, value] : doc.items()) {
      if (!value.is_number()) throw ValidationError("measure values must be numbers");
      set(key, value.get<double>());
    }
  } else {
    std::string line;
    int lineNo = 0;
    while (std::getline(in, line)) {
      ++lineNo;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::istringstream ls(line);
      std::string name;
      double m = 0.0;
      if (!(ls >> name)) continue;
      if (!(ls >> m)) throw ValidationError("measure line " + std::to_string(lineNo) + ": expected \"name m\"");
      set(name, m);
    }
  }
  for (int i = 0; i < g.vertex_count(); ++i) {
    if (!present[static_cast<std::size_t>(i)]) throw ValidationError("measure missing for vertex " + g.name(i));
  }
  return measure;
}

inline nlohmann::json graph_to_json(const WeightedGraph& g) {
  nlohmann::json doc;
  doc["vertices"] = g.names();
  auto edges = nlohmann::json::array();
  for (const auto& e : g.edges()) {
    edges.push_back(nlohmann::json::array({g.name(e.u), g.name(e.v), e.w}));
  }
  doc["edges"] = std::move(edges);
  nlohmann::json measure = nlohmann::json::object();
  for (int i = 0; i < g.vertex_count(); ++i) measure[g.name(i)] = g.measure(i);
  doc["measure"] = std::move(measure);
  return doc;
}

}  // namespace graphcurv
