#pragma once

#include <algorithm>
#include <map>
#include <unordered_map>
#include <utility>

#include "graphcurv/common.hpp"

namespace graphcurv {

enum class MeasureRule { Unit, Degree };

/// One raw edge entry as it appears in an input document. Entries may repeat
/// or list both orientations; validation resolves them.
struct RawEdge {
  int u = 0;
  int v = 0;
  double w = 0.0;
};

/// Finite weighted graph (V, w, m): symmetric nonnegative edge weights with a
/// zero diagonal and strictly positive vertex measure. Immutable after
/// construction and safe to share across threads.
class WeightedGraph {
 public:
  struct Neighbor {
    int v;
    double w;
  };

  WeightedGraph(std::vector<std::string> names, const std::vector<RawEdge>& edges,
                MeasureRule rule)
      : WeightedGraph(std::move(names), edges, std::vector<double>{}, rule) {}

  WeightedGraph(std::vector<std::string> names, const std::vector<RawEdge>& edges,
                std::vector<double> measure)
      : WeightedGraph(std::move(names), edges, std::move(measure), MeasureRule::Unit) {}

  int vertex_count() const noexcept { return static_cast<int>(names_.size()); }

  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(int x) const { return names_[static_cast<std::size_t>(x)]; }

  /// Index of a named vertex; throws ValidationError if unknown.
  int index_of(const std::string& name) const {
    const auto it = index_.find(name);
    if (it == index_.end()) throw ValidationError("unknown vertex name: " + name);
    return it->second;
  }

  bool has_vertex(const std::string& name) const { return index_.count(name) != 0; }

  const std::vector<Neighbor>& neighbors(int x) const { return adj_[static_cast<std::size_t>(x)]; }

  /// w(x, y); zero when the vertices are not adjacent.
  double weight(int x, int y) const {
    const auto& row = adj_[static_cast<std::size_t>(x)];
    const auto it = std::lower_bound(row.begin(), row.end(), y,
                                     [](const Neighbor& nb, int v) { return nb.v < v; });
    return (it != row.end() && it->v == y) ? it->w : 0.0;
  }

  double measure(int x) const { return measure_[static_cast<std::size_t>(x)]; }
  const std::vector<double>& measures() const noexcept { return measure_; }

  /// deg(x) = sum_y w(x, y)
  double degree(int x) const { return degree_[static_cast<std::size_t>(x)]; }

  bool connected() const noexcept { return components_.size() == 1; }
  const std::vector<std::vector<int>>& components() const noexcept { return components_; }

  /// Resolved edge list, one entry per unordered pair with u < v.
  std::vector<RawEdge> edges() const {
    std::vector<RawEdge> out;
    for (int x = 0; x < vertex_count(); ++x) {
      for (const auto& nb : neighbors(x)) {
        if (x < nb.v) out.push_back({x, nb.v, nb.w});
      }
    }
    return out;
  }

  /// Same vertices and edges with the measure replaced.
  WeightedGraph with_measure(MeasureRule rule) const { return {names_, edges(), rule}; }
  WeightedGraph with_measure(std::vector<double> measure) const {
    return {names_, edges(), std::move(measure)};
  }

 private:
  WeightedGraph(std::vector<std::string> names, const std::vector<RawEdge>& edges,
                std::vector<double> measure, MeasureRule rule)
      : names_(std::move(names)) {
    if (names_.empty()) throw ValidationError("graph must have at least one vertex");
    const int n = vertex_count();
    index_.reserve(names_.size());
    for (int i = 0; i < n; ++i) {
      if (!index_.emplace(names_[static_cast<std::size_t>(i)], i).second) {
        throw ValidationError("duplicate vertex name: " + names_[static_cast<std::size_t>(i)]);
      }
    }

    // Resolve raw entries. Conflicting duplicates (either orientation) are the
    // "asymmetric weight table" error; exact duplicates are accepted.
    std::map<std::pair<int, int>, double> table;
    for (const auto& e : edges) {
      if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) {
        throw ValidationError("edge endpoint out of range");
      }
      if (!std::isfinite(e.w)) throw ValidationError("edge weight must be finite");
      if (e.w < 0.0) throw ValidationError("edge weight must be nonnegative: " + name(e.u) + " " +
                                           name(e.v));
      if (e.u == e.v) {
        if (e.w > 0.0) {
          throw ValidationError("self-loop with positive weight at vertex " + name(e.u));
        }
        continue;  // explicit zero diagonal entry
      }
      const auto key = std::minmax(e.u, e.v);
      const auto [it, inserted] = table.emplace(key, e.w);
      if (!inserted && it->second != e.w) {
        throw ValidationError("asymmetric weight table: " + name(key.first) + " " +
                              name(key.second));
      }
    }

    adj_.assign(static_cast<std::size_t>(n), {});
    degree_.assign(static_cast<std::size_t>(n), 0.0);
    for (const auto& [key, w] : table) {
      if (w == 0.0) continue;  // zero weight means non-edge
      adj_[static_cast<std::size_t>(key.first)].push_back({key.second, w});
      adj_[static_cast<std::size_t>(key.second)].push_back({key.first, w});
      degree_[static_cast<std::size_t>(key.first)] += w;
      degree_[static_cast<std::size_t>(key.second)] += w;
    }
    for (auto& row : adj_) {
      std::sort(row.begin(), row.end(), [](const Neighbor& a, const Neighbor& b) { return a.v < b.v; });
    }

    if (!measure.empty()) {
      if (static_cast<int>(measure.size()) != n) {
        throw ValidationError("measure vector size does not match vertex count");
      }
      measure_ = std::move(measure);
    } else if (rule == MeasureRule::Unit) {
      measure_.assign(static_cast<std::size_t>(n), 1.0);
    } else {
      measure_ = degree_;
    }
    for (int i = 0; i < n; ++i) {
      const double m = measure_[static_cast<std::size_t>(i)];
      if (!std::isfinite(m) || m <= 0.0) {
        throw ValidationError("vertex measure must be positive and finite at " + name(i));
      }
    }

    compute_components();
  }

  void compute_components() {
    const int n = vertex_count();
    std::vector<int> label(static_cast<std::size_t>(n), -1);
    int nComp = 0;
    std::vector<int> queue;
    for (int s = 0; s < n; ++s) {
      if (label[static_cast<std::size_t>(s)] >= 0) continue;
      queue.assign(1, s);
      label[static_cast<std::size_t>(s)] = nComp;
      for (std::size_t head = 0; head < queue.size(); ++head) {
        for (const auto& nb : neighbors(queue[head])) {
          if (label[static_cast<std::size_t>(nb.v)] < 0) {
            label[static_cast<std::size_t>(nb.v)] = nComp;
            queue.push_back(nb.v);
          }
        }
      }
      ++nComp;
    }
    components_.assign(static_cast<std::size_t>(nComp), {});
    for (int x = 0; x < n; ++x) components_[static_cast<std::size_t>(label[static_cast<std::size_t>(x)])].push_back(x);
  }

  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
  std::vector<std::vector<Neighbor>> adj_;
  std::vector<double> degree_;
  std::vector<double> measure_;
  std::vector<std::vector<int>> components_;
};

/// Delta f(x) = (1/m(x)) sum_y w(x,y) (f(y) - f(x))
inline double laplacian_at(const WeightedGraph& g, const ScalarField& f, int x) {
  double acc = 0.0;
  for (const auto& nb : g.neighbors(x)) acc += nb.w * (f[static_cast<std::size_t>(nb.v)] - f[static_cast<std::size_t>(x)]);
  return acc / g.measure(x);
}

inline ScalarField laplacian_apply(const WeightedGraph& g, const ScalarField& f) {
  require_field_size(f, g.vertex_count(), "laplacian_apply");
  ScalarField out(f.size());
  for (int x = 0; x < g.vertex_count(); ++x) out[static_cast<std::size_t>(x)] = laplacian_at(g, f, x);
  return out;
}

/// Deg(x) = deg(x)/m(x) per vertex together with Deg_max. Isolated vertices
/// carry Deg = 0; distance-based operations reject those graphs separately.
struct DegreeRatio {
  std::vector<double> perVertex;
  double max = 0.0;
};

inline DegreeRatio degree_ratio(const WeightedGraph& g) {
  DegreeRatio r;
  r.perVertex.resize(static_cast<std::size_t>(g.vertex_count()));
  for (int x = 0; x < g.vertex_count(); ++x) {
    const double v = g.degree(x) / g.measure(x);
    r.perVertex[static_cast<std::size_t>(x)] = v;
    r.max = std::max(r.max, v);
  }
  return r;
}

}  // namespace graphcurv
