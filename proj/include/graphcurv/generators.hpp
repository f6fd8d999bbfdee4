#pragma once

#include "graphcurv/graph.hpp"

namespace graphcurv {

enum class Family { Complete, Cycle, Path, Hypercube, Star, ErdosRenyi };

/// size is the vertex count for complete/cycle/path, the dimension for
/// hypercube, and the leaf count for star.
struct FamilyParams {
  int size = 0;
  double edgeProbability = 0.5;
  std::uint64_t seed = 0;
};

inline const char* to_string(Family f) {
  switch (f) {
    case Family::Complete: return "complete";
    case Family::Cycle: return "cycle";
    case Family::Path: return "path";
    case Family::Hypercube: return "hypercube";
    case Family::Star: return "star";
    case Family::ErdosRenyi: return "erdos_renyi";
  }
  return "?";
}

inline Family family_from_string(const std::string& s) {
  if (s == "complete") return Family::Complete;
  if (s == "cycle") return Family::Cycle;
  if (s == "path") return Family::Path;
  if (s == "hypercube") return Family::Hypercube;
  if (s == "star") return Family::Star;
  if (s == "erdos_renyi") return Family::ErdosRenyi;
  throw ValidationError("unknown graph family: " + s);
}

namespace detail {

inline std::vector<std::string> index_names(int n) {
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
  return names;
}

}  // namespace detail

/// Unit edge weights throughout; the measure rule picks m = 1 or m = deg
/// (the latter makes Deg identically 1).
inline WeightedGraph generate_family(Family family, const FamilyParams& params, MeasureRule rule) {
  const int size = params.size;
  std::vector<RawEdge> edges;
  int n = 0;
  switch (family) {
    case Family::Complete: {
      if (size < 1) throw ValidationError("complete graph needs size >= 1");
      n = size;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.push_back({i, j, 1.0});
      break;
    }
    case Family::Cycle: {
      if (size < 3) throw ValidationError("cycle needs size >= 3");
      n = size;
      for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, 1.0});
      break;
    }
    case Family::Path: {
      if (size < 1) throw ValidationError("path needs size >= 1");
      n = size;
      for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
      break;
    }
    case Family::Hypercube: {
      if (size < 1 || size > 20) throw ValidationError("hypercube needs dimension in [1, 20]");
      n = 1 << size;
      for (int i = 0; i < n; ++i)
        for (int b = 0; b < size; ++b) {
          const int j = i ^ (1 << b);
          if (i < j) edges.push_back({i, j, 1.0});
        }
      break;
    }
    case Family::Star: {
      if (size < 1) throw ValidationError("star needs at least one leaf");
      n = size + 1;  // v0 center
      for (int i = 1; i <= size; ++i) edges.push_back({0, i, 1.0});
      break;
    }
    case Family::ErdosRenyi: {
      if (size < 1) throw ValidationError("erdos_renyi needs size >= 1");
      const double p = params.edgeProbability;
      if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("edge probability must lie in [0, 1]");
      n = size;
      std::mt19937_64 eng(params.seed);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (rng::u01(eng) < p) edges.push_back({i, j, 1.0});
      break;
    }
  }
  return {detail::index_names(n), edges, rule};
}

}  // namespace graphcurv
