#pragma once

#include <sstream>

#include <nlohmann/json.hpp>

#include "graphcurv/bakry_emery.hpp"
#include "graphcurv/bounds.hpp"
#include "graphcurv/resistance.hpp"

namespace graphcurv {

inline constexpr int kSchemaVersion = 1;

/// +inf serializes as the string "inf"; JSON has no infinity literal.
inline nlohmann::json json_real(double v) {
  if (std::isinf(v)) return v > 0 ? nlohmann::json("inf") : nlohmann::json("-inf");
  return nlohmann::json(v);
}

/// Shortest round-trip decimal form, shared by CSV output.
inline std::string number_string(double v) { return nlohmann::json(v).dump(); }

inline nlohmann::json curvature_to_json(const CurvatureResult& r, const WeightedGraph& g) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["vertices"] = g.names();
  j["n"] = json_real(r.n);
  nlohmann::json per = nlohmann::json::object();
  for (int x = 0; x < g.vertex_count(); ++x) per[g.name(x)] = json_real(r.perVertexK[static_cast<std::size_t>(x)]);
  j["perVertex"] = std::move(per);
  j["globalK"] = json_real(r.globalK);
  return j;
}

inline nlohmann::json resistance_to_json(const ResistanceSolution& s, const WeightedGraph& g) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["vertices"] = g.names();
  j["source"] = g.name(s.source);
  j["target"] = g.name(s.target);
  j["rho"] = s.rho;
  j["kkt_residual"] = s.kktResidual;
  nlohmann::json active = nlohmann::json::array();
  for (const int x : s.activeVertices) active.push_back(g.name(x));
  j["active_vertices"] = std::move(active);
  nlohmann::json f = nlohmann::json::object();
  for (int x = 0; x < g.vertex_count(); ++x) f[g.name(x)] = s.optimizer[static_cast<std::size_t>(x)];
  j["f"] = std::move(f);
  return j;
}

inline nlohmann::json diameter_to_json(const DiameterResult& r, const DistanceComparison& cmp,
                                       int diamD, const WeightedGraph& g) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["vertices"] = g.names();
  j["diam_rho"] = r.value;
  j["witness"] = {{"x", g.name(r.x)}, {"y", g.name(r.y)}};
  j["diam_d"] = diamD;
  j["deg_max"] = cmp.degMax;
  j["pair_selection"] = r.exact ? "all" : "heuristic";
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& p : cmp.pairs) {
    pairs.push_back({{"x0", g.name(p.x0)},
                     {"y0", g.name(p.y0)},
                     {"d", p.d},
                     {"rho", p.rho},
                     {"lemma_bound", p.bound},
                     {"ratio", p.ratio},
                     {"pass", p.pass}});
  }
  j["pairs"] = std::move(pairs);
  j["all_pass"] = cmp.allPass;
  return j;
}

inline std::string diameter_to_csv(const DistanceComparison& cmp, const WeightedGraph& g) {
  std::ostringstream out;
  out << "# schema_version: " << kSchemaVersion << "\n";
  out << "x0,y0,d,rho,lemma_bound,ratio\n";
  for (const auto& p : cmp.pairs) {
    out << g.name(p.x0) << ',' << g.name(p.y0) << ',' << p.d << ',' << number_string(p.rho) << ','
        << number_string(p.bound) << ',' << number_string(p.ratio) << "\n";
  }
  return out.str();
}

inline nlohmann::json bound_report_to_json(const BoundReport& r, const WeightedGraph& g) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["graphId"] = r.graphId;
  j["vertices"] = g.names();
  j["n"] = json_real(r.n);
  j["globalK"] = json_real(r.globalK);
  j["K_used"] = json_real(r.usedK);
  j["K_overridden"] = r.kOverridden;
  j["degMax"] = r.degMax;
  j["diam_d"] = r.diamD;
  j["status"] = to_string(r.status);
  if (r.status == ReportStatus::Verified) {
    j["pair_selection"] = r.pairsExact ? "all" : "heuristic";
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& p : r.pairs) {
      pairs.push_back({{"x0", g.name(p.x0)},
                       {"y0", g.name(p.y0)},
                       {"d", p.d},
                       {"rho", p.rho},
                       {"theoremRHS", p.theoremRHS},
                       {"margin", p.margin},
                       {"pass", p.pass}});
    }
    j["pairs"] = std::move(pairs);
    j["corollary"] = {{"rhs", r.corollaryRHS}, {"margin", r.corollaryMargin}, {"pass", r.corollaryPass}};
  }
  if (r.status == ReportStatus::SolverIncomplete) j["error"] = r.error;
  return j;
}

inline std::string bound_report_to_csv(const BoundReport& r, const WeightedGraph& g) {
  std::ostringstream out;
  out << "# schema_version: " << kSchemaVersion << "\n";
  out << "# graphId: " << r.graphId << "\n";
  out << "# status: " << to_string(r.status) << "\n";
  out << "x0,y0,d,rho,rhs,margin\n";
  for (const auto& p : r.pairs) {
    out << g.name(p.x0) << ',' << g.name(p.y0) << ',' << p.d << ',' << number_string(p.rho) << ','
        << number_string(p.theoremRHS) << ',' << number_string(p.margin) << "\n";
  }
  return out.str();
}

inline nlohmann::json sweep_to_json(const SweepResult& s, const WeightedGraph& g) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["vertices"] = g.names();
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& r : s.entries) {
    nlohmann::json e;
    e["n"] = json_real(r.n);
    e["globalK"] = json_real(r.globalK);
    e["status"] = to_string(r.status);
    if (r.status == ReportStatus::Verified) {
      e["corollaryRHS"] = r.corollaryRHS;
      e["diam_d"] = r.diamD;
      e["all_pairs_pass"] = r.all_pairs_pass();
      e["corollary_pass"] = r.corollaryPass;
    }
    entries.push_back(std::move(e));
  }
  j["entries"] = std::move(entries);
  if (s.bestIndex >= 0) {
    const auto& best = s.entries[static_cast<std::size_t>(s.bestIndex)];
    j["best"] = {{"n", json_real(best.n)}, {"corollaryRHS", best.corollaryRHS}};
  } else {
    j["best"] = nullptr;
    j["empty_applicable_set"] = true;
  }
  return j;
}

/// Decay-curve CSV: columns t, sup_gamma, bound_e2kt.
inline std::string decay_to_csv(const std::vector<double>& ts, const std::vector<double>& supGamma,
                                const std::vector<double>& bound) {
  std::ostringstream out;
  out << "# schema_version: " << kSchemaVersion << "\n";
  out << "t,sup_gamma,bound_e2kt\n";
  for (std::size_t i = 0; i < ts.size(); ++i) {
    out << number_string(ts[i]) << ',' << number_string(supGamma[i]) << ','
        << number_string(bound[i]) << "\n";
  }
  return out.str();
}

}  // namespace graphcurv
