// Command-line front end: generators, curvature, resistance, diameter, heat
// decay curves, bound verification and dimension sweeps. Outputs embed the
// resolved configuration and are deterministic given identical config + seed.

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "graphcurv/graphcurv.hpp"

namespace {

using nlohmann::json;

// Exit codes: 0 success, 1 validation error, 2 solver failure,
// 3 bound demanded but curvature nonpositive.
constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitSolver = 2;
constexpr int kExitInapplicable = 3;

struct CommonOptions {
  std::string edgesPath;
  std::string family;
  int size = 0;
  double p = 0.5;
  std::uint64_t seed = 0;
  std::string measure = "unit";
  std::string n = "inf";
  double tol = 1e-8;
  std::string out;
  std::string format = "json";
  int workers = graphcurv::default_workers();
};

void add_graph_flags(CLI::App* cmd, CommonOptions& o) {
  auto* edges = cmd->add_option("--edges", o.edgesPath, "Graph document (.json or edge-list text)");
  auto* family = cmd->add_option("--family", o.family,
                                 "Family: complete|cycle|path|hypercube|star|erdos_renyi");
  edges->excludes(family);
  family->excludes(edges);
  cmd->add_option("--size", o.size,
                  "Vertices (complete/cycle/path), dimension (hypercube), leaves (star)");
  cmd->add_option("--p", o.p, "Edge probability for erdos_renyi");
  cmd->add_option("--seed", o.seed, "Seed for randomized families and fields");
  cmd->add_option("--measure", o.measure, "unit | degree | PATH to a per-vertex measure file");
}

void add_output_flags(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--out", o.out, "Output path (stdout when omitted)");
  cmd->add_option("--format", o.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
}

double parse_dimension(const std::string& s) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw graphcurv::ValidationError("cannot parse dimension: " + s);
  }
}

std::vector<double> parse_dimension_grid(const std::string& s) {
  std::vector<double> grid;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) grid.push_back(parse_dimension(item));
  if (grid.empty()) throw graphcurv::ValidationError("empty dimension grid");
  return grid;
}

graphcurv::WeightedGraph build_graph(const CommonOptions& o) {
  using namespace graphcurv;
  if (!o.edgesPath.empty()) {
    WeightedGraph g = load_graph_file(o.edgesPath);
    if (o.measure == "unit") return g;  // edge-list default; JSON docs carry their own measure
    if (o.measure == "degree") return g.with_measure(MeasureRule::Degree);
    return g.with_measure(load_measure_file(o.measure, g));
  }
  if (o.family.empty()) {
    throw ValidationError("exactly one of --edges or --family is required");
  }
  if (o.measure != "unit" && o.measure != "degree") {
    throw ValidationError("generated families support --measure unit|degree only");
  }
  FamilyParams params;
  params.size = o.size;
  params.edgeProbability = o.p;
  params.seed = o.seed;
  return generate_family(family_from_string(o.family), params,
                         o.measure == "degree" ? MeasureRule::Degree : MeasureRule::Unit);
}

json config_json(const std::string& command, const CommonOptions& o) {
  json c;
  c["command"] = command;
  if (!o.edgesPath.empty()) {
    c["edges"] = o.edgesPath;
  } else {
    c["family"] = o.family;
    c["size"] = o.size;
    if (o.family == "erdos_renyi") c["p"] = o.p;
  }
  c["measure"] = o.measure;
  c["n"] = o.n;
  c["tol"] = o.tol;
  c["format"] = o.format;
  c["seed"] = o.seed;
  return c;
}

std::string iso8601_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_output(const CommonOptions& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw graphcurv::ValidationError("cannot open output file: " + o.out);
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

void write_json(const CommonOptions& o, json payload, const json& config) {
  payload["config"] = config;
  payload["timestamp"] = iso8601_now();
  write_output(o, payload.dump(2));
}

std::string csv_with_config(const std::string& csv, const json& config) {
  std::ostringstream out;
  out << "# config: " << config.dump() << "\n";
  out << "# timestamp: " << iso8601_now() << "\n";
  out << csv;
  return out.str();
}

int run_gen(const CommonOptions& o) {
  using namespace graphcurv;
  if (o.format == "csv") throw ValidationError("gen emits JSON graph documents only");
  const WeightedGraph g = build_graph(o);
  write_json(o, graph_to_json(g), config_json("gen", o));
  return kExitOk;
}

int run_curvature(const CommonOptions& o) {
  using namespace graphcurv;
  const WeightedGraph g = build_graph(o);
  const double n = parse_dimension(o.n);
  const CurvatureResult r = curvature_all(g, n, o.workers);
  const json config = config_json("curvature", o);
  if (o.format == "csv") {
    std::ostringstream csv;
    csv << "# schema_version: " << kSchemaVersion << "\n";
    csv << "vertex,K\n";
    for (int x = 0; x < g.vertex_count(); ++x) {
      csv << g.name(x) << ','
          << (std::isinf(r.perVertexK[static_cast<std::size_t>(x)])
                  ? std::string("inf")
                  : number_string(r.perVertexK[static_cast<std::size_t>(x)]))
          << "\n";
    }
    write_output(o, csv_with_config(csv.str(), config));
  } else {
    write_json(o, curvature_to_json(r, g), config);
  }
  return kExitOk;
}

int run_resistance(const CommonOptions& o, const std::string& source, const std::string& target) {
  using namespace graphcurv;
  if (o.format == "csv") throw ValidationError("resistance emits JSON only");
  const WeightedGraph g = build_graph(o);
  BarrierOptions solver;
  solver.tol = o.tol;
  const ResistanceSolution sol =
      resistance_distance(g, g.index_of(source), g.index_of(target), solver);
  json config = config_json("resistance", o);
  config["source"] = source;
  config["target"] = target;
  write_json(o, resistance_to_json(sol, g), config);
  return kExitOk;
}

int run_diameter(const CommonOptions& o) {
  using namespace graphcurv;
  const WeightedGraph g = build_graph(o);
  BarrierOptions solver;
  solver.tol = o.tol;
  const DiameterResult diam = resistance_diameter(g, solver, o.workers);
  const DistanceComparison cmp = check_distance_comparison(g, o.tol, solver, o.workers);
  const int diamD = g.vertex_count() == 1 ? 0 : combinatorial_distances(g).diameter();
  const json config = config_json("diameter", o);
  if (o.format == "csv") {
    write_output(o, csv_with_config(diameter_to_csv(cmp, g), config));
  } else {
    write_json(o, diameter_to_json(diam, cmp, diamD, g), config);
  }
  return kExitOk;
}

int run_heat(const CommonOptions& o, double tmax, double tstep) {
  using namespace graphcurv;
  const WeightedGraph g = build_graph(o);
  const double n = parse_dimension(o.n);
  if (!(tstep > 0.0) || !(tmax >= 0.0)) throw ValidationError("need --tmax >= 0 and --tstep > 0");
  const SpectralDecomposition d = spectral_decompose(g);
  const ScalarField f = rng::normal_field(g.vertex_count(), o.seed);
  std::vector<double> ts;
  for (double t = 0.0; t <= tmax + 1e-12; t += tstep) ts.push_back(t);
  const std::vector<double> sup = gradient_decay(g, d, f, ts);
  const double k = curvature_all(g, n, o.workers).globalK;
  const double gf0 = sup.empty() ? 0.0 : sup.front();
  std::vector<double> bound;
  bound.reserve(ts.size());
  for (const double t : ts) bound.push_back(std::exp(-2.0 * k * t) * gf0);

  json config = config_json("heat", o);
  config["tmax"] = tmax;
  config["tstep"] = tstep;
  if (o.format == "json") {
    json payload;
    payload["schema_version"] = kSchemaVersion;
    payload["vertices"] = g.names();
    payload["globalK"] = json_real(k);
    json series = json::array();
    for (std::size_t i = 0; i < ts.size(); ++i) {
      series.push_back({{"t", ts[i]}, {"sup_gamma", sup[i]}, {"bound_e2kt", bound[i]}});
    }
    payload["series"] = std::move(series);
    write_json(o, payload, config);
  } else {
    write_output(o, csv_with_config(decay_to_csv(ts, sup, bound), config));
  }
  return kExitOk;
}

int run_verify(const CommonOptions& o, std::optional<double> overrideK) {
  using namespace graphcurv;
  const WeightedGraph g = build_graph(o);
  const double n = parse_dimension(o.n);
  VerifyOptions vop;
  vop.tol = o.tol;
  vop.workers = o.workers;
  vop.overrideK = overrideK;
  const std::string graphId = o.edgesPath.empty() ? o.family + "_" + std::to_string(o.size) : o.edgesPath;
  const BoundReport report = verify_graph(g, n, vop, graphId);
  json config = config_json("verify", o);
  if (overrideK) config["K"] = *overrideK;
  if (o.format == "csv") {
    write_output(o, csv_with_config(bound_report_to_csv(report, g), config));
  } else {
    write_json(o, bound_report_to_json(report, g), config);
  }
  if (report.status == ReportStatus::InapplicableNonpositiveK) return kExitInapplicable;
  if (report.status == ReportStatus::SolverIncomplete) return kExitSolver;
  return kExitOk;
}

int run_sweep(const CommonOptions& o) {
  using namespace graphcurv;
  if (o.format == "csv") throw ValidationError("sweep emits JSON only");
  const WeightedGraph g = build_graph(o);
  const std::vector<double> grid = parse_dimension_grid(o.n);
  VerifyOptions vop;
  vop.tol = o.tol;
  vop.workers = o.workers;
  const std::string graphId = o.edgesPath.empty() ? o.family + "_" + std::to_string(o.size) : o.edgesPath;
  const SweepResult sweep = best_dimension_sweep(g, grid, vop, graphId);
  write_json(o, sweep_to_json(sweep, g), config_json("sweep", o));
  return sweep.bestIndex >= 0 ? kExitOk : kExitInapplicable;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curvature, distance and diameter-bound toolkit for finite weighted graphs"};
  app.require_subcommand(1);

  CommonOptions o;
  std::string source, target;
  double tmax = 10.0;
  double tstep = 0.1;
  double overrideKValue = 0.0;

  auto* gen = app.add_subcommand("gen", "Generate a graph family as a JSON document");
  auto* curvature = app.add_subcommand("curvature", "Per-vertex curvature K(x, n) and the global minimum");
  auto* resistance = app.add_subcommand("resistance", "Resistance distance between two vertices");
  auto* diameter = app.add_subcommand("diameter", "Resistance diameter and distance-comparison table");
  auto* heat = app.add_subcommand("heat", "Gradient decay curve of the heat semigroup");
  auto* verify = app.add_subcommand("verify", "Check the resistance and diameter bounds at one dimension");
  auto* sweep = app.add_subcommand("sweep", "Verify over a dimension grid and report the best bound");

  for (CLI::App* cmd : {gen, curvature, resistance, diameter, heat, verify, sweep}) {
    add_graph_flags(cmd, o);
    add_output_flags(cmd, o);
    cmd->add_option("--workers", o.workers, "Worker threads (results are worker-count independent)");
    cmd->add_option("--tol", o.tol, "Solver / verification tolerance");
  }
  for (CLI::App* cmd : {curvature, heat, verify}) {
    cmd->add_option("--n", o.n, "Dimension: positive real or 'inf'");
  }
  sweep->add_option("--n", o.n, "Dimension grid, e.g. 1.5,2,4,inf");
  resistance->add_option("--source", source, "Source vertex name")->required();
  resistance->add_option("--target", target, "Target vertex name")->required();
  heat->add_option("--tmax", tmax, "Last time on the decay grid");
  heat->add_option("--tstep", tstep, "Grid step");
  auto* overrideKOpt = verify->add_option("--K", overrideKValue,
                                          "Override curvature K instead of computing it (marked in the report)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (!(o.tol > 0.0)) throw graphcurv::ValidationError("--tol must be positive");
    if (gen->parsed()) return run_gen(o);
    if (curvature->parsed()) return run_curvature(o);
    if (resistance->parsed()) return run_resistance(o, source, target);
    if (diameter->parsed()) return run_diameter(o);
    if (heat->parsed()) return run_heat(o, tmax, tstep);
    if (verify->parsed()) {
      std::optional<double> overrideK;
      if (overrideKOpt->count() > 0) overrideK = overrideKValue;
      return run_verify(o, overrideK);
    }
    if (sweep->parsed()) return run_sweep(o);
  } catch (const graphcurv::SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const graphcurv::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}
