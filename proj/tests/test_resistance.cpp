#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace graphcurv;
using testutil::corpus;

namespace {
const double kSqrt2 = 1.4142135623730951;
}

TEST_CASE("resistance closed forms") {
  SECTION("single edge: rho = sqrt(2)") {
    const ResistanceSolution sol = resistance_distance(testutil::single_edge(), 0, 1, 1e-8);
    REQUIRE_THAT(sol.rho, Catch::Matchers::WithinAbs(kSqrt2, 1e-6));
    REQUIRE(sol.kktResidual <= 1e-8);
  }

  SECTION("path P_3 endpoints: rho = 2, optimizer increments (1,1), middle vertex active") {
    const WeightedGraph g = testutil::path3();
    const ResistanceSolution sol = resistance_distance(g, 0, 2, 1e-8);
    REQUIRE_THAT(sol.rho, Catch::Matchers::WithinAbs(2.0, 1e-6));
    REQUIRE_THAT(sol.optimizer[1] - sol.optimizer[0], Catch::Matchers::WithinAbs(1.0, 1e-4));
    REQUIRE_THAT(sol.optimizer[2] - sol.optimizer[1], Catch::Matchers::WithinAbs(1.0, 1e-4));
    REQUIRE(sol.activeVertices == std::vector<int>{1});
  }

  SECTION("doubled-weight edge: Gamma f = 2 s^2 <= 1 forces rho = 1/sqrt(2)") {
    const ResistanceSolution sol = resistance_distance(testutil::single_edge(4.0), 0, 1, 1e-8);
    REQUIRE_THAT(sol.rho, Catch::Matchers::WithinAbs(1.0 / kSqrt2, 1e-6));
  }

  SECTION("path P_4 endpoints: rho = sqrt(10)") {
    const WeightedGraph g = generate_family(Family::Path, {.size = 4}, MeasureRule::Unit);
    const ResistanceSolution sol = resistance_distance(g, 0, 3, 1e-8);
    REQUIRE_THAT(sol.rho, Catch::Matchers::WithinAbs(std::sqrt(10.0), 1e-6));
  }

  SECTION("coincident endpoints return zero immediately") {
    const ResistanceSolution sol = resistance_distance(testutil::single_edge(), 1, 1, 1e-8);
    REQUIRE(sol.rho == 0.0);
    REQUIRE(sol.kktResidual == 0.0);
  }
}

TEST_CASE("resistance solution invariants") {
  for (const auto& entry : {corpus()[2], corpus()[11], corpus()[31], corpus()[44]}) {
    const int n = entry.g.vertex_count();
    const ResistanceSolution sol = resistance_distance(entry.g, 0, n - 1, 1e-8);
    SECTION("feasibility, gauge and sign on " + entry.id) {
      const ScalarField gf = gamma(entry.g, sol.optimizer);
      for (const double v : gf) REQUIRE(v <= 1.0 + 1e-8);
      REQUIRE(sol.optimizer[static_cast<std::size_t>(sol.source)] == 0.0);
      REQUIRE(sol.rho >= 0.0);
      REQUIRE(sol.kktResidual <= 1e-8);
    }
  }
}

TEST_CASE("resistance metric properties") {
  SECTION("symmetry within twice the solver tolerance") {
    for (const auto& entry : {corpus()[3], corpus()[19], corpus()[36]}) {
      const int n = entry.g.vertex_count();
      const double fwd = resistance_distance(entry.g, 0, n - 1, 1e-8).rho;
      const double bwd = resistance_distance(entry.g, n - 1, 0, 1e-8).rho;
      REQUIRE_THAT(fwd, Catch::Matchers::WithinAbs(bwd, 2e-8));
    }
  }

  SECTION("triangle inequality") {
    for (const auto& entry : {corpus()[5], corpus()[23], corpus()[41]}) {
      const WeightedGraph& g = entry.g;
      const int n = g.vertex_count();
      const int a = 0, b = n / 2, c = n - 1;
      if (a == b || b == c) continue;
      const double ab = resistance_distance(g, a, b, 1e-8).rho;
      const double bc = resistance_distance(g, b, c, 1e-8).rho;
      const double ac = resistance_distance(g, a, c, 1e-8).rho;
      REQUIRE(ac <= ab + bc + 3e-8);
    }
  }

  SECTION("scale invariance under (lambda w, lambda m)") {
    for (const auto& entry : {corpus()[1], corpus()[16], corpus()[30]}) {
      const int n = entry.g.vertex_count();
      const double base = resistance_distance(entry.g, 0, n - 1, 1e-9).rho;
      for (const double lambda : {0.1, 10.0}) {
        const WeightedGraph s = testutil::scaled(entry.g, lambda, lambda);
        REQUIRE_THAT(resistance_distance(s, 0, n - 1, 1e-9).rho,
                     Catch::Matchers::WithinAbs(base, 1e-5));
      }
    }
  }

  SECTION("adding an edge (raising a weight) never increases rho") {
    std::mt19937_64 eng(505);
    for (const auto& entry : {corpus()[17], corpus()[39]}) {
      const WeightedGraph& g = entry.g;
      const int n = g.vertex_count();
      const double before = resistance_distance(g, 0, n - 1, 1e-9).rho;
      for (int trial = 0; trial < 3; ++trial) {
        auto edges = g.edges();
        const int u = static_cast<int>(eng() % static_cast<std::uint64_t>(n));
        int v = static_cast<int>(eng() % static_cast<std::uint64_t>(n));
        if (u == v) v = (v + 1) % n;
        bool found = false;
        for (auto& e : edges) {
          if ((e.u == std::min(u, v)) && (e.v == std::max(u, v))) {
            e.w += rng::uniform(eng, 0.5, 2.0);
            found = true;
            break;
          }
        }
        if (!found) edges.push_back({std::min(u, v), std::max(u, v), rng::uniform(eng, 0.5, 2.0)});
        const WeightedGraph augmented(g.names(), edges, g.measures());
        const double after = resistance_distance(augmented, 0, n - 1, 1e-9).rho;
        REQUIRE(after <= before + 1e-7);
      }
    }
  }

  SECTION("matches the projected-gradient oracle on graphs with <= 6 vertices") {
    std::vector<testutil::NamedGraph> small;
    for (const auto& entry : corpus()) {
      if (entry.g.vertex_count() <= 6) small.push_back(entry);
    }
    REQUIRE(small.size() >= 8);
    int checked = 0;
    for (const auto& entry : small) {
      const int n = entry.g.vertex_count();
      const double barrier = resistance_distance(entry.g, 0, n - 1, 1e-9).rho;
      const double oracle = testutil::pgd_resistance(entry.g, 0, n - 1, 77);
      REQUIRE_THAT(oracle, Catch::Matchers::WithinAbs(barrier, 1e-5));
      ++checked;
    }
    REQUIRE(checked >= 8);
  }
}

TEST_CASE("resistance error paths") {
  SECTION("disconnected graph") {
    const WeightedGraph g({"a", "b", "c", "d"}, {{0, 1, 1.0}, {2, 3, 1.0}}, MeasureRule::Unit);
    REQUIRE_THROWS_AS(resistance_distance(g, 0, 3, 1e-8), DisconnectedGraphError);
  }

  SECTION("iteration caps are hard errors, never silent approximations") {
    BarrierOptions opt;
    opt.tol = 1e-8;
    opt.maxStages = 2;
    REQUIRE_THROWS_AS(resistance_distance(testutil::path3(), 0, 2, opt), SolverError);
    BarrierOptions tight;
    tight.maxNewtonPerStage = 1;
    REQUIRE_THROWS_AS(resistance_distance(testutil::path3(), 0, 2, tight), SolverError);
  }

  SECTION("nonpositive tolerance") {
    REQUIRE_THROWS_AS(resistance_distance(testutil::path3(), 0, 2, 0.0), ValidationError);
  }
}

TEST_CASE("resistance diameter") {
  SECTION("single edge") {
    const DiameterResult r = resistance_diameter(testutil::single_edge());
    REQUIRE_THAT(r.value, Catch::Matchers::WithinAbs(kSqrt2, 1e-6));
    REQUIRE(r.exact);
    REQUIRE(r.pairsEvaluated == 1);
  }

  SECTION("path P_3 diameter 2, attained by the endpoints") {
    const DiameterResult r = resistance_diameter(testutil::path3());
    REQUIRE_THAT(r.value, Catch::Matchers::WithinAbs(2.0, 1e-6));
    REQUIRE(((r.x == 0 && r.y == 2)));
  }

  SECTION("pair shortlist activates beyond the exact-enumeration cutoff") {
    const WeightedGraph g = generate_family(Family::Path, {.size = 8}, MeasureRule::Unit);
    const DistanceMatrix d = combinatorial_distances(g);
    const PairSelection exact = select_pairs(d, 300);
    REQUIRE(exact.exact);
    REQUIRE(exact.pairs.size() == 28);
    const PairSelection shortlist = select_pairs(d, 5);
    REQUIRE_FALSE(shortlist.exact);
    REQUIRE(!shortlist.pairs.empty());
    REQUIRE(shortlist.pairs.size() < exact.pairs.size());
    // the true farthest pair survives the shortlist
    bool hasEnds = false;
    for (const auto& [x, y] : shortlist.pairs) hasEnds = hasEnds || (x == 0 && y == 7);
    REQUIRE(hasEnds);
  }
}

TEST_CASE("distance comparison (combinatorial vs resistance)") {
  SECTION("path P_3 is tight: d = sqrt(Deg_max/2) rho exactly") {
    const DistanceComparison cmp = check_distance_comparison(testutil::path3(), 1e-6);
    REQUIRE(cmp.degMax == 2.0);
    REQUIRE(cmp.allPass);
    double bestRatio = 0.0;
    for (const auto& p : cmp.pairs) bestRatio = std::max(bestRatio, p.ratio);
    REQUIRE(bestRatio >= 0.999);
  }

  SECTION("single edge is tight") {
    const DistanceComparison cmp = check_distance_comparison(testutil::single_edge(), 1e-6);
    REQUIRE(cmp.allPass);
    REQUIRE_THAT(cmp.pairs[0].ratio, Catch::Matchers::WithinAbs(1.0, 1e-6));
  }

  SECTION("adjacent pair in K_5 has ratio strictly below 1") {
    const WeightedGraph g = generate_family(Family::Complete, {.size = 5}, MeasureRule::Unit);
    const DistanceComparison cmp = check_distance_comparison(g, 1e-6);
    REQUIRE(cmp.allPass);
    for (const auto& p : cmp.pairs) REQUIRE(p.ratio < 1.0);
  }

  SECTION("holds on sampled corpus graphs") {
    for (const auto& entry : {corpus()[10], corpus()[25], corpus()[42]}) {
      REQUIRE(check_distance_comparison(entry.g, 1e-6).allPass);
    }
  }
}
