#include <doctest.h>

#include <cmath>

#include "netmon/analytic.hpp"
#include "netmon/game.hpp"
#include "netmon/oracle.hpp"
#include "test_util.hpp"

using namespace netmon;
using testutil::ringInstance;
using testutil::singletonInstance;

TEST_CASE("disjointness detection") {
  CHECK_FALSE(hasDisjointMonitoring(ringInstance()));  // e2 shared by v1, v2
  CHECK(hasDisjointMonitoring(singletonInstance(Vector::Constant(3, 1.0), 1)));
  const Instance one({"v1"}, {"e1"}, {{0}}, Vector::Constant(1, 1.0), 1);
  CHECK(hasDisjointMonitoring(one));
}

TEST_CASE("sensed node count follows the normalized-deficit rule") {
  Vector weights(3);
  weights << 1.0, 1.0, 0.25;
  const Instance inst = singletonInstance(weights, 1);
  CHECK(sensedNodeCount(inst, 1) == 2);  // deficit 2/6 beats 0.25 at j = 3
  CHECK(sensedNodeCount(inst, 2) == 3);  // deficit 1/6 stays below 0.25
  CHECK(sensedNodeCount(inst, 3) == 3);  // full budget always qualifies

  CHECK_THROWS_AS(sensedNodeCount(ringInstance(), 1), ValidationError);
}

TEST_CASE("disjoint equilibrium on two weighted nodes") {
  Vector weights(2);
  weights << 1.0, 0.5;
  const Instance inst = singletonInstance(weights, 1);
  const DisjointNE ne = solveDisjoint(inst);
  CHECK(ne.p == 2);
  CHECK(ne.s_p == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(ne.value == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(ne.marginals.rho(0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(ne.marginals.rho(1) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(ne.attack.probs(0) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(ne.attack.probs(1) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

  CHECK(profileEpsilon(inst, ne.defense, ne.attack) <= 1e-9);
  const OracleResult oracle = solveExact(inst);
  CHECK(std::abs(oracle.value - ne.value) <= 1e-9);
}

TEST_CASE("disjoint equilibrium leaves cheap components unmonitored") {
  Vector weights(3);
  weights << 1.0, 1.0, 0.25;
  const Instance inst = singletonInstance(weights, 1);
  const DisjointNE ne = solveDisjoint(inst);
  CHECK(ne.p == 2);
  CHECK(ne.value == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(ne.marginals.rho(0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(ne.marginals.rho(1) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(ne.marginals.rho(2) == 0.0);
  CHECK(ne.attack.probs(0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(ne.attack.probs(1) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(ne.attack.probs(2) == 0.0);
  CHECK(inst.weight(2) < ne.value);  // unmonitored criticality below the value

  // Attack probability decreases with criticality inside the sensed group.
  Vector varied(3);
  varied << 0.9, 0.6, 0.3;
  const DisjointNE graded = solveDisjoint(singletonInstance(varied, 1));
  for (int a = 0; a < graded.p; ++a) {
    for (int b = 0; b < graded.p; ++b) {
      const int ea = graded.star_components[static_cast<size_t>(graded.order[static_cast<size_t>(a)])];
      const int eb = graded.star_components[static_cast<size_t>(graded.order[static_cast<size_t>(b)])];
      if (varied(ea) > varied(eb)) {
        CHECK(graded.attack.probs(ea) < graded.attack.probs(eb));
      }
    }
  }
}

TEST_CASE("full budget covers everything at value zero") {
  Vector weights(4);
  weights << 0.9, 0.8, 0.7, 0.6;
  const Instance inst = singletonInstance(weights, 4);
  const DisjointNE ne = solveDisjoint(inst);
  CHECK(ne.p == 4);
  CHECK(ne.value == 0.0);
  for (int v = 0; v < 4; ++v) CHECK(ne.marginals.rho(v) == doctest::Approx(1.0));
}

TEST_CASE("unsensed groups always guard criticalities below the game value") {
  Rng rng(1234);
  int partial = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + rng.uniformInt(0, 5);
    const int m = n + rng.uniformInt(0, 4);
    const int b1 = 1 + rng.uniformInt(0, n - 1);
    const Instance inst = generateDisjoint(n, m, b1, rng.raw() | 1);
    const DisjointNE ne = solveDisjoint(inst);
    CHECK(ne.marginals.rho.sum() == doctest::Approx(b1).epsilon(1e-9));
    CHECK(ne.attack.probs.sum() == doctest::Approx(1.0).epsilon(1e-9));
    if (ne.p == inst.nodeCount()) continue;
    const int first_unsensed = ne.order[static_cast<size_t>(ne.p)];
    const double w = inst.weight(ne.star_components[static_cast<size_t>(first_unsensed)]);
    CHECK(w < ne.value + 1e-12);
    ++partial;
  }
  CHECK(partial > 20);  // the family must actually exercise p < n
}

TEST_CASE("sensed node count is monotone in the budget") {
  Vector weights(3);
  weights << 1.0, 1.0, 0.25;
  const Instance inst = singletonInstance(weights, 1);
  CHECK(sensedCountMonotone(inst, 1, 2));

  Rng rng(2718);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + rng.uniformInt(0, 5);
    const int m = n + rng.uniformInt(0, 4);
    const Instance random = generateDisjoint(n, m, 1, rng.raw() | 1);
    for (int b1 = 1; b1 < n; ++b1) {
      for (int b2 = b1 + 1; b2 <= n; ++b2) {
        CHECK(sensedCountMonotone(random, b1, b2));
      }
    }
  }
}

TEST_CASE("single-sensor equilibrium via the paired programs") {
  const Instance chain = testutil::chainInstance(1.0, 1);
  const SingleSensorNE ne = solveSingleSensor(chain);
  CHECK(ne.primal_objective == doctest::Approx(2.0));
  CHECK(ne.dual_objective == doctest::Approx(2.0));
  CHECK(ne.value == doctest::Approx(0.5));
  REQUIRE(ne.defense.support.size() == 2);
  CHECK(ne.defense.support[0].second == doctest::Approx(0.5));
  CHECK(ne.attack.probs(0) == doctest::Approx(0.5));
  CHECK(ne.attack.probs(1) == doctest::Approx(0.0));
  CHECK(ne.attack.probs(2) == doctest::Approx(0.5));
  CHECK(profileEpsilon(chain, ne.defense, ne.attack) <= 1e-9);
}

TEST_CASE("single-sensor agrees with the disjoint closed form where both apply") {
  Vector weights(2);
  weights << 1.0, 0.5;
  const Instance inst = singletonInstance(weights, 1);
  const SingleSensorNE lp_ne = solveSingleSensor(inst);
  const DisjointNE closed = solveDisjoint(inst);
  CHECK(lp_ne.value == doctest::Approx(closed.value).epsilon(1e-9));
}

TEST_CASE("a node monitoring everything short-circuits to the pure equilibrium") {
  const Instance inst({"v1", "v2"}, {"e1", "e2"}, {{0, 1}, {0}}, Vector::Constant(2, 0.8), 1);
  const SingleSensorNE ne = solveSingleSensor(inst);
  CHECK(ne.value == 0.0);
  REQUIRE(ne.defense.support.size() == 1);
  CHECK(ne.defense.support[0].first.nodes == std::vector<int>{0});
  CHECK(profileEpsilon(inst, ne.defense, ne.attack) <= 1e-9);

  CHECK_THROWS_AS(solveSingleSensor(testutil::ringInstance(1.0, 2)), ValidationError);
}
