#pragma once

#include <vector>

#include "netmon/instance.hpp"

namespace netmon {

// True exactly when all monitoring sets are pairwise disjoint.
bool hasDisjointMonitoring(const Instance& inst);

// Number of nodes that receive sensing probability in the disjoint-case
// equilibrium for the given budget: the largest prefix (nodes ordered by
// descending top criticality) whose normalized deficit stays below the
// prefix's smallest top criticality. Requires disjoint monitoring sets.
int sensedNodeCount(const Instance& inst, int budget);

// Test hook: the sensed-node count never shrinks when the budget grows.
bool sensedCountMonotone(const Instance& inst, int b1, int b1_prime);

struct DisjointNE {
  int p = 0;          // sensed node count
  double s_p = 0;     // sum of inverse top criticalities over the sensed prefix
  double value = 0;   // game value
  Marginals marginals;
  MixedAttack attack;
  MixedDefense defense;             // materialized from the marginals
  std::vector<int> star_components; // per node: its highest-criticality component
  std::vector<int> order;           // node indices sorted by top criticality, descending
};

// Closed-form equilibrium for instances with mutually disjoint monitoring
// sets: sensors concentrate on the nodes guarding the most critical
// components, the attacker randomizes over exactly those components with
// probability inversely proportional to criticality.
DisjointNE solveDisjoint(const Instance& inst);

struct SingleSensorNE {
  MixedDefense defense;
  MixedAttack attack;
  double value = 0;
  double primal_objective = 0;  // scaled inspection program
  double dual_objective = 0;    // scaled attack program
};

// Equilibrium for budget one with arbitrary (overlapping) monitoring sets via
// the primal/dual inspection linear programs. When some node monitors every
// component the game has a trivial pure equilibrium of value zero, which is
// returned instead.
SingleSensorNE solveSingleSensor(const Instance& inst);

}  // namespace netmon
