#include "netmon/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "netmon/approx.hpp"
#include "netmon/lp.hpp"

namespace netmon {

namespace {

// Highest-criticality component of each monitoring set (ties: lowest index),
// plus the node order by descending star criticality (stable on node index).
struct StarOrder {
  std::vector<int> star;   // per node
  std::vector<int> order;  // node indices, sorted
};

StarOrder starOrder(const Instance& inst) {
  StarOrder so;
  so.star.resize(static_cast<size_t>(inst.nodeCount()));
  for (int v = 0; v < inst.nodeCount(); ++v) {
    int best = inst.monitoringSet(v).front();
    for (int e : inst.monitoringSet(v)) {
      if (inst.weight(e) > inst.weight(best)) best = e;
    }
    so.star[static_cast<size_t>(v)] = best;
  }
  so.order.resize(so.star.size());
  std::iota(so.order.begin(), so.order.end(), 0);
  std::stable_sort(so.order.begin(), so.order.end(), [&](int a, int b) {
    return inst.weight(so.star[static_cast<size_t>(a)]) >
           inst.weight(so.star[static_cast<size_t>(b)]);
  });
  return so;
}

void requireDisjoint(const Instance& inst) {
  if (!hasDisjointMonitoring(inst)) {
    throw ValidationError("operation requires mutually disjoint monitoring sets");
  }
}

int sensedPrefix(const Instance& inst, const StarOrder& so, int budget) {
  const int n = inst.nodeCount();
  int p = budget;  // the budget itself always qualifies
  double inv_sum = 0.0;
  for (int j = 1; j <= n; ++j) {
    const int v = so.order[static_cast<size_t>(j - 1)];
    const double w = inst.weight(so.star[static_cast<size_t>(v)]);
    inv_sum += 1.0 / w;
    if (j <= budget) continue;
    if (static_cast<double>(j - budget) <= w * inv_sum * (1.0 + 1e-12)) p = j;
  }
  return p;
}

}  // namespace

bool hasDisjointMonitoring(const Instance& inst) {
  std::vector<char> seen(static_cast<size_t>(inst.componentCount()), 0);
  for (int v = 0; v < inst.nodeCount(); ++v) {
    for (int e : inst.monitoringSet(v)) {
      if (seen[static_cast<size_t>(e)]) return false;
      seen[static_cast<size_t>(e)] = 1;
    }
  }
  return true;
}

int sensedNodeCount(const Instance& inst, int budget) {
  if (budget < 1 || budget > inst.nodeCount()) {
    throw ValidationError("budget must satisfy 1 <= b1 <= number of nodes");
  }
  requireDisjoint(inst);
  return sensedPrefix(inst, starOrder(inst), budget);
}

bool sensedCountMonotone(const Instance& inst, int b1, int b1_prime) {
  if (b1 >= b1_prime) throw ValidationError("budgets must satisfy b1 < b1'");
  return sensedNodeCount(inst, b1) <= sensedNodeCount(inst, b1_prime);
}

DisjointNE solveDisjoint(const Instance& inst) {
  requireDisjoint(inst);
  const StarOrder so = starOrder(inst);
  const int b1 = inst.budget();
  const int p = sensedPrefix(inst, so, b1);

  double s_p = 0.0;
  for (int j = 0; j < p; ++j) {
    const int v = so.order[static_cast<size_t>(j)];
    s_p += 1.0 / inst.weight(so.star[static_cast<size_t>(v)]);
  }
  const double value = (p - b1) / s_p;

  DisjointNE ne;
  ne.p = p;
  ne.s_p = s_p;
  ne.value = value;
  ne.star_components = so.star;
  ne.order = so.order;

  Vector rho = Vector::Zero(inst.nodeCount());
  Vector attack = Vector::Zero(inst.componentCount());
  for (int j = 0; j < p; ++j) {
    const int v = so.order[static_cast<size_t>(j)];
    const int e = so.star[static_cast<size_t>(v)];
    rho(v) = 1.0 - (p - b1) / (inst.weight(e) * s_p);
    attack(e) = 1.0 / (inst.weight(e) * s_p);
  }
  ne.marginals = Marginals{rho};
  ne.attack = MixedAttack{attack};
  ne.defense = decomposeMarginals(ne.marginals, b1);
  return ne;
}

SingleSensorNE solveSingleSensor(const Instance& inst) {
  if (inst.budget() != 1) {
    throw ValidationError("single-sensor equilibrium requires budget 1");
  }
  const int n = inst.nodeCount();
  const int m = inst.componentCount();

  // A node that monitors everything yields a trivial pure equilibrium.
  for (int v = 0; v < n; ++v) {
    if (static_cast<int>(inst.monitoringSet(v).size()) == m) {
      SingleSensorNE ne;
      ne.defense.support.push_back({PureDefense{{v}}, 1.0});
      Vector attack = Vector::Zero(m);
      attack(0) = 1.0;
      ne.attack = MixedAttack{attack};
      ne.value = 0.0;
      return ne;
    }
  }

  // Scaled inspection program: maximize total inspection mass subject to the
  // miss probability of each component staying within 1/w_e.
  LinearProgram primal = LinearProgram::make(Sense::Maximize, n, m);
  primal.objective.setOnes();
  for (int e = 0; e < m; ++e) {
    for (int v = 0; v < n; ++v) {
      if (!inst.covers(v, e)) primal.rows(e, v) = 1;
    }
    primal.relations[static_cast<size_t>(e)] = Relation::LessEqual;
    primal.rhs(e) = 1.0 / inst.weight(e);
  }

  // Scaled attack program: minimize criticality-weighted gain subject to unit
  // gain against every placement.
  LinearProgram dual = LinearProgram::make(Sense::Minimize, m, n);
  for (int e = 0; e < m; ++e) dual.objective(e) = 1.0 / inst.weight(e);
  for (int v = 0; v < n; ++v) {
    for (int e = 0; e < m; ++e) {
      if (!inst.covers(v, e)) dual.rows(v, e) = 1;
    }
    dual.relations[static_cast<size_t>(v)] = Relation::GreaterEqual;
    dual.rhs(v) = 1.0;
  }

  const LpSolution primal_sol = solveLp(primal);
  const LpSolution dual_sol = solveLp(dual);
  if (primal_sol.status != SolveStatus::Optimal || dual_sol.status != SolveStatus::Optimal) {
    throw NumericalError("single-sensor programs did not solve to optimality");
  }

  const double j_star = primal_sol.objective;
  SingleSensorNE ne;
  ne.primal_objective = primal_sol.objective;
  ne.dual_objective = dual_sol.objective;
  ne.value = 1.0 / j_star;

  double defense_total = 0.0;
  for (int v = 0; v < n; ++v) defense_total += std::max(0.0, primal_sol.primal(v));
  for (int v = 0; v < n; ++v) {
    const double mass = std::max(0.0, primal_sol.primal(v));
    if (mass > 1e-12 * defense_total) {
      ne.defense.support.push_back({PureDefense{{v}}, mass / defense_total});
    }
  }

  Vector attack = Vector::Zero(m);
  for (int e = 0; e < m; ++e) {
    attack(e) = std::max(0.0, dual_sol.primal(e)) / (j_star * inst.weight(e));
  }
  attack /= attack.sum();
  ne.attack = MixedAttack{attack};
  return ne;
}

}  // namespace netmon
