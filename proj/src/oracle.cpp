#include "netmon/oracle.hpp"

#include <cmath>
#include <string>

#include "netmon/lp.hpp"

namespace netmon {

namespace {

long countActions(int n, int b1, long cap) {
  long total = 1;  // empty placement
  double binom = 1;
  for (int k = 1; k <= b1; ++k) {
    binom = binom * (n - k + 1) / k;
    total += static_cast<long>(binom);
    if (total > cap) return total;
  }
  return total;
}

}  // namespace

std::vector<PureDefense> enumerateDefenses(const Instance& inst, long cap) {
  const int n = inst.nodeCount();
  const int b1 = inst.budget();
  const long count = countActions(n, b1, cap);
  if (count > cap) {
    throw ResourceError("defense action set has " + std::to_string(count) +
                            " placements, over the enumeration cap of " + std::to_string(cap) +
                            "; use column generation instead",
                        static_cast<double>(count));
  }

  std::vector<PureDefense> actions;
  actions.reserve(static_cast<size_t>(count));
  std::vector<int> current;
  const auto recurse = [&](auto&& self, int start) -> void {
    actions.push_back(PureDefense{current});
    if (static_cast<int>(current.size()) == b1) return;
    for (int v = start; v < n; ++v) {
      current.push_back(v);
      self(self, v + 1);
      current.pop_back();
    }
  };
  recurse(recurse, 0);
  return actions;
}

OracleResult solveExact(const Instance& inst, long cap) {
  const std::vector<PureDefense> actions = enumerateDefenses(inst, cap);
  const Index k = static_cast<Index>(actions.size());
  const Index m = inst.componentCount();

  // Loss of every pure action against every component.
  Matrix losses(m, k);
  for (Index c = 0; c < k; ++c) {
    const std::vector<char> mask = coveredMask(inst, actions[static_cast<size_t>(c)]);
    for (Index e = 0; e < m; ++e) {
      losses(e, c) = mask[static_cast<size_t>(e)] ? 0.0 : inst.weight(e);
    }
  }

  // Defense program: minimize the bound z on the loss of the mixture against
  // every component.
  LinearProgram defense_lp = LinearProgram::make(Sense::Minimize, k + 1, m + 1);
  defense_lp.objective(k) = 1;
  defense_lp.rows.block(0, 0, m, k) = losses;
  defense_lp.rows.col(k).head(m) = Vector::Constant(m, -1.0);
  for (Index e = 0; e < m; ++e) {
    defense_lp.relations[static_cast<size_t>(e)] = Relation::LessEqual;
    defense_lp.rhs(e) = 0;
  }
  defense_lp.rows.row(m).head(k).setOnes();
  defense_lp.relations[static_cast<size_t>(m)] = Relation::Equal;
  defense_lp.rhs(m) = 1;

  // Attack program: maximize the bound z on the loss forced against every
  // pure placement.
  LinearProgram attack_lp = LinearProgram::make(Sense::Maximize, m + 1, k + 1);
  attack_lp.objective(m) = 1;
  attack_lp.rows.block(0, 0, k, m) = losses.transpose();
  attack_lp.rows.col(m).head(k) = Vector::Constant(k, -1.0);
  for (Index c = 0; c < k; ++c) {
    attack_lp.relations[static_cast<size_t>(c)] = Relation::GreaterEqual;
    attack_lp.rhs(c) = 0;
  }
  attack_lp.rows.row(k).head(m).setOnes();
  attack_lp.relations[static_cast<size_t>(k)] = Relation::Equal;
  attack_lp.rhs(k) = 1;

  const LpSolution defense_sol = solveLp(defense_lp);
  const LpSolution attack_sol = solveLp(attack_lp);
  if (defense_sol.status != SolveStatus::Optimal || attack_sol.status != SolveStatus::Optimal) {
    throw NumericalError("full-enumeration programs did not solve to optimality");
  }
  if (std::abs(defense_sol.objective - attack_sol.objective) >
      kVerifyTol * (1.0 + std::abs(defense_sol.objective))) {
    throw NumericalError("defense and attack programs disagree on the game value");
  }

  OracleResult result;
  result.action_count = static_cast<long>(k);
  result.defense_program_value = defense_sol.objective;
  result.attack_program_value = attack_sol.objective;
  result.value = defense_sol.objective;

  double total = 0.0;
  for (Index c = 0; c < k; ++c) total += std::max(0.0, defense_sol.primal(c));
  for (Index c = 0; c < k; ++c) {
    const double p = std::max(0.0, defense_sol.primal(c));
    if (p > 1e-12 * total) {
      result.defense.support.push_back({actions[static_cast<size_t>(c)], p / total});
    }
  }
  // Re-normalize exactly after pruning.
  double kept = 0.0;
  for (auto& [defense, p] : result.defense.support) kept += p;
  for (auto& [defense, p] : result.defense.support) p /= kept;

  Vector attack = attack_sol.primal.head(m).cwiseMax(0.0);
  attack /= attack.sum();
  result.attack = MixedAttack{attack};
  return result;
}

}  // namespace netmon
