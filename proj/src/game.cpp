#include "netmon/game.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "budgeted_coverage.hpp"

namespace netmon {

double loss(const Instance& inst, const PureDefense& defense, int component) {
  validateDefense(inst, defense);
  if (component < 0 || component >= inst.componentCount()) {
    throw ValidationError("unknown component index " + std::to_string(component));
  }
  for (int v : defense.nodes) {
    if (inst.covers(v, component)) return 0.0;
  }
  return inst.weight(component);
}

Marginals marginals(const Instance& inst, const MixedDefense& sigma1) {
  validateMixedDefense(inst, sigma1);
  Vector rho = Vector::Zero(inst.nodeCount());
  for (const auto& [defense, prob] : sigma1.support) {
    for (int v : defense.nodes) rho(v) += prob;
  }
  return Marginals{std::move(rho)};
}

Vector lossByComponent(const Instance& inst, const MixedDefense& sigma1) {
  validateMixedDefense(inst, sigma1);
  Vector unmonitored = Vector::Zero(inst.componentCount());
  for (const auto& [defense, prob] : sigma1.support) {
    const std::vector<char> mask = coveredMask(inst, defense);
    for (Index e = 0; e < unmonitored.size(); ++e) {
      if (!mask[static_cast<size_t>(e)]) unmonitored(e) += prob;
    }
  }
  return unmonitored.cwiseProduct(inst.weights());
}

double lossAgainst(const Instance& inst, const PureDefense& defense, const MixedAttack& sigma2) {
  validateDefense(inst, defense);
  validateAttack(inst, sigma2);
  const Vector gains = sigma2.probs.cwiseProduct(inst.weights());
  double covered = 0.0;
  const std::vector<char> mask = coveredMask(inst, defense);
  for (Index e = 0; e < gains.size(); ++e) {
    if (mask[static_cast<size_t>(e)]) covered += gains(e);
  }
  return gains.sum() - covered;
}

double expectedLoss(const Instance& inst, const MixedDefense& sigma1, const MixedAttack& sigma2) {
  validateMixedDefense(inst, sigma1);
  validateAttack(inst, sigma2);
  const Vector gains = sigma2.probs.cwiseProduct(inst.weights());
  const double total = gains.sum();
  double value = 0.0;
  for (const auto& [defense, prob] : sigma1.support) {
    const std::vector<char> mask = coveredMask(inst, defense);
    double covered = 0.0;
    for (Index e = 0; e < gains.size(); ++e) {
      if (mask[static_cast<size_t>(e)]) covered += gains(e);
    }
    value += prob * (total - covered);
  }
  return value;
}

AttackResponse bestResponseAttack(const Instance& inst, const MixedDefense& sigma1) {
  const Vector losses = lossByComponent(inst, sigma1);
  Index best = 0;
  for (Index e = 1; e < losses.size(); ++e) {
    if (losses(e) > losses(best)) best = e;
  }
  return AttackResponse{static_cast<int>(best), losses(best)};
}

DefenseResponse bestResponseDefense(const Instance& inst, const MixedAttack& sigma2,
                                    const IlpOptions& opts) {
  validateAttack(inst, sigma2);
  const Vector gains = sigma2.probs.cwiseProduct(inst.weights());
  const detail::CoverageOutcome outcome = detail::minimizeUncoveredMass(inst, gains, opts);
  if (!outcome.optimal) {
    throw ResourceError("best-response search hit the node limit (best bound " +
                            std::to_string(outcome.bound) + ")",
                        outcome.bound);
  }
  return DefenseResponse{makeDefense(inst, outcome.nodes), outcome.uncovered_mass};
}

double profileEpsilon(const Instance& inst, const MixedDefense& sigma1, const MixedAttack& sigma2,
                      const IlpOptions& opts) {
  const double value = expectedLoss(inst, sigma1, sigma2);
  const double attack_gain = bestResponseAttack(inst, sigma1).value - value;
  const double defense_gain = value - bestResponseDefense(inst, sigma2, opts).value;
  return std::max({attack_gain, defense_gain, 0.0});
}

}  // namespace netmon
