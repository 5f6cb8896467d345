#include "netmon/instance.hpp"

#include <algorithm>
#include <cmath>

namespace netmon {

Instance::Instance(std::vector<std::string> nodes, std::vector<std::string> components,
                   std::vector<std::vector<int>> monitoring, Vector weights, int budget)
    : nodes_(std::move(nodes)),
      components_(std::move(components)),
      monitoring_(std::move(monitoring)),
      weights_(std::move(weights)),
      budget_(budget) {
  const int n = nodeCount();
  const int m = componentCount();
  if (n == 0) throw ValidationError("instance has no nodes");
  if (m == 0) throw ValidationError("instance has no components");
  if (static_cast<int>(monitoring_.size()) != n) {
    throw ValidationError("monitoring sets must match the node list");
  }
  if (weights_.size() != m) throw ValidationError("weights must match the component list");
  if (budget_ < 1 || budget_ > n) {
    throw ValidationError("budget must satisfy 1 <= b1 <= number of nodes");
  }

  for (int v = 0; v < n; ++v) {
    if (!node_index_.emplace(nodes_[static_cast<size_t>(v)], v).second) {
      throw ValidationError("duplicate node identifier: " + nodes_[static_cast<size_t>(v)]);
    }
  }
  for (int e = 0; e < m; ++e) {
    if (!component_index_.emplace(components_[static_cast<size_t>(e)], e).second) {
      throw ValidationError("duplicate component identifier: " + components_[static_cast<size_t>(e)]);
    }
  }

  for (int e = 0; e < m; ++e) {
    const double w = weights_(e);
    if (!std::isfinite(w) || w <= 0.0 || w > 1.0) {
      throw ValidationError("criticality of " + components_[static_cast<size_t>(e)] +
                            " must lie in (0, 1]");
    }
  }

  member_.assign(static_cast<size_t>(n), std::vector<char>(static_cast<size_t>(m), 0));
  monitors_of_.assign(static_cast<size_t>(m), {});
  for (int v = 0; v < n; ++v) {
    auto& set = monitoring_[static_cast<size_t>(v)];
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    if (set.empty()) {
      throw ValidationError("monitoring set of " + nodes_[static_cast<size_t>(v)] + " is empty");
    }
    for (int e : set) {
      if (e < 0 || e >= m) {
        throw ValidationError("monitoring set of " + nodes_[static_cast<size_t>(v)] +
                              " references an unknown component");
      }
      member_[static_cast<size_t>(v)][static_cast<size_t>(e)] = 1;
      monitors_of_[static_cast<size_t>(e)].push_back(v);
    }
  }
  for (int e = 0; e < m; ++e) {
    if (monitors_of_[static_cast<size_t>(e)].empty()) {
      throw ValidationError("component " + components_[static_cast<size_t>(e)] +
                            " cannot be monitored from any node");
    }
  }
}

int Instance::nodeIndex(const std::string& id) const {
  auto it = node_index_.find(id);
  if (it == node_index_.end()) throw ValidationError("unknown node identifier: " + id);
  return it->second;
}

int Instance::componentIndex(const std::string& id) const {
  auto it = component_index_.find(id);
  if (it == component_index_.end()) throw ValidationError("unknown component identifier: " + id);
  return it->second;
}

double Instance::weight(int e) const {
  if (e < 0 || e >= componentCount()) throw ValidationError("component index out of range");
  return weights_(e);
}

Instance Instance::withBudget(int budget) const {
  return Instance(nodes_, components_, monitoring_, weights_, budget);
}

PureDefense makeDefense(const Instance& inst, std::vector<int> nodes) {
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  PureDefense defense{std::move(nodes)};
  validateDefense(inst, defense);
  return defense;
}

void validateDefense(const Instance& inst, const PureDefense& defense) {
  if (static_cast<int>(defense.nodes.size()) > inst.budget()) {
    throw ValidationError("defense places more sensors than the budget allows");
  }
  int prev = -1;
  for (int v : defense.nodes) {
    if (v < 0 || v >= inst.nodeCount()) throw ValidationError("unknown node index in defense");
    if (v <= prev) throw ValidationError("defense nodes must be sorted and unique");
    prev = v;
  }
}

void validateMixedDefense(const Instance& inst, const MixedDefense& sigma1) {
  double total = 0.0;
  std::vector<std::vector<int>> seen;
  for (const auto& [defense, prob] : sigma1.support) {
    validateDefense(inst, defense);
    if (prob < -kBuildTol || prob > 1.0 + kBuildTol) {
      throw ValidationError("defense probability outside [0, 1]");
    }
    seen.push_back(defense.nodes);
    total += prob;
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
    throw ValidationError("mixed defense contains duplicate subsets");
  }
  if (std::abs(total - 1.0) > kBuildTol) {
    throw ValidationError("defense probabilities must sum to 1");
  }
}

void validateAttack(const Instance& inst, const MixedAttack& sigma2) {
  if (sigma2.probs.size() != inst.componentCount()) {
    throw ValidationError("attack distribution must cover every component");
  }
  double total = 0.0;
  for (Index e = 0; e < sigma2.probs.size(); ++e) {
    const double p = sigma2.probs(e);
    if (!(p >= -kBuildTol) || p > 1.0 + kBuildTol) {
      throw ValidationError("attack probability outside [0, 1]");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kBuildTol) {
    throw ValidationError("attack probabilities must sum to 1");
  }
}

void validateMarginals(const Instance& inst, const Marginals& rho) {
  if (rho.rho.size() != inst.nodeCount()) {
    throw ValidationError("marginals must cover every node");
  }
  double total = 0.0;
  for (Index v = 0; v < rho.rho.size(); ++v) {
    const double p = rho.rho(v);
    if (!(p >= -kBuildTol) || p > 1.0 + kBuildTol) {
      throw ValidationError("marginal probability outside [0, 1]");
    }
    total += p;
  }
  if (total > inst.budget() + kBuildTol) {
    throw ValidationError("marginals exceed the sensor budget");
  }
}

std::vector<char> coveredMask(const Instance& inst, const PureDefense& defense) {
  std::vector<char> mask(static_cast<size_t>(inst.componentCount()), 0);
  for (int v : defense.nodes) {
    for (int e : inst.monitoringSet(v)) mask[static_cast<size_t>(e)] = 1;
  }
  return mask;
}

}  // namespace netmon
