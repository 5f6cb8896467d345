#pragma once

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "netmon/types.hpp"

namespace netmon {

// The game world: an ordered set of candidate sensor nodes, an ordered set of
// attackable components, the monitoring set of every node, per-component
// criticality weights in (0,1], and the sensor budget. Immutable after
// construction; all solver operations are pure functions over it.
class Instance {
 public:
  Instance(std::vector<std::string> nodes, std::vector<std::string> components,
           std::vector<std::vector<int>> monitoring, Vector weights, int budget);

  int nodeCount() const { return static_cast<int>(nodes_.size()); }
  int componentCount() const { return static_cast<int>(components_.size()); }
  int budget() const { return budget_; }

  const std::vector<std::string>& nodes() const { return nodes_; }
  const std::vector<std::string>& components() const { return components_; }
  const std::string& nodeId(int v) const { return nodes_.at(static_cast<size_t>(v)); }
  const std::string& componentId(int e) const { return components_.at(static_cast<size_t>(e)); }
  int nodeIndex(const std::string& id) const;
  int componentIndex(const std::string& id) const;

  const std::vector<int>& monitoringSet(int v) const { return monitoring_.at(static_cast<size_t>(v)); }
  const std::vector<std::vector<int>>& monitoringSets() const { return monitoring_; }
  // Nodes whose monitoring set contains the component.
  const std::vector<int>& monitorsOf(int e) const { return monitors_of_.at(static_cast<size_t>(e)); }
  bool covers(int v, int e) const {
    return member_.at(static_cast<size_t>(v)).at(static_cast<size_t>(e)) != 0;
  }

  double weight(int e) const;
  const Vector& weights() const { return weights_; }

  Instance withBudget(int budget) const;

 private:
  std::vector<std::string> nodes_;
  std::vector<std::string> components_;
  std::vector<std::vector<int>> monitoring_;   // sorted component indices per node
  std::vector<std::vector<int>> monitors_of_;  // sorted node indices per component
  std::vector<std::vector<char>> member_;      // node x component incidence
  Vector weights_;
  int budget_ = 0;
  std::unordered_map<std::string, int> node_index_;
  std::unordered_map<std::string, int> component_index_;
};

// A pure operator action: up to budget() nodes, kept as sorted unique indices.
struct PureDefense {
  std::vector<int> nodes;
  bool operator==(const PureDefense&) const = default;
};

// Sparse distribution over pure defenses. The action set is exponential, so
// only the support is ever materialized.
struct MixedDefense {
  std::vector<std::pair<PureDefense, double>> support;
};

// Distribution over components.
struct MixedAttack {
  Vector probs;
};

// Per-node probability that a sensor is placed.
struct Marginals {
  Vector rho;
};

// Sorts and validates node indices against the instance and its budget.
PureDefense makeDefense(const Instance& inst, std::vector<int> nodes);

void validateDefense(const Instance& inst, const PureDefense& defense);
void validateMixedDefense(const Instance& inst, const MixedDefense& sigma1);
void validateAttack(const Instance& inst, const MixedAttack& sigma2);
void validateMarginals(const Instance& inst, const Marginals& rho);

// Incidence of components covered by the union of the defense's monitoring sets.
std::vector<char> coveredMask(const Instance& inst, const PureDefense& defense);

}  // namespace netmon
