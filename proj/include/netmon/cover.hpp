#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "netmon/ilp.hpp"
#include "netmon/instance.hpp"

namespace netmon {

// Directed graph with edges oriented along the flow; used to derive
// monitoring sets by reachability.
struct FlowGraph {
  std::vector<std::string> vertices;
  std::vector<std::pair<int, int>> edges;

  void validate() const;
};

// Component e belongs to the monitoring set of v exactly when v is reachable
// from e along the flow (a vertex always monitors itself).
std::vector<std::vector<int>> monitoringSetsFromFlow(const FlowGraph& graph);

struct CoverResult {
  std::vector<int> nodes;
  int size = 0;
  bool exact = true;
};

struct PackingResult {
  std::vector<int> components;
  int size = 0;
  bool exact = true;
};

struct CoverOptions {
  // When the ILP hits its node limit: fall back to the greedy heuristic
  // (flagged exact = false) instead of raising a resource error.
  bool allow_greedy = false;
  IlpOptions ilp;
};

// Minimum set cover over all components or a restricted subset.
CoverResult minSetCover(const Instance& inst,
                        const std::optional<std::vector<int>>& restrict_to = std::nullopt,
                        const CoverOptions& opts = {});

// Maximum set packing over all components or a restricted subset.
PackingResult maxSetPacking(const Instance& inst,
                            const std::optional<std::vector<int>>& restrict_to = std::nullopt,
                            const CoverOptions& opts = {});

// A pure-strategy equilibrium (with value zero) exists exactly when some set
// cover fits in the budget; returns it, or nothing.
std::optional<std::pair<PureDefense, double>> pureNashIfCover(const Instance& inst,
                                                              const CoverOptions& opts = {});

// Greedy cover (most uncovered components first, ties to the lowest index).
CoverResult greedyCover(const Instance& inst,
                        const std::optional<std::vector<int>>& restrict_to = std::nullopt);

// Greedy packing (fewest monitoring conflicts first, ties to the lowest index).
PackingResult greedyPacking(const Instance& inst,
                            const std::optional<std::vector<int>>& restrict_to = std::nullopt);

}  // namespace netmon
