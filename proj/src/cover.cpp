#include "netmon/cover.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <stdexcept>

namespace netmon {

namespace {

std::vector<int> targetComponents(const Instance& inst,
                                  const std::optional<std::vector<int>>& restrict_to) {
  std::vector<int> targets;
  if (restrict_to.has_value()) {
    targets = *restrict_to;
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    for (int e : targets) {
      if (e < 0 || e >= inst.componentCount()) {
        throw ValidationError("restricted component index out of range");
      }
      if (inst.monitorsOf(e).empty()) {
        throw ValidationError("restricted component cannot be covered");
      }
    }
    if (targets.empty()) throw ValidationError("restricted component set is empty");
  } else {
    targets.resize(static_cast<size_t>(inst.componentCount()));
    for (int e = 0; e < inst.componentCount(); ++e) targets[static_cast<size_t>(e)] = e;
  }
  return targets;
}

}  // namespace

void FlowGraph::validate() const {
  std::set<std::string> seen;
  for (const auto& id : vertices) {
    if (!seen.insert(id).second) throw ValidationError("duplicate vertex identifier: " + id);
  }
  const int n = static_cast<int>(vertices.size());
  for (const auto& [src, dst] : edges) {
    if (src < 0 || src >= n || dst < 0 || dst >= n) {
      throw ValidationError("edge references an unknown vertex");
    }
    if (src == dst) throw ValidationError("self-loops are not allowed");
  }
}

std::vector<std::vector<int>> monitoringSetsFromFlow(const FlowGraph& graph) {
  graph.validate();
  const int n = static_cast<int>(graph.vertices.size());
  std::vector<std::vector<int>> out_edges(static_cast<size_t>(n));
  for (const auto& [src, dst] : graph.edges) {
    out_edges[static_cast<size_t>(src)].push_back(dst);
  }

  std::vector<std::vector<int>> sets(static_cast<size_t>(n));
  std::vector<char> reached(static_cast<size_t>(n));
  std::vector<int> stack;
  for (int source = 0; source < n; ++source) {
    std::fill(reached.begin(), reached.end(), 0);
    stack.assign(1, source);
    reached[static_cast<size_t>(source)] = 1;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int w : out_edges[static_cast<size_t>(u)]) {
        if (!reached[static_cast<size_t>(w)]) {
          reached[static_cast<size_t>(w)] = 1;
          stack.push_back(w);
        }
      }
    }
    for (int v = 0; v < n; ++v) {
      if (reached[static_cast<size_t>(v)]) sets[static_cast<size_t>(v)].push_back(source);
    }
  }
  return sets;
}

CoverResult greedyCover(const Instance& inst, const std::optional<std::vector<int>>& restrict_to) {
  const std::vector<int> targets = targetComponents(inst, restrict_to);
  std::vector<char> uncovered(static_cast<size_t>(inst.componentCount()), 0);
  size_t remaining = targets.size();
  for (int e : targets) uncovered[static_cast<size_t>(e)] = 1;

  CoverResult result;
  result.exact = false;
  std::vector<char> chosen(static_cast<size_t>(inst.nodeCount()), 0);
  while (remaining > 0) {
    int best = -1;
    size_t best_count = 0;
    for (int v = 0; v < inst.nodeCount(); ++v) {
      if (chosen[static_cast<size_t>(v)]) continue;
      size_t count = 0;
      for (int e : inst.monitoringSet(v)) {
        if (uncovered[static_cast<size_t>(e)]) ++count;
      }
      if (count > best_count) {
        best_count = count;
        best = v;
      }
    }
    if (best < 0) throw ValidationError("restricted component cannot be covered");
    chosen[static_cast<size_t>(best)] = 1;
    result.nodes.push_back(best);
    for (int e : inst.monitoringSet(best)) {
      if (uncovered[static_cast<size_t>(e)]) {
        uncovered[static_cast<size_t>(e)] = 0;
        --remaining;
      }
    }
  }
  std::sort(result.nodes.begin(), result.nodes.end());
  result.size = static_cast<int>(result.nodes.size());
  return result;
}

PackingResult greedyPacking(const Instance& inst,
                            const std::optional<std::vector<int>>& restrict_to) {
  const std::vector<int> targets = targetComponents(inst, restrict_to);

  // Fewest monitoring nodes first: such components conflict with the fewest
  // other candidates.
  std::vector<int> order = targets;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return inst.monitorsOf(a).size() < inst.monitorsOf(b).size();
  });

  PackingResult result;
  result.exact = false;
  std::vector<char> node_used(static_cast<size_t>(inst.nodeCount()), 0);
  for (int e : order) {
    bool conflict = false;
    for (int v : inst.monitorsOf(e)) {
      if (node_used[static_cast<size_t>(v)]) {
        conflict = true;
        break;
      }
    }
    if (conflict) continue;
    for (int v : inst.monitorsOf(e)) node_used[static_cast<size_t>(v)] = 1;
    result.components.push_back(e);
  }
  std::sort(result.components.begin(), result.components.end());
  result.size = static_cast<int>(result.components.size());
  return result;
}

CoverResult minSetCover(const Instance& inst, const std::optional<std::vector<int>>& restrict_to,
                        const CoverOptions& opts) {
  const std::vector<int> targets = targetComponents(inst, restrict_to);
  const Index n = inst.nodeCount();
  const Index m = static_cast<Index>(targets.size());

  BinaryProgram bp = BinaryProgram::make(Sense::Minimize, n, m);
  bp.objective.setOnes();
  for (Index k = 0; k < m; ++k) {
    const int e = targets[static_cast<size_t>(k)];
    for (int v : inst.monitorsOf(e)) bp.rows(k, v) = 1;
    bp.relations[static_cast<size_t>(k)] = Relation::GreaterEqual;
    bp.rhs(k) = 1;
  }

  IlpOptions run = opts.ilp;
  {
    const CoverResult warm = greedyCover(inst, restrict_to);
    std::vector<std::uint8_t> assignment(static_cast<size_t>(n), 0);
    for (int v : warm.nodes) assignment[static_cast<size_t>(v)] = 1;
    run.warm_assignment = std::move(assignment);
  }

  const BinarySolution sol = solveBinary(bp, run);
  if (sol.status == IlpStatus::NodeLimit) {
    if (opts.allow_greedy) return greedyCover(inst, restrict_to);
    throw ResourceError("set-cover search hit the node limit (best bound " +
                            std::to_string(sol.bound) + ")",
                        sol.bound);
  }
  if (sol.status != IlpStatus::Optimal) {
    throw NumericalError("set-cover program unexpectedly infeasible");
  }

  CoverResult result;
  for (Index v = 0; v < n; ++v) {
    if (sol.assignment[static_cast<size_t>(v)]) result.nodes.push_back(static_cast<int>(v));
  }
  result.size = static_cast<int>(result.nodes.size());
  result.exact = true;
  return result;
}

PackingResult maxSetPacking(const Instance& inst,
                            const std::optional<std::vector<int>>& restrict_to,
                            const CoverOptions& opts) {
  const std::vector<int> targets = targetComponents(inst, restrict_to);
  const Index m = static_cast<Index>(targets.size());
  std::vector<Index> position(static_cast<size_t>(inst.componentCount()), -1);
  for (Index k = 0; k < m; ++k) position[static_cast<size_t>(targets[static_cast<size_t>(k)])] = k;

  // One row per node that can see two or more candidates; single-candidate
  // rows are implied by the binary bounds.
  std::vector<std::vector<Index>> conflict_rows;
  for (int v = 0; v < inst.nodeCount(); ++v) {
    std::vector<Index> cols;
    for (int e : inst.monitoringSet(v)) {
      const Index k = position[static_cast<size_t>(e)];
      if (k >= 0) cols.push_back(k);
    }
    if (cols.size() >= 2) conflict_rows.push_back(std::move(cols));
  }

  BinaryProgram bp = BinaryProgram::make(Sense::Maximize, m, static_cast<Index>(conflict_rows.size()));
  bp.objective.setOnes();
  for (size_t r = 0; r < conflict_rows.size(); ++r) {
    for (Index k : conflict_rows[r]) bp.rows(static_cast<Index>(r), k) = 1;
    bp.relations[r] = Relation::LessEqual;
    bp.rhs(static_cast<Index>(r)) = 1;
  }

  IlpOptions run = opts.ilp;
  {
    const PackingResult warm = greedyPacking(inst, restrict_to);
    std::vector<std::uint8_t> assignment(static_cast<size_t>(m), 0);
    for (int e : warm.components) {
      assignment[static_cast<size_t>(position[static_cast<size_t>(e)])] = 1;
    }
    run.warm_assignment = std::move(assignment);
  }

  const BinarySolution sol = solveBinary(bp, run);
  if (sol.status == IlpStatus::NodeLimit) {
    if (opts.allow_greedy) return greedyPacking(inst, restrict_to);
    throw ResourceError("set-packing search hit the node limit (best bound " +
                            std::to_string(sol.bound) + ")",
                        sol.bound);
  }
  if (sol.status != IlpStatus::Optimal) {
    throw NumericalError("set-packing program unexpectedly infeasible");
  }

  PackingResult result;
  for (Index k = 0; k < m; ++k) {
    if (sol.assignment[static_cast<size_t>(k)]) {
      result.components.push_back(targets[static_cast<size_t>(k)]);
    }
  }
  result.size = static_cast<int>(result.components.size());
  result.exact = true;
  return result;
}

std::optional<std::pair<PureDefense, double>> pureNashIfCover(const Instance& inst,
                                                              const CoverOptions& opts) {
  const CoverResult cover = minSetCover(inst, std::nullopt, opts);
  if (cover.size > inst.budget()) return std::nullopt;
  return std::make_pair(makeDefense(inst, cover.nodes), 0.0);
}

}  // namespace netmon
