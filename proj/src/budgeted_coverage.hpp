#pragma once

#include <vector>

#include "netmon/ilp.hpp"
#include "netmon/instance.hpp"

namespace netmon::detail {

struct CoverageOutcome {
  bool optimal = false;
  std::vector<int> nodes;       // chosen placement, sorted
  double uncovered_mass = 0;    // gain mass left uncovered, exact
  double bound = 0;             // best lower bound proved (equals the mass when optimal)
  long search_nodes = 0;
};

// Minimizes the uncovered gain mass over placements of at most the instance's
// budget, as a binary program over node picks and per-component miss
// indicators. Zero-gain components impose no cost, so they are dropped along
// with nodes covering nothing else; the optimum is unchanged. A greedy
// max-coverage incumbent primes the search.
CoverageOutcome minimizeUncoveredMass(const Instance& inst, const Vector& gains,
                                      const IlpOptions& opts);

}  // namespace netmon::detail
