#pragma once

#include <cstdint>
#include <vector>

#include "netmon/lp.hpp"
#include "netmon/types.hpp"

namespace netmon {

enum class IlpStatus { Optimal, NodeLimit, Infeasible };

// Linear objective and constraint rows over variables restricted to {0,1}.
struct BinaryProgram {
  Sense sense = Sense::Minimize;
  Vector objective;
  Matrix rows;
  std::vector<Relation> relations;
  Vector rhs;

  static BinaryProgram make(Sense sense, Index num_vars, Index num_rows = 0);
  Index numVariables() const { return objective.size(); }
  Index numRows() const { return rhs.size(); }
  void addRow(const Vector& coeffs, Relation rel, double b);
  void validate() const;

  bool feasible(const std::vector<std::uint8_t>& assignment, double tol = 1e-6) const;
  double evaluate(const std::vector<std::uint8_t>& assignment) const;
};

struct BinarySolution {
  IlpStatus status = IlpStatus::Optimal;
  std::vector<std::uint8_t> assignment;  // empty when no incumbent exists
  double objective = 0;                  // objective of the incumbent, exact
  double bound = 0;                      // best bound proved over the full program
  long nodes = 0;
};

struct IlpOptions {
  long node_limit = 1'000'000;
  double int_tol = 1e-7;
  SimplexOptions lp;
  // Optional known-feasible starting incumbent; pruning-only, never required.
  std::vector<std::uint8_t> warm_assignment;
};

// LP-relaxation branch and bound: best-first on the relaxation bound,
// branching on the most fractional variable (ties to the lowest index).
// Deterministic for fixed input.
BinarySolution solveBinary(const BinaryProgram& bp, const IlpOptions& opts = {});

}  // namespace netmon
