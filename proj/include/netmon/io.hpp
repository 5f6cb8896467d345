#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "netmon/colgen.hpp"
#include "netmon/cover.hpp"
#include "netmon/instance.hpp"

namespace netmon {

// Deterministic uniform draws on top of the fully specified mt19937_64, so
// that identical seeds give identical instances on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t raw() { return engine_(); }

  double uniform() {  // [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Inclusive bounds, rejection-sampled to stay bias-free.
  int uniformInt(int lo, int hi);

 private:
  std::mt19937_64 engine_;
};

// Parses an instance document: either explicit monitoring sets
//   {nodes, components, monitoring_sets, weights, budget}
// or a flow graph {vertices, edges, weights, budget} whose monitoring sets
// are derived by reachability. Errors carry field diagnostics.
Instance parseInstance(const std::string& text);
Instance loadInstanceFile(const std::string& path);

// Canonical explicit-sets document (sorted object keys); parse/serialize
// round-trips are byte-stable.
std::string serializeInstance(const Instance& inst);
void saveInstanceFile(const Instance& inst, const std::string& path);

bool operator==(const Instance& a, const Instance& b);

// Mutually disjoint monitoring sets: every component belongs to exactly one
// node. Requires m >= n.
Instance generateDisjoint(int n, int m, int budget, std::uint64_t seed, double w_lo = 0.1);

// Independent node-component incidences at the given density; uncovered
// components and empty monitoring sets are repaired with one extra incidence.
Instance generateBipartite(int n, int m, int budget, std::uint64_t seed, double density = 0.3,
                           double w_lo = 0.1);

// Layered directed acyclic flow network; monitoring sets are reachability
// sets, mirroring contaminant propagation through a water network.
Instance generateLayeredDag(int n, int budget, std::uint64_t seed, int layers = 8,
                            double density = 0.15, double w_lo = 0.1);

struct ExperimentRecord {
  std::string instance_id;
  int n = 0;
  int m = 0;
  int b1 = 0;
  std::string solver;
  double value = 0;
  double eps = 0;
  long iters = 0;
  double seconds = 0;
};

inline constexpr const char* kRecordHeader = "instance_id,n,m,b1,solver,value,eps,iters,seconds";

void writeRecordHeader(std::ostream& out);
void writeRecord(std::ostream& out, const ExperimentRecord& record);

// Per-iteration trace: iter,master_value,reduced_cost,entering,seconds,d
// with the entering placement as semicolon-joined node identifiers.
void writeTrace(std::ostream& out, const Instance& inst, const ColGenTrace& trace);

}  // namespace netmon
