#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "netmon/analytic.hpp"
#include "netmon/approx.hpp"
#include "netmon/colgen.hpp"
#include "netmon/cover.hpp"
#include "netmon/game.hpp"
#include "netmon/io.hpp"
#include "netmon/oracle.hpp"

namespace {

using namespace netmon;

struct CommonArgs {
  std::string instance_path;
  int budget = 0;  // 0: keep the instance's budget
  std::string out_csv;
  long node_limit = 1'000'000;
};

void addCommon(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("instance", args.instance_path, "instance document (JSON)")->required();
  cmd->add_option("--budget", args.budget, "override the instance budget");
  cmd->add_option("--out", args.out_csv, "append a result row to this CSV file");
  cmd->add_option("--node-limit", args.node_limit, "branch-and-bound node limit")
      ->envname("NETMON_NODE_LIMIT");
}

Instance loadWithBudget(const CommonArgs& args) {
  Instance inst = loadInstanceFile(args.instance_path);
  if (args.budget > 0 && args.budget != inst.budget()) inst = inst.withBudget(args.budget);
  return inst;
}

void appendRecord(const std::string& path, const ExperimentRecord& record) {
  if (path.empty()) return;
  const bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
  std::ofstream out(path, std::ios::app);
  if (!out) throw ValidationError("cannot open CSV file: " + path);
  if (fresh) writeRecordHeader(out);
  writeRecord(out, record);
}

ExperimentRecord baseRecord(const CommonArgs& args, const Instance& inst,
                            const std::string& solver) {
  ExperimentRecord record;
  record.instance_id = std::filesystem::path(args.instance_path).stem().string();
  record.n = inst.nodeCount();
  record.m = inst.componentCount();
  record.b1 = inst.budget();
  record.solver = solver;
  return record;
}

double elapsedSince(const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

int runSolveExact(const CommonArgs& args, long cap) {
  const Instance inst = loadWithBudget(args);
  const auto start = std::chrono::steady_clock::now();
  const OracleResult result = solveExact(inst, cap);
  ExperimentRecord record = baseRecord(args, inst, "exact");
  record.value = result.value;
  record.eps = profileEpsilon(inst, result.defense, result.attack);
  record.iters = result.action_count;
  record.seconds = elapsedSince(start);
  appendRecord(args.out_csv, record);
  std::cout << "value " << result.value << " over " << result.action_count
            << " pure defenses, profile eps " << record.eps << "\n";
  return 0;
}

int runSolveDisjoint(const CommonArgs& args) {
  const Instance inst = loadWithBudget(args);
  const auto start = std::chrono::steady_clock::now();
  const DisjointNE ne = solveDisjoint(inst);
  ExperimentRecord record = baseRecord(args, inst, "disjoint");
  record.value = ne.value;
  record.eps = profileEpsilon(inst, ne.defense, ne.attack);
  record.iters = ne.p;
  record.seconds = elapsedSince(start);
  appendRecord(args.out_csv, record);
  std::cout << "value " << ne.value << ", sensors spread over " << ne.p
            << " nodes, profile eps " << record.eps << "\n";
  return 0;
}

int runSolveSingle(const CommonArgs& args) {
  const Instance inst = loadWithBudget(args);
  const auto start = std::chrono::steady_clock::now();
  const SingleSensorNE ne = solveSingleSensor(inst);
  ExperimentRecord record = baseRecord(args, inst, "single");
  record.value = ne.value;
  record.eps = profileEpsilon(inst, ne.defense, ne.attack);
  record.seconds = elapsedSince(start);
  appendRecord(args.out_csv, record);
  std::cout << "value " << ne.value << ", profile eps " << record.eps << "\n";
  return 0;
}

int runSolveCover(const CommonArgs& args, bool allow_greedy) {
  const Instance inst = loadWithBudget(args);
  CoverOptions opts;
  opts.allow_greedy = allow_greedy;
  opts.ilp.node_limit = args.node_limit;

  const auto start = std::chrono::steady_clock::now();
  const CoverResult cover = minSetCover(inst, std::nullopt, opts);
  ExperimentRecord record = baseRecord(args, inst, "cover");
  if (cover.size <= inst.budget()) {
    record.value = 0;
    record.eps = 0;
    record.seconds = elapsedSince(start);
    appendRecord(args.out_csv, record);
    std::cout << "cover of size " << cover.size << " fits the budget: pure equilibrium, value 0\n";
    return 0;
  }
  const PackingResult packing = maxSetPacking(inst, std::nullopt, opts);
  const CoverPackingProfile profile = coverPackingProfile(inst, cover, packing);
  record.value = expectedLoss(inst, profile.defense, profile.attack);
  record.eps = profile.certificate.eps;
  record.seconds = elapsedSince(start);
  appendRecord(args.out_csv, record);
  std::cout << "cover size " << cover.size << ", packing size " << packing.size
            << ", certificate eps " << profile.certificate.eps << ", worst-case loss "
            << profile.certificate.worst_case_loss << "\n";
  return 0;
}

int runSolveFocused(const CommonArgs& args) {
  const Instance inst = loadWithBudget(args);
  CoverOptions opts;
  opts.ilp.node_limit = args.node_limit;
  const auto start = std::chrono::steady_clock::now();
  const FocusedResult result = focusedProfile(inst, std::nullopt, opts);
  if (!result.profile.has_value()) {
    std::cout << "focused profile unavailable: criticality gap " << result.gap
              << " is below the required " << result.required_gap << "\n";
    return 0;
  }
  ExperimentRecord record = baseRecord(args, inst, "focused");
  record.value = expectedLoss(inst, result.profile->defense, result.profile->attack);
  record.eps = result.profile->eps;
  record.seconds = elapsedSince(start);
  appendRecord(args.out_csv, record);
  std::cout << "focused on " << result.profile->focus.size() << " components, certificate eps "
            << result.profile->eps << ", worst-case loss " << result.profile->worst_case_loss
            << "\n";
  return 0;
}

int runSolveColgen(const CommonArgs& args, int max_iters, double tol,
                   std::optional<double> oracle_value, const std::string& trace_path) {
  const Instance inst = loadWithBudget(args);
  CoverOptions cover_opts;
  cover_opts.ilp.node_limit = args.node_limit;

  // Start from the set-cover profile's support; if the cover already fits the
  // budget its single column is optimal on its own.
  const CoverResult cover = minSetCover(inst, std::nullopt, cover_opts);
  MixedDefense init;
  if (cover.size <= inst.budget()) {
    init.support.push_back({makeDefense(inst, cover.nodes), 1.0});
  } else {
    Vector rho = Vector::Zero(inst.nodeCount());
    for (int v : cover.nodes) rho(v) = static_cast<double>(inst.budget()) / cover.size;
    init = decomposeMarginals(Marginals{rho}, inst.budget());
  }

  ColGenOptions opts;
  opts.max_iterations = max_iters;
  opts.tol = tol;
  opts.ilp.node_limit = args.node_limit;
  opts.reference_value = oracle_value;

  const auto start = std::chrono::steady_clock::now();
  const ColGenResult result = runColumnGeneration(inst, init, opts);

  ExperimentRecord record = baseRecord(args, inst, "colgen");
  record.value = result.value;
  const double final_reduced_cost = result.trace.iterations.back().reduced_cost;
  record.eps = std::max(0.0, -final_reduced_cost);
  record.iters = static_cast<long>(result.trace.iterations.size());
  record.seconds = elapsedSince(start);
  appendRecord(args.out_csv, record);

  if (!trace_path.empty()) {
    std::ofstream out(trace_path);
    if (!out) throw ValidationError("cannot open trace file: " + trace_path);
    writeTrace(out, inst, result.trace);
  }
  std::cout << (result.converged ? "converged" : "iteration limit reached") << " after "
            << result.trace.iterations.size() << " iterations, value " << result.value << "\n";
  return result.converged ? 0 : 2;
}

struct GenArgs {
  std::string kind = "random-bipartite";
  int n = 10;
  int m = 10;
  int budget = 1;
  std::uint64_t seed = 1;
  double density = 0.3;
  int layers = 8;
  double w_lo = 0.1;
  std::string out;
};

Instance generate(const GenArgs& args, std::uint64_t seed) {
  if (args.kind == "disjoint") {
    return generateDisjoint(args.n, args.m, args.budget, seed, args.w_lo);
  }
  if (args.kind == "random-bipartite") {
    return generateBipartite(args.n, args.m, args.budget, seed, args.density, args.w_lo);
  }
  if (args.kind == "random-dag") {
    return generateLayeredDag(args.n, args.budget, seed, args.layers, args.density, args.w_lo);
  }
  throw ValidationError("unknown instance kind: " + args.kind);
}

int runGen(const GenArgs& args) {
  const Instance inst = generate(args, args.seed);
  if (args.out.empty()) {
    std::cout << serializeInstance(inst);
  } else {
    saveInstanceFile(inst, args.out);
    std::cout << "wrote " << args.out << " (n=" << inst.nodeCount()
              << ", m=" << inst.componentCount() << ", b1=" << inst.budget() << ")\n";
  }
  return 0;
}

struct BenchArgs {
  GenArgs gen;
  int count = 10;
  std::string solvers = "cover,colgen";
  std::string out_csv;
  std::string trace_dir;
  long node_limit = 1'000'000;
  int max_iters = 0;
  double tol = 1e-7;
};

int runBench(const BenchArgs& args) {
  std::vector<std::string> solvers;
  {
    std::string token;
    std::istringstream stream(args.solvers);
    while (std::getline(stream, token, ',')) {
      if (!token.empty()) solvers.push_back(token);
    }
  }
  int failures = 0;
  for (int run = 0; run < args.count; ++run) {
    const std::uint64_t seed = args.gen.seed + static_cast<std::uint64_t>(run);
    const Instance inst = generate(args.gen, seed);
    const std::string id = args.gen.kind + "-n" + std::to_string(inst.nodeCount()) + "-m" +
                           std::to_string(inst.componentCount()) + "-s" + std::to_string(seed);
    for (const auto& solver : solvers) {
      ExperimentRecord record;
      record.instance_id = id;
      record.n = inst.nodeCount();
      record.m = inst.componentCount();
      record.b1 = inst.budget();
      record.solver = solver;
      const auto start = std::chrono::steady_clock::now();
      try {
        if (solver == "exact") {
          const OracleResult result = solveExact(inst);
          record.value = result.value;
          record.eps = profileEpsilon(inst, result.defense, result.attack);
          record.iters = result.action_count;
        } else if (solver == "disjoint") {
          const DisjointNE ne = solveDisjoint(inst);
          record.value = ne.value;
          record.eps = profileEpsilon(inst, ne.defense, ne.attack);
          record.iters = ne.p;
        } else if (solver == "single") {
          const SingleSensorNE ne = solveSingleSensor(inst);
          record.value = ne.value;
          record.eps = profileEpsilon(inst, ne.defense, ne.attack);
        } else if (solver == "cover") {
          CoverOptions opts;
          opts.ilp.node_limit = args.node_limit;
          const CoverResult cover = minSetCover(inst, std::nullopt, opts);
          if (cover.size <= inst.budget()) {
            record.value = 0;
            record.eps = 0;
          } else {
            const PackingResult packing = maxSetPacking(inst, std::nullopt, opts);
            const CoverPackingProfile profile = coverPackingProfile(inst, cover, packing);
            record.value = expectedLoss(inst, profile.defense, profile.attack);
            record.eps = profile.certificate.eps;
          }
        } else if (solver == "focused") {
          CoverOptions opts;
          opts.ilp.node_limit = args.node_limit;
          const FocusedResult result = focusedProfile(inst, std::nullopt, opts);
          if (!result.profile.has_value()) continue;  // documented non-result
          record.value = expectedLoss(inst, result.profile->defense, result.profile->attack);
          record.eps = result.profile->eps;
        } else if (solver == "colgen") {
          CoverOptions cover_opts;
          cover_opts.ilp.node_limit = args.node_limit;
          const CoverResult cover = minSetCover(inst, std::nullopt, cover_opts);
          MixedDefense init;
          if (cover.size <= inst.budget()) {
            init.support.push_back({makeDefense(inst, cover.nodes), 1.0});
          } else {
            Vector rho = Vector::Zero(inst.nodeCount());
            for (int v : cover.nodes) rho(v) = static_cast<double>(inst.budget()) / cover.size;
            init = decomposeMarginals(Marginals{rho}, inst.budget());
          }
          ColGenOptions opts;
          opts.max_iterations = args.max_iters;
          opts.tol = args.tol;
          opts.ilp.node_limit = args.node_limit;
          const ColGenResult result = runColumnGeneration(inst, init, opts);
          record.value = result.value;
          record.eps = std::max(0.0, -result.trace.iterations.back().reduced_cost);
          record.iters = static_cast<long>(result.trace.iterations.size());
          if (!args.trace_dir.empty()) {
            std::filesystem::create_directories(args.trace_dir);
            std::ofstream out(std::filesystem::path(args.trace_dir) / (id + ".trace.csv"));
            writeTrace(out, inst, result.trace);
          }
        } else {
          throw ValidationError("unknown solver: " + solver);
        }
      } catch (const ResourceError& err) {
        std::cerr << id << " " << solver << ": " << err.what() << "\n";
        ++failures;
        continue;
      }
      record.seconds = elapsedSince(start);
      appendRecord(args.out_csv, record);
      std::cout << id << " " << solver << " value=" << record.value << " eps=" << record.eps
                << " (" << record.seconds << "s)\n";
    }
  }
  return failures == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equilibrium solvers for budgeted sensor-placement monitoring games"};
  app.require_subcommand(1);

  CommonArgs exact_args;
  long exact_cap = kDefaultEnumerationCap;
  auto* exact_cmd = app.add_subcommand("solve-exact", "full-enumeration equilibrium (small instances)");
  addCommon(exact_cmd, exact_args);
  exact_cmd->add_option("--cap", exact_cap, "maximum number of enumerated defenses");

  CommonArgs disjoint_args;
  auto* disjoint_cmd =
      app.add_subcommand("solve-disjoint", "closed-form equilibrium for disjoint monitoring sets");
  addCommon(disjoint_cmd, disjoint_args);

  CommonArgs single_args;
  auto* single_cmd = app.add_subcommand("solve-single", "equilibrium for a single sensor");
  addCommon(single_cmd, single_args);

  CommonArgs cover_args;
  bool cover_greedy = false;
  auto* cover_cmd =
      app.add_subcommand("solve-cover", "set-cover/set-packing profile with its certificate");
  addCommon(cover_cmd, cover_args);
  cover_cmd->add_flag("--greedy", cover_greedy, "fall back to greedy cover/packing at the node limit");

  CommonArgs focused_args;
  auto* focused_cmd =
      app.add_subcommand("solve-focused", "profile focused on the top-criticality components");
  addCommon(focused_cmd, focused_args);

  CommonArgs colgen_args;
  int colgen_max_iters = 0;
  double colgen_tol = 1e-7;
  double colgen_oracle = -1;
  std::string colgen_trace;
  auto* colgen_cmd = app.add_subcommand("solve-colgen", "column-generation refinement to an equilibrium");
  addCommon(colgen_cmd, colgen_args);
  colgen_cmd->add_option("--max-iters", colgen_max_iters, "iteration cap (0: ten times n)");
  colgen_cmd->add_option("--tol", colgen_tol, "reduced-cost termination tolerance");
  colgen_cmd->add_option("--oracle-value", colgen_oracle,
                         "reference game value for the trace's d column");
  colgen_cmd->add_option("--trace", colgen_trace, "write the per-iteration trace CSV here");

  GenArgs gen_args;
  auto* gen_cmd = app.add_subcommand("gen", "generate a random instance document");
  gen_cmd->add_option("--kind", gen_args.kind, "disjoint | random-bipartite | random-dag");
  gen_cmd->add_option("--n", gen_args.n, "number of nodes / vertices");
  gen_cmd->add_option("--m", gen_args.m, "number of components (ignored for random-dag)");
  gen_cmd->add_option("--budget", gen_args.budget, "sensor budget")->required();
  gen_cmd->add_option("--seed", gen_args.seed, "generator seed");
  gen_cmd->add_option("--density", gen_args.density, "incidence/edge density");
  gen_cmd->add_option("--layers", gen_args.layers, "layer count for random-dag");
  gen_cmd->add_option("--w-lo", gen_args.w_lo, "criticality floor");
  gen_cmd->add_option("--out", gen_args.out, "output path (stdout if omitted)");

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "run solvers over seeded random instances");
  bench_cmd->add_option("--kind", bench_args.gen.kind, "disjoint | random-bipartite | random-dag");
  bench_cmd->add_option("--n", bench_args.gen.n, "number of nodes / vertices");
  bench_cmd->add_option("--m", bench_args.gen.m, "number of components");
  bench_cmd->add_option("--budget", bench_args.gen.budget, "sensor budget")->required();
  bench_cmd->add_option("--seed", bench_args.gen.seed, "first seed");
  bench_cmd->add_option("--count", bench_args.count, "number of instances");
  bench_cmd->add_option("--density", bench_args.gen.density, "incidence/edge density");
  bench_cmd->add_option("--layers", bench_args.gen.layers, "layer count for random-dag");
  bench_cmd->add_option("--w-lo", bench_args.gen.w_lo, "criticality floor");
  bench_cmd->add_option("--solvers", bench_args.solvers, "comma list: exact,disjoint,single,cover,focused,colgen");
  bench_cmd->add_option("--out", bench_args.out_csv, "CSV output path");
  bench_cmd->add_option("--trace-dir", bench_args.trace_dir, "directory for colgen traces");
  bench_cmd->add_option("--max-iters", bench_args.max_iters, "colgen iteration cap");
  bench_cmd->add_option("--tol", bench_args.tol, "colgen termination tolerance");
  bench_cmd->add_option("--node-limit", bench_args.node_limit, "branch-and-bound node limit")
      ->envname("NETMON_NODE_LIMIT");

  CLI11_PARSE(app, argc, argv);

  try {
    if (exact_cmd->parsed()) return runSolveExact(exact_args, exact_cap);
    if (disjoint_cmd->parsed()) return runSolveDisjoint(disjoint_args);
    if (single_cmd->parsed()) return runSolveSingle(single_args);
    if (cover_cmd->parsed()) return runSolveCover(cover_args, cover_greedy);
    if (focused_cmd->parsed()) return runSolveFocused(focused_args);
    if (colgen_cmd->parsed()) {
      return runSolveColgen(colgen_args, colgen_max_iters, colgen_tol,
                            colgen_oracle > 0 ? std::optional<double>(colgen_oracle) : std::nullopt,
                            colgen_trace);
    }
    if (gen_cmd->parsed()) return runGen(gen_args);
    if (bench_cmd->parsed()) return runBench(bench_args);
  } catch (const ResourceError& err) {
    std::cerr << "resource limit: " << err.what() << "\n";
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 1;
}
