#include <doctest.h>

#include <sstream>

#include "netmon/analytic.hpp"
#include "netmon/cover.hpp"
#include "netmon/io.hpp"
#include "test_util.hpp"

using namespace netmon;

TEST_CASE("explicit-sets documents parse into valid instances") {
  const std::string doc = R"({
    "nodes": ["v1", "v2", "v3", "v4"],
    "components": ["e1", "e2", "e3", "e4", "e5", "e6", "e7"],
    "monitoring_sets": {
      "v1": ["e1", "e2"],
      "v2": ["e2", "e3"],
      "v3": ["e3", "e4", "e5", "e6", "e7"],
      "v4": ["e5"]
    },
    "weights": {"e1": 1.0, "e2": 1.0, "e3": 1.0, "e4": 1.0, "e5": 1.0, "e6": 1.0, "e7": 1.0},
    "budget": 2
  })";
  const Instance inst = parseInstance(doc);
  CHECK(inst.nodeCount() == 4);
  CHECK(inst.componentCount() == 7);
  CHECK(inst.monitoringSet(2) == std::vector<int>{2, 3, 4, 5, 6});
  CHECK(inst.budget() == 2);
}

TEST_CASE("graph documents derive monitoring sets by reachability") {
  const std::string doc = R"({
    "vertices": ["a", "b", "c"],
    "edges": [["a", "b"], ["b", "c"]],
    "weights": {"a": 0.5, "b": 0.75, "c": 1.0},
    "budget": 1
  })";
  const Instance inst = parseInstance(doc);
  CHECK(inst.monitoringSet(0) == std::vector<int>{0});
  CHECK(inst.monitoringSet(1) == std::vector<int>{0, 1});
  CHECK(inst.monitoringSet(2) == std::vector<int>{0, 1, 2});
}

TEST_CASE("documents with invalid fields are rejected with diagnostics") {
  CHECK_THROWS_AS(parseInstance("not json"), ValidationError);
  CHECK_THROWS_AS(parseInstance(R"({"nodes": ["v1"]})"), ValidationError);

  const std::string zero_weight = R"({
    "nodes": ["v1"], "components": ["e1"],
    "monitoring_sets": {"v1": ["e1"]},
    "weights": {"e1": 0.0}, "budget": 1
  })";
  CHECK_THROWS_AS(parseInstance(zero_weight), ValidationError);

  const std::string uncovered = R"({
    "nodes": ["v1"], "components": ["e1", "e2"],
    "monitoring_sets": {"v1": ["e1"]},
    "weights": {"e1": 0.5, "e2": 0.5}, "budget": 1
  })";
  CHECK_THROWS_AS(parseInstance(uncovered), ValidationError);

  const std::string unknown_component = R"({
    "nodes": ["v1"], "components": ["e1"],
    "monitoring_sets": {"v1": ["e9"]},
    "weights": {"e1": 0.5}, "budget": 1
  })";
  CHECK_THROWS_AS(parseInstance(unknown_component), ValidationError);

  const std::string overflowing_number = R"({
    "nodes": ["v1"], "components": ["e1"],
    "monitoring_sets": {"v1": ["e1"]},
    "weights": {"e1": 0.9e99999}, "budget": 1
  })";
  CHECK_THROWS_AS(parseInstance(overflowing_number), ValidationError);
}

TEST_CASE("serialization round-trips instances and canonicalizes bytes") {
  Rng rng(777);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 2 + rng.uniformInt(0, 6);
    const int m = 2 + rng.uniformInt(0, 8);
    const int b1 = 1 + rng.uniformInt(0, n - 1);
    const Instance inst = generateBipartite(n, m, b1, rng.raw() | 1, 0.4);
    const std::string text = serializeInstance(inst);
    const Instance back = parseInstance(text);
    CHECK(back == inst);
    CHECK(serializeInstance(back) == text);
  }
}

TEST_CASE("generators are deterministic per seed") {
  const Instance a = generateDisjoint(5, 10, 2, 7);
  const Instance b = generateDisjoint(5, 10, 2, 7);
  CHECK(serializeInstance(a) == serializeInstance(b));
  CHECK(hasDisjointMonitoring(a));

  const Instance c = generateBipartite(6, 9, 2, 1, 0.3);
  const Instance d = generateBipartite(6, 9, 2, 1, 0.3);
  CHECK(serializeInstance(c) == serializeInstance(d));
  for (int e = 0; e < c.componentCount(); ++e) {
    CHECK_FALSE(c.monitorsOf(e).empty());  // repaired coverage
  }

  const Instance g = generateLayeredDag(30, 3, 3, 5, 0.3);
  const Instance h = generateLayeredDag(30, 3, 3, 5, 0.3);
  CHECK(serializeInstance(g) == serializeInstance(h));
  CHECK(g.nodeCount() == 30);
  CHECK(g.componentCount() == 30);
  // Reachability: every vertex monitors itself.
  for (int v = 0; v < g.nodeCount(); ++v) {
    CHECK(g.covers(v, v));
  }
}

TEST_CASE("csv records have the fixed column order") {
  std::ostringstream out;
  writeRecordHeader(out);
  ExperimentRecord record;
  record.instance_id = "demo";
  record.n = 3;
  record.m = 4;
  record.b1 = 1;
  record.solver = "exact";
  record.value = 0.5;
  record.eps = 0.0;
  record.iters = 4;
  record.seconds = 0.25;
  writeRecord(out, record);
  CHECK(out.str() == "instance_id,n,m,b1,solver,value,eps,iters,seconds\n"
                     "demo,3,4,1,exact,0.5,0,4,0.25\n");
}

TEST_CASE("trace files carry the iteration series") {
  const Instance inst = testutil::chainInstance(1.0, 2);
  ColGenTrace trace;
  ColGenIteration row;
  row.iteration = 0;
  row.master_value = 0.75;
  row.reduced_cost = -0.25;
  row.entering = makeDefense(inst, {0, 1});
  row.seconds = 0.125;
  row.ratio = 1.5;
  trace.iterations.push_back(row);

  std::ostringstream out;
  writeTrace(out, inst, trace);
  CHECK(out.str() == "iter,master_value,reduced_cost,entering,seconds,d\n"
                     "0,0.75,-0.25,v1;v2,0.125,1.5\n");
}
