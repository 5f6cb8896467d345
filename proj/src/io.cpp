#include "netmon/io.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace netmon {

using nlohmann::json;

int Rng::uniformInt(int lo, int hi) {
  if (lo > hi) throw ValidationError("empty integer range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t draw;
  do {
    draw = engine_();
  } while (draw >= limit);
  return lo + static_cast<int>(draw % span);
}

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ValidationError("instance document: " + where + ": " + what);
}

std::vector<std::string> parseIdList(const json& doc, const std::string& field) {
  if (!doc.contains(field)) fail(field, "missing");
  const json& arr = doc.at(field);
  if (!arr.is_array() || arr.empty()) fail(field, "must be a nonempty array");
  std::vector<std::string> ids;
  for (const auto& item : arr) {
    if (!item.is_string()) fail(field, "entries must be strings");
    ids.push_back(item.get<std::string>());
  }
  return ids;
}

Vector parseWeights(const json& doc, const std::vector<std::string>& components) {
  if (!doc.contains("weights")) fail("weights", "missing");
  const json& obj = doc.at("weights");
  if (!obj.is_object()) fail("weights", "must be an object keyed by component");
  Vector weights(static_cast<Index>(components.size()));
  for (size_t e = 0; e < components.size(); ++e) {
    if (!obj.contains(components[e])) fail("weights", "no entry for " + components[e]);
    const json& w = obj.at(components[e]);
    if (!w.is_number()) fail("weights", components[e] + " must be a number");
    weights(static_cast<Index>(e)) = w.get<double>();
  }
  if (obj.size() != components.size()) fail("weights", "has entries for unknown components");
  return weights;
}

int parseBudget(const json& doc) {
  if (!doc.contains("budget")) fail("budget", "missing");
  const json& b = doc.at("budget");
  if (!b.is_number_integer()) fail("budget", "must be an integer");
  return b.get<int>();
}

Instance parseExplicit(const json& doc) {
  const std::vector<std::string> nodes = parseIdList(doc, "nodes");
  const std::vector<std::string> components = parseIdList(doc, "components");
  std::unordered_map<std::string, int> comp_index;
  for (size_t e = 0; e < components.size(); ++e) {
    comp_index.emplace(components[e], static_cast<int>(e));
  }

  if (!doc.contains("monitoring_sets")) fail("monitoring_sets", "missing");
  const json& sets = doc.at("monitoring_sets");
  if (!sets.is_object()) fail("monitoring_sets", "must be an object keyed by node");
  if (sets.size() != nodes.size()) fail("monitoring_sets", "must have one entry per node");

  std::vector<std::vector<int>> monitoring(nodes.size());
  for (size_t v = 0; v < nodes.size(); ++v) {
    if (!sets.contains(nodes[v])) fail("monitoring_sets", "no entry for " + nodes[v]);
    const json& list = sets.at(nodes[v]);
    if (!list.is_array()) fail("monitoring_sets", nodes[v] + " must be an array");
    for (const auto& item : list) {
      if (!item.is_string()) fail("monitoring_sets", nodes[v] + " entries must be strings");
      const auto it = comp_index.find(item.get<std::string>());
      if (it == comp_index.end()) {
        fail("monitoring_sets", nodes[v] + " references unknown component " +
                                    item.get<std::string>());
      }
      monitoring[v].push_back(it->second);
    }
  }

  return Instance(nodes, components, std::move(monitoring), parseWeights(doc, components),
                  parseBudget(doc));
}

Instance parseGraph(const json& doc) {
  const std::vector<std::string> vertices = parseIdList(doc, "vertices");
  std::unordered_map<std::string, int> vertex_index;
  for (size_t v = 0; v < vertices.size(); ++v) {
    if (!vertex_index.emplace(vertices[v], static_cast<int>(v)).second) {
      fail("vertices", "duplicate identifier " + vertices[v]);
    }
  }

  if (!doc.contains("edges")) fail("edges", "missing");
  const json& edges = doc.at("edges");
  if (!edges.is_array()) fail("edges", "must be an array of [src, dst] pairs");
  FlowGraph graph;
  graph.vertices = vertices;
  for (const auto& edge : edges) {
    if (!edge.is_array() || edge.size() != 2 || !edge[0].is_string() || !edge[1].is_string()) {
      fail("edges", "entries must be [src, dst] string pairs");
    }
    const auto src = vertex_index.find(edge[0].get<std::string>());
    const auto dst = vertex_index.find(edge[1].get<std::string>());
    if (src == vertex_index.end() || dst == vertex_index.end()) {
      fail("edges", "edge references an unknown vertex");
    }
    graph.edges.emplace_back(src->second, dst->second);
  }

  return Instance(vertices, vertices, monitoringSetsFromFlow(graph),
                  parseWeights(doc, vertices), parseBudget(doc));
}

}  // namespace

Instance parseInstance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& err) {
    throw ValidationError(std::string("instance document is not valid JSON: ") + err.what());
  }
  if (!doc.is_object()) throw ValidationError("instance document must be a JSON object");
  try {
    if (doc.contains("vertices")) return parseGraph(doc);
    return parseExplicit(doc);
  } catch (const json::exception& err) {
    throw ValidationError(std::string("instance document: ") + err.what());
  }
}

Instance loadInstanceFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open instance file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parseInstance(buffer.str());
}

std::string serializeInstance(const Instance& inst) {
  json doc;
  doc["nodes"] = inst.nodes();
  doc["components"] = inst.components();
  json sets = json::object();
  for (int v = 0; v < inst.nodeCount(); ++v) {
    json list = json::array();
    for (int e : inst.monitoringSet(v)) list.push_back(inst.componentId(e));
    sets[inst.nodeId(v)] = std::move(list);
  }
  doc["monitoring_sets"] = std::move(sets);
  json weights = json::object();
  for (int e = 0; e < inst.componentCount(); ++e) {
    weights[inst.componentId(e)] = inst.weight(e);
  }
  doc["weights"] = std::move(weights);
  doc["budget"] = inst.budget();
  return doc.dump(2) + "\n";
}

void saveInstanceFile(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write instance file: " + path);
  out << serializeInstance(inst);
}

bool operator==(const Instance& a, const Instance& b) {
  return a.nodes() == b.nodes() && a.components() == b.components() &&
         a.monitoringSets() == b.monitoringSets() && a.weights() == b.weights() &&
         a.budget() == b.budget();
}

namespace {

std::vector<std::string> indexedIds(const char* prefix, int count) {
  std::vector<std::string> ids;
  ids.reserve(static_cast<size_t>(count));
  for (int i = 1; i <= count; ++i) ids.push_back(prefix + std::to_string(i));
  return ids;
}

Vector drawWeights(Rng& rng, int m, double w_lo) {
  if (!(w_lo > 0.0) || w_lo > 1.0) throw ValidationError("weight floor must lie in (0, 1]");
  Vector weights(m);
  for (int e = 0; e < m; ++e) weights(e) = rng.uniform(w_lo, 1.0);
  return weights;
}

}  // namespace

Instance generateDisjoint(int n, int m, int budget, std::uint64_t seed, double w_lo) {
  if (n < 1 || m < n) throw ValidationError("disjoint generator needs m >= n >= 1");
  Rng rng(seed);
  std::vector<std::vector<int>> monitoring(static_cast<size_t>(n));
  // One component per node first, the rest wherever they land.
  std::vector<int> components(static_cast<size_t>(m));
  std::iota(components.begin(), components.end(), 0);
  for (int i = m - 1; i > 0; --i) {
    std::swap(components[static_cast<size_t>(i)],
              components[static_cast<size_t>(rng.uniformInt(0, i))]);
  }
  for (int v = 0; v < n; ++v) monitoring[static_cast<size_t>(v)].push_back(components[static_cast<size_t>(v)]);
  for (int i = n; i < m; ++i) {
    monitoring[static_cast<size_t>(rng.uniformInt(0, n - 1))].push_back(
        components[static_cast<size_t>(i)]);
  }
  return Instance(indexedIds("v", n), indexedIds("e", m), std::move(monitoring),
                  drawWeights(rng, m, w_lo), budget);
}

Instance generateBipartite(int n, int m, int budget, std::uint64_t seed, double density,
                           double w_lo) {
  if (n < 1 || m < 1) throw ValidationError("generator needs n, m >= 1");
  if (!(density > 0.0) || density > 1.0) throw ValidationError("density must lie in (0, 1]");
  Rng rng(seed);
  std::vector<std::vector<int>> monitoring(static_cast<size_t>(n));
  std::vector<int> coverage(static_cast<size_t>(m), 0);
  for (int v = 0; v < n; ++v) {
    for (int e = 0; e < m; ++e) {
      if (rng.uniform() < density) {
        monitoring[static_cast<size_t>(v)].push_back(e);
        ++coverage[static_cast<size_t>(e)];
      }
    }
  }
  for (int e = 0; e < m; ++e) {
    if (coverage[static_cast<size_t>(e)] == 0) {
      monitoring[static_cast<size_t>(rng.uniformInt(0, n - 1))].push_back(e);
    }
  }
  for (int v = 0; v < n; ++v) {
    if (monitoring[static_cast<size_t>(v)].empty()) {
      monitoring[static_cast<size_t>(v)].push_back(rng.uniformInt(0, m - 1));
    }
  }
  return Instance(indexedIds("v", n), indexedIds("e", m), std::move(monitoring),
                  drawWeights(rng, m, w_lo), budget);
}

Instance generateLayeredDag(int n, int budget, std::uint64_t seed, int layers, double density,
                            double w_lo) {
  if (n < 1) throw ValidationError("generator needs n >= 1");
  if (layers < 1) throw ValidationError("generator needs at least one layer");
  if (!(density > 0.0) || density > 1.0) throw ValidationError("density must lie in (0, 1]");
  layers = std::min(layers, n);
  Rng rng(seed);

  std::vector<int> layer_of(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v) layer_of[static_cast<size_t>(v)] = v * layers / n;

  FlowGraph graph;
  graph.vertices = indexedIds("u", n);
  for (int u = 0; u < n; ++u) {
    for (int w = u + 1; w < n; ++w) {
      const int du = layer_of[static_cast<size_t>(w)] - layer_of[static_cast<size_t>(u)];
      double p = 0.0;
      if (du == 1) p = density;
      else if (du == 2) p = density / 4.0;
      if (p > 0.0 && rng.uniform() < p) graph.edges.emplace_back(u, w);
    }
  }

  return Instance(graph.vertices, graph.vertices, monitoringSetsFromFlow(graph),
                  drawWeights(rng, n, w_lo), budget);
}

void writeRecordHeader(std::ostream& out) { out << kRecordHeader << "\n"; }

void writeRecord(std::ostream& out, const ExperimentRecord& record) {
  std::ostringstream line;
  line.precision(17);
  line << record.instance_id << "," << record.n << "," << record.m << "," << record.b1 << ","
       << record.solver << "," << record.value << "," << record.eps << "," << record.iters << ","
       << record.seconds;
  out << line.str() << "\n";
}

void writeTrace(std::ostream& out, const Instance& inst, const ColGenTrace& trace) {
  out << "iter,master_value,reduced_cost,entering,seconds,d\n";
  std::ostringstream body;
  body.precision(17);
  for (const auto& row : trace.iterations) {
    body << row.iteration << "," << row.master_value << "," << row.reduced_cost << ",";
    for (size_t i = 0; i < row.entering.nodes.size(); ++i) {
      if (i > 0) body << ";";
      body << inst.nodeId(row.entering.nodes[i]);
    }
    body << "," << row.seconds << ",";
    if (row.ratio.has_value()) body << *row.ratio;
    body << "\n";
  }
  out << body.str();
}

}  // namespace netmon
