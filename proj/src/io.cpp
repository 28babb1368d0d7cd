#include "stallings/io.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

namespace stallings {

using nlohmann::json;

json graph_to_json(const Graph& g) {
  json j;
  j["vertices"] = json::array();
  for (int v = 0; v < g.vertex_count(); ++v) j["vertices"].push_back(v);
  j["edges"] = json::array();
  for (int k = 0; k < g.edge_pair_count(); ++k)
    j["edges"].push_back({{"id", k}, {"from", g.origin(2 * k)}, {"to", g.terminus(2 * k)}});
  return j;
}

LoadedGraph graph_from_json(const json& j) {
  if (!j.contains("vertices") || !j.contains("edges"))
    throw std::invalid_argument("graph json needs \"vertices\" and \"edges\"");
  LoadedGraph lg;
  std::map<long long, int> vidx;
  for (const auto& v : j.at("vertices")) {
    long long id = v.get<long long>();
    if (vidx.count(id)) throw std::invalid_argument("duplicate vertex id");
    vidx[id] = static_cast<int>(lg.vertex_ids.size());
    lg.vertex_ids.push_back(id);
  }
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : j.at("edges")) {
    long long id = e.at("id").get<long long>();
    long long from = e.at("from").get<long long>();
    long long to = e.at("to").get<long long>();
    if (!vidx.count(from) || !vidx.count(to))
      throw std::invalid_argument("edge endpoint is not a declared vertex");
    lg.edge_ids.push_back(id);
    edges.push_back({vidx[from], vidx[to]});
  }
  lg.graph = Graph(static_cast<int>(lg.vertex_ids.size()), std::move(edges));
  return lg;
}

json stallings_to_json(const StallingsGraph& s) {
  json j = graph_to_json(s.graph());
  for (int k = 0; k < s.graph().edge_pair_count(); ++k)
    j["edges"][static_cast<std::size_t>(k)]["label"] = letter_to_string(s.label(2 * k));
  j["base"] = s.base();
  return j;
}

std::string graph_to_dot(const Graph& g) {
  std::ostringstream os;
  os << "digraph G {\n";
  for (int v = 0; v < g.vertex_count(); ++v) os << "  v" << v << ";\n";
  for (int k = 0; k < g.edge_pair_count(); ++k)
    os << "  v" << g.origin(2 * k) << " -> v" << g.terminus(2 * k) << " [label=\"e" << k
       << "\"];\n";
  os << "}\n";
  return os.str();
}

std::string stallings_to_dot(const StallingsGraph& s) {
  std::ostringstream os;
  os << "digraph S {\n";
  for (int v = 0; v < s.graph().vertex_count(); ++v) {
    os << "  v" << v;
    if (v == s.base()) os << " [shape=doublecircle]";
    os << ";\n";
  }
  for (int k = 0; k < s.graph().edge_pair_count(); ++k)
    os << "  v" << s.graph().origin(2 * k) << " -> v" << s.graph().terminus(2 * k)
       << " [label=\"" << letter_to_string(s.label(2 * k)) << "\"];\n";
  os << "}\n";
  return os.str();
}

json fold_trace_json(const FoldFactorization& fac) {
  json arr = json::array();
  for (std::size_t i = 0; i < fac.events.size(); ++i) {
    const FoldEvent& ev = fac.events[i];
    json step;
    step["step"] = i;
    step["fold_class"] = fold_class_name(ev.fold_class);
    step["vertex"] = ev.vertex;
    step["directions"] = {ev.dir_a, ev.dir_b};
    step["segment_len"] = ev.segment_length();
    step["resulting_graph"] = graph_to_json(fac.graphs[i + 1]);
    arr.push_back(std::move(step));
  }
  return arr;
}

static json weight_json(const WeightSequence& w) {
  json a = json::array();
  for (long long x : w.counts) a.push_back(x);
  return a;
}

json whitehead_trace_json(const PartialBasisResult& r) {
  json arr = json::array();
  for (const SplitTraceStep& s : r.trace) {
    json step;
    step["iteration"] = s.iteration;
    step["vertex"] = s.vertex;
    step["cut_direction"] = s.cut_direction;
    step["weight_sequence_before"] = weight_json(s.before);
    step["weight_sequence_after"] = weight_json(s.after);
    step["graph_snapshot"] = graph_to_json(s.snapshot);
    arr.push_back(std::move(step));
  }
  return arr;
}

}  // namespace stallings
