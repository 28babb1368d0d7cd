#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "stallings/fold.hpp"
#include "stallings/graph.hpp"
#include "stallings/stallings_graph.hpp"
#include "stallings/whitehead.hpp"

namespace stallings {

// Graph schema: {"vertices":[ids], "edges":[{"id":,"from":,"to":}]} with one
// entry per unoriented edge; orientation runs from->to, bar is the reversal.
nlohmann::json graph_to_json(const Graph& g);

struct LoadedGraph {
  Graph graph;
  std::vector<long long> vertex_ids;  // original ids, by dense index
  std::vector<long long> edge_ids;
};

LoadedGraph graph_from_json(const nlohmann::json& j);

nlohmann::json stallings_to_json(const StallingsGraph& s);

std::string graph_to_dot(const Graph& g);
std::string stallings_to_dot(const StallingsGraph& s);

nlohmann::json fold_trace_json(const FoldFactorization& fac);
nlohmann::json whitehead_trace_json(const PartialBasisResult& r);

}  // namespace stallings
