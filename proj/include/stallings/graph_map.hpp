#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "stallings/endomorphism.hpp"
#include "stallings/graph.hpp"

namespace stallings {

// A tight map between graphs: vertices to vertices, each oriented edge to a
// (possibly empty) edge path in the codomain, with edge_map(bar e) the
// reversal of edge_map(e) and endpoints compatible.
struct GraphMap {
  Graph domain;
  Graph codomain;
  std::vector<int> vertex_map;             // per domain vertex
  std::vector<std::vector<int>> edge_map;  // per oriented domain edge

  const std::vector<int>& image(int e) const { return edge_map[static_cast<std::size_t>(e)]; }
};

// Checks the GraphMap invariants; throws on violation.
void validate(const GraphMap& f);

// Self-map of rose(rank) sending petal i along the path spelled by image i.
GraphMap from_endomorphism(const Endomorphism& e);

GraphMap tighten_map(const GraphMap& f);

bool is_degenerate_at(const GraphMap& f, int v);

// First oriented codomain edge of the image path of the edge at direction d.
int derivative(const GraphMap& f, int d);

struct GatePartition {
  int vertex;
  std::vector<std::vector<int>> blocks;  // directions grouped by derivative
};

// Requires f nondegenerate at v.
GatePartition gates(const GraphMap& f, int v);

bool is_foldable(const GraphMap& f);

struct PiOneTrivial {};

struct FoldableResult {
  // Domain of `foldable` is the collapsed, edgelet-subdivided graph; every
  // image path has length exactly one.
  GraphMap foldable;
  // Collapse of the edgelet-subdivided domain onto foldable.domain.
  GraphMap collapse;
  // Edgelet subdivision of the original domain (the domain of `collapse`);
  // subdivision.image(e) lists the edgelets of original edge e in order.
  GraphMap subdivision;
  bool collapsed_forest;  // true iff the collapsed subgraph is a forest
};

// Factors a tight map, up to homotopy, as an edgelet collapse followed by a
// foldable edgelet map. Reports PiOneTrivial when the whole domain collapses.
// Requires a connected domain.
std::variant<FoldableResult, PiOneTrivial> make_foldable(const GraphMap& f);

}  // namespace stallings
