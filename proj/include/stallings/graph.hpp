#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace stallings {

// A finite graph with an oriented-edge involution. Unoriented edge k carries
// the oriented pair {2k, 2k+1}; bar(e) = e ^ 1; terminus(e) = origin(bar(e)).
class Graph {
 public:
  Graph() = default;
  Graph(int vertices, std::vector<std::pair<int, int>> edges);

  static Graph rose(int n);

  int vertex_count() const { return vertex_count_; }
  int edge_pair_count() const { return static_cast<int>(origin_.size() / 2); }
  int oriented_edge_count() const { return static_cast<int>(origin_.size()); }

  static int bar(int e) { return e ^ 1; }
  static int pair_of(int e) { return e >> 1; }
  int origin(int e) const { return origin_[static_cast<std::size_t>(e)]; }
  int terminus(int e) const { return origin_[static_cast<std::size_t>(bar(e))]; }
  bool is_loop(int e) const { return origin(e) == terminus(e); }

  // Oriented edges with the given origin, ascending. Loops contribute both
  // orientations, so valence counts loops twice.
  const std::vector<int>& out_edges(int v) const { return out_[static_cast<std::size_t>(v)]; }
  int valence(int v) const { return static_cast<int>(out_[static_cast<std::size_t>(v)].size()); }

  bool connected() const;

 private:
  int vertex_count_ = 0;
  std::vector<int> origin_;            // per oriented edge
  std::vector<std::vector<int>> out_;  // per vertex
};

// A composable sequence of oriented edges, with an explicit origin so the
// empty path is anchored.
struct EdgePath {
  int origin = 0;
  std::vector<int> edges;

  friend bool operator==(const EdgePath&, const EdgePath&) = default;
};

bool is_composable(const Graph& g, const EdgePath& p);
bool is_tight(const Graph& g, const EdgePath& p);
// Tightness around the wrap for a closed path read cyclically.
bool is_cyclically_tight(const Graph& g, const EdgePath& p);
int path_terminus(const Graph& g, const EdgePath& p);
EdgePath reverse_path(const Graph& g, const EdgePath& p);
EdgePath tighten_path(const Graph& g, const EdgePath& p);

int rank(const Graph& g);

// Spanning tree edge set (unoriented pair ids), BFS from vertex 0.
std::vector<int> maximal_tree(const Graph& g);

// One tight loop delta- . eta . bar(delta+) per non-tree edge; these freely
// generate pi_1(G, base).
std::vector<EdgePath> spanning_basis(const Graph& g, int base, const std::vector<int>& tree);

struct CollapseMap {
  std::vector<int> vertex_map;  // old vertex -> new vertex (surjection)
  std::vector<int> edge_map;    // old unoriented edge -> new unoriented edge, -1 if collapsed
};

// Collapses each component of the given forest (unoriented edge ids) to a
// point. Throws if the subgraph contains a circuit.
std::pair<Graph, CollapseMap> collapse_forest(const Graph& g, const std::vector<int>& forest);

// Iteratively deletes valence-1 vertices. Requires connected input of rank >= 1.
Graph core(const Graph& g);

std::vector<int> natural_vertices(const Graph& g);

// A maximal arc through valence-2 vertices, as a tight path between natural
// vertices (possibly a closed arc at one natural vertex).
std::vector<EdgePath> natural_edges(const Graph& g);

// Inserts a valence-2 vertex in the middle of unoriented edge `pair`;
// the two halves of oriented edge 2*pair become the returned oriented pair
// (first, second), appended after the surviving edges.
Graph subdivide_edge(const Graph& g, int pair);

}  // namespace stallings
