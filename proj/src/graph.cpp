#include "stallings/graph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace stallings {

Graph::Graph(int vertices, std::vector<std::pair<int, int>> edges) : vertex_count_(vertices) {
  if (vertices < 0) throw std::invalid_argument("negative vertex count");
  origin_.reserve(edges.size() * 2);
  for (auto [from, to] : edges) {
    if (from < 0 || from >= vertices || to < 0 || to >= vertices)
      throw std::invalid_argument("edge endpoint out of range");
    origin_.push_back(from);
    origin_.push_back(to);
  }
  out_.assign(static_cast<std::size_t>(vertices), {});
  for (int e = 0; e < static_cast<int>(origin_.size()); ++e)
    out_[static_cast<std::size_t>(origin_[static_cast<std::size_t>(e)])].push_back(e);
}

Graph Graph::rose(int n) {
  if (n < 1) throw std::invalid_argument("rose needs at least one petal");
  std::vector<std::pair<int, int>> edges(static_cast<std::size_t>(n), {0, 0});
  return Graph(1, std::move(edges));
}

bool Graph::connected() const {
  if (vertex_count_ == 0) return false;
  std::vector<char> seen(static_cast<std::size_t>(vertex_count_), 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int e : out_edges(v)) {
      int w = terminus(e);
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == vertex_count_;
}

bool is_composable(const Graph& g, const EdgePath& p) {
  int at = p.origin;
  for (int e : p.edges) {
    if (g.origin(e) != at) return false;
    at = g.terminus(e);
  }
  return true;
}

bool is_tight(const Graph&, const EdgePath& p) {
  for (std::size_t i = 1; i < p.edges.size(); ++i)
    if (p.edges[i] == Graph::bar(p.edges[i - 1])) return false;
  return true;
}

bool is_cyclically_tight(const Graph& g, const EdgePath& p) {
  if (!is_tight(g, p)) return false;
  if (p.edges.empty()) return true;
  return p.edges.front() != Graph::bar(p.edges.back());
}

int path_terminus(const Graph& g, const EdgePath& p) {
  return p.edges.empty() ? p.origin : g.terminus(p.edges.back());
}

EdgePath reverse_path(const Graph& g, const EdgePath& p) {
  EdgePath r;
  r.origin = path_terminus(g, p);
  r.edges.assign(p.edges.rbegin(), p.edges.rend());
  for (int& e : r.edges) e = Graph::bar(e);
  return r;
}

EdgePath tighten_path(const Graph& g, const EdgePath& p) {
  if (!is_composable(g, p)) throw std::invalid_argument("path is not composable");
  EdgePath r;
  r.origin = p.origin;
  for (int e : p.edges) {
    if (!r.edges.empty() && r.edges.back() == Graph::bar(e))
      r.edges.pop_back();
    else
      r.edges.push_back(e);
  }
  return r;
}

int rank(const Graph& g) {
  if (!g.connected()) throw std::invalid_argument("rank requires a connected graph");
  return g.edge_pair_count() - g.vertex_count() + 1;
}

std::vector<int> maximal_tree(const Graph& g) {
  if (!g.connected()) throw std::invalid_argument("maximal_tree requires a connected graph");
  std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()), 0);
  std::vector<int> tree;
  std::vector<int> queue = {0};
  seen[0] = 1;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    int v = queue[qi];
    for (int e : g.out_edges(v)) {
      int w = g.terminus(e);
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        tree.push_back(Graph::pair_of(e));
        queue.push_back(w);
      }
    }
  }
  return tree;
}

// Tree geodesic from `from` to `to` inside the given edge set.
static EdgePath tree_path(const Graph& g, const std::vector<char>& in_tree, int from, int to) {
  std::vector<int> parent_edge(static_cast<std::size_t>(g.vertex_count()), -1);
  std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()), 0);
  std::vector<int> queue = {from};
  seen[static_cast<std::size_t>(from)] = 1;
  for (std::size_t qi = 0; qi < queue.size() && !seen[static_cast<std::size_t>(to)]; ++qi) {
    int v = queue[qi];
    for (int e : g.out_edges(v)) {
      if (!in_tree[static_cast<std::size_t>(Graph::pair_of(e))]) continue;
      int w = g.terminus(e);
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        parent_edge[static_cast<std::size_t>(w)] = e;
        queue.push_back(w);
      }
    }
  }
  if (!seen[static_cast<std::size_t>(to)]) throw std::invalid_argument("tree does not span");
  EdgePath p;
  p.origin = from;
  std::vector<int> rev;
  for (int v = to; v != from; v = g.origin(parent_edge[static_cast<std::size_t>(v)]))
    rev.push_back(parent_edge[static_cast<std::size_t>(v)]);
  p.edges.assign(rev.rbegin(), rev.rend());
  return p;
}

std::vector<EdgePath> spanning_basis(const Graph& g, int base, const std::vector<int>& tree) {
  if (base < 0 || base >= g.vertex_count()) throw std::invalid_argument("base is not a vertex");
  std::vector<char> in_tree(static_cast<std::size_t>(g.edge_pair_count()), 0);
  for (int k : tree) in_tree[static_cast<std::size_t>(k)] = 1;
  std::vector<EdgePath> loops;
  for (int k = 0; k < g.edge_pair_count(); ++k) {
    if (in_tree[static_cast<std::size_t>(k)]) continue;
    int e = 2 * k;
    EdgePath loop = tree_path(g, in_tree, base, g.origin(e));
    loop.edges.push_back(e);
    EdgePath back = tree_path(g, in_tree, g.terminus(e), base);
    loop.edges.insert(loop.edges.end(), back.edges.begin(), back.edges.end());
    loops.push_back(tighten_path(g, loop));
  }
  return loops;
}

std::pair<Graph, CollapseMap> collapse_forest(const Graph& g, const std::vector<int>& forest) {
  std::vector<int> parent(static_cast<std::size_t>(g.vertex_count()));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
      parent[static_cast<std::size_t>(v)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
      v = parent[static_cast<std::size_t>(v)];
    }
    return v;
  };
  std::vector<char> collapsed(static_cast<std::size_t>(g.edge_pair_count()), 0);
  for (int k : forest) {
    if (k < 0 || k >= g.edge_pair_count()) throw std::invalid_argument("edge id out of range");
    if (collapsed[static_cast<std::size_t>(k)]) continue;
    collapsed[static_cast<std::size_t>(k)] = 1;
    int a = find(g.origin(2 * k)), b = find(g.terminus(2 * k));
    if (a == b) throw std::invalid_argument("subgraph contains a circuit; refusing to collapse");
    parent[static_cast<std::size_t>(a)] = b;
  }
  CollapseMap cm;
  cm.vertex_map.assign(static_cast<std::size_t>(g.vertex_count()), -1);
  int next = 0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    int r = find(v);
    if (cm.vertex_map[static_cast<std::size_t>(r)] == -1)
      cm.vertex_map[static_cast<std::size_t>(r)] = next++;
    cm.vertex_map[static_cast<std::size_t>(v)] = cm.vertex_map[static_cast<std::size_t>(r)];
  }
  cm.edge_map.assign(static_cast<std::size_t>(g.edge_pair_count()), -1);
  std::vector<std::pair<int, int>> edges;
  for (int k = 0; k < g.edge_pair_count(); ++k) {
    if (collapsed[static_cast<std::size_t>(k)]) continue;
    cm.edge_map[static_cast<std::size_t>(k)] = static_cast<int>(edges.size());
    edges.push_back({cm.vertex_map[static_cast<std::size_t>(g.origin(2 * k))],
                     cm.vertex_map[static_cast<std::size_t>(g.terminus(2 * k))]});
  }
  return {Graph(next, std::move(edges)), std::move(cm)};
}

Graph core(const Graph& g) {
  if (!g.connected()) throw std::invalid_argument("core requires a connected graph");
  if (rank(g) < 1) throw std::invalid_argument("core of a tree is empty");
  std::vector<char> dead_v(static_cast<std::size_t>(g.vertex_count()), 0);
  std::vector<char> dead_e(static_cast<std::size_t>(g.edge_pair_count()), 0);
  std::vector<int> val(static_cast<std::size_t>(g.vertex_count()));
  for (int v = 0; v < g.vertex_count(); ++v) val[static_cast<std::size_t>(v)] = g.valence(v);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < g.vertex_count(); ++v) {
      if (dead_v[static_cast<std::size_t>(v)] || val[static_cast<std::size_t>(v)] != 1) continue;
      for (int e : g.out_edges(v)) {
        if (dead_e[static_cast<std::size_t>(Graph::pair_of(e))]) continue;
        dead_e[static_cast<std::size_t>(Graph::pair_of(e))] = 1;
        --val[static_cast<std::size_t>(g.terminus(e))];
      }
      dead_v[static_cast<std::size_t>(v)] = 1;
      val[static_cast<std::size_t>(v)] = 0;
      changed = true;
    }
  }
  std::vector<int> vmap(static_cast<std::size_t>(g.vertex_count()), -1);
  int next = 0;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (!dead_v[static_cast<std::size_t>(v)]) vmap[static_cast<std::size_t>(v)] = next++;
  std::vector<std::pair<int, int>> edges;
  for (int k = 0; k < g.edge_pair_count(); ++k)
    if (!dead_e[static_cast<std::size_t>(k)])
      edges.push_back({vmap[static_cast<std::size_t>(g.origin(2 * k))],
                       vmap[static_cast<std::size_t>(g.terminus(2 * k))]});
  return Graph(next, std::move(edges));
}

std::vector<int> natural_vertices(const Graph& g) {
  if (rank(g) < 2) throw std::invalid_argument("natural structure needs rank >= 2");
  std::vector<int> vs;
  for (int v = 0; v < g.vertex_count(); ++v) {
    int val = g.valence(v);
    if (val == 1) throw std::invalid_argument("natural structure needs a core graph");
    if (val != 2) vs.push_back(v);
  }
  return vs;
}

std::vector<EdgePath> natural_edges(const Graph& g) {
  std::vector<int> nat = natural_vertices(g);
  std::vector<char> is_nat(static_cast<std::size_t>(g.vertex_count()), 0);
  for (int v : nat) is_nat[static_cast<std::size_t>(v)] = 1;
  std::vector<char> used(static_cast<std::size_t>(g.oriented_edge_count()), 0);
  std::vector<EdgePath> arcs;
  for (int v : nat) {
    for (int e0 : g.out_edges(v)) {
      if (used[static_cast<std::size_t>(e0)]) continue;
      EdgePath arc;
      arc.origin = v;
      int e = e0;
      while (true) {
        used[static_cast<std::size_t>(e)] = 1;
        used[static_cast<std::size_t>(Graph::bar(e))] = 1;
        arc.edges.push_back(e);
        int w = g.terminus(e);
        if (is_nat[static_cast<std::size_t>(w)]) break;
        // valence-2 interior: continue along the unique other direction
        int next = -1;
        for (int f : g.out_edges(w))
          if (f != Graph::bar(e)) next = f;
        e = next;
      }
      arcs.push_back(std::move(arc));
    }
  }
  return arcs;
}

Graph subdivide_edge(const Graph& g, int pair) {
  if (pair < 0 || pair >= g.edge_pair_count()) throw std::invalid_argument("edge id out of range");
  std::vector<std::pair<int, int>> edges;
  for (int k = 0; k < g.edge_pair_count(); ++k)
    if (k != pair) edges.push_back({g.origin(2 * k), g.terminus(2 * k)});
  int mid = g.vertex_count();
  edges.push_back({g.origin(2 * pair), mid});
  edges.push_back({mid, g.terminus(2 * pair)});
  return Graph(g.vertex_count() + 1, std::move(edges));
}

}  // namespace stallings
