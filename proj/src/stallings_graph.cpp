#include "stallings/stallings_graph.hpp"

#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

namespace stallings {

namespace {

// Mutable labeled graph under vertex identification, used only while folding.
struct FoldWorkspace {
  std::vector<int> vparent;
  std::vector<char> edge_dead;              // per unoriented edge
  std::vector<std::pair<int, int>> ends;    // per unoriented edge: (origin of 2k, origin of 2k+1)
  std::vector<Letter> label;                // per unoriented edge: label of orientation 2k

  int find(int v) {
    while (vparent[static_cast<std::size_t>(v)] != v) {
      vparent[static_cast<std::size_t>(v)] =
          vparent[static_cast<std::size_t>(vparent[static_cast<std::size_t>(v)])];
      v = vparent[static_cast<std::size_t>(v)];
    }
    return v;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) vparent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
};

}  // namespace

StallingsGraph StallingsGraph::from_labeled(const Graph& g, int base, std::vector<Letter> labels,
                                            int rank, std::optional<std::uint64_t> fold_seed) {
  if (labels.size() != static_cast<std::size_t>(g.oriented_edge_count()))
    throw std::invalid_argument("need one label per oriented edge");
  for (int e = 0; e < g.oriented_edge_count(); e += 2) {
    Letter x = labels[static_cast<std::size_t>(e)];
    if (x == 0 || x > rank || x < -rank) throw std::invalid_argument("label out of range");
    if (labels[static_cast<std::size_t>(e + 1)] != -x)
      throw std::invalid_argument("labels must satisfy label(bar e) = -label(e)");
  }

  FoldWorkspace ws;
  ws.vparent.resize(static_cast<std::size_t>(g.vertex_count()));
  std::iota(ws.vparent.begin(), ws.vparent.end(), 0);
  ws.edge_dead.assign(static_cast<std::size_t>(g.edge_pair_count()), 0);
  for (int k = 0; k < g.edge_pair_count(); ++k) {
    ws.ends.push_back({g.origin(2 * k), g.terminus(2 * k)});
    ws.label.push_back(labels[static_cast<std::size_t>(2 * k)]);
  }

  std::optional<std::mt19937_64> rng;
  if (fold_seed) rng.emplace(*fold_seed);

  // Far endpoint of live edge k when it leaves root v with label lab, or -1.
  auto far_endpoint = [&ws](int k, int v, Letter lab) {
    int a = ws.find(ws.ends[static_cast<std::size_t>(k)].first);
    int b = ws.find(ws.ends[static_cast<std::size_t>(k)].second);
    Letter x = ws.label[static_cast<std::size_t>(k)];
    if (a == v && x == lab) return b;
    if (b == v && x == -lab) return a;
    return -1;
  };

  // Fold to an immersion: while some vertex has two outgoing edges with the
  // same label, identify their far endpoints and merge the edges.
  while (true) {
    struct Clash {
      int vertex;
      Letter lab;
      int keep, merge;  // unoriented edges
    };
    std::map<std::pair<int, Letter>, int> seen;  // (root, outgoing label) -> edge
    std::vector<Clash> clashes;
    for (int k = 0; k < static_cast<int>(ws.ends.size()); ++k) {
      if (ws.edge_dead[static_cast<std::size_t>(k)]) continue;
      int a = ws.find(ws.ends[static_cast<std::size_t>(k)].first);
      int b = ws.find(ws.ends[static_cast<std::size_t>(k)].second);
      Letter x = ws.label[static_cast<std::size_t>(k)];
      for (auto [v, lab] : {std::pair<int, Letter>{a, x}, std::pair<int, Letter>{b, -x}}) {
        auto [it, inserted] = seen.insert({{v, lab}, k});
        if (!inserted && it->second != k) clashes.push_back({v, lab, it->second, k});
      }
    }
    if (clashes.empty()) break;
    std::size_t pick = 0;
    if (rng) pick = std::uniform_int_distribution<std::size_t>(0, clashes.size() - 1)(*rng);
    const Clash& c = clashes[pick];
    int far1 = far_endpoint(c.keep, c.vertex, c.lab);
    int far2 = far_endpoint(c.merge, c.vertex, c.lab);
    if (far1 == -1 || far2 == -1) throw std::logic_error("internal: clash vanished");
    ws.unite(far1, far2);
    ws.edge_dead[static_cast<std::size_t>(c.merge)] = 1;
  }

  // Trim non-base valence-1 vertices (edges, never the base).
  int base_root = ws.find(base);
  bool trimmed = true;
  while (trimmed) {
    trimmed = false;
    std::map<int, std::vector<int>> incident;  // root -> unoriented edges
    for (int k = 0; k < static_cast<int>(ws.ends.size()); ++k) {
      if (ws.edge_dead[static_cast<std::size_t>(k)]) continue;
      int a = ws.find(ws.ends[static_cast<std::size_t>(k)].first);
      int b = ws.find(ws.ends[static_cast<std::size_t>(k)].second);
      incident[a].push_back(k);
      if (b != a) incident[b].push_back(k);
    }
    for (auto& [v, ks] : incident) {
      if (v == base_root || ks.size() != 1) continue;
      int k = ks.front();
      int a = ws.find(ws.ends[static_cast<std::size_t>(k)].first);
      int b = ws.find(ws.ends[static_cast<std::size_t>(k)].second);
      if (a == b) continue;  // a loop is never trimmed
      ws.edge_dead[static_cast<std::size_t>(k)] = 1;
      trimmed = true;
    }
  }

  // Rebuild dense.
  std::vector<int> vmap(static_cast<std::size_t>(g.vertex_count()), -1);
  std::vector<char> vertex_live(static_cast<std::size_t>(g.vertex_count()), 0);
  vertex_live[static_cast<std::size_t>(base_root)] = 1;
  for (int k = 0; k < static_cast<int>(ws.ends.size()); ++k) {
    if (ws.edge_dead[static_cast<std::size_t>(k)]) continue;
    vertex_live[static_cast<std::size_t>(ws.find(ws.ends[static_cast<std::size_t>(k)].first))] = 1;
    vertex_live[static_cast<std::size_t>(ws.find(ws.ends[static_cast<std::size_t>(k)].second))] = 1;
  }
  int nverts = 0;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (ws.find(v) == v && vertex_live[static_cast<std::size_t>(v)])
      vmap[static_cast<std::size_t>(v)] = nverts++;
  std::vector<std::pair<int, int>> edges;
  std::vector<Letter> new_labels;
  for (int k = 0; k < static_cast<int>(ws.ends.size()); ++k) {
    if (ws.edge_dead[static_cast<std::size_t>(k)]) continue;
    edges.push_back({vmap[static_cast<std::size_t>(ws.find(ws.ends[static_cast<std::size_t>(k)].first))],
                     vmap[static_cast<std::size_t>(ws.find(ws.ends[static_cast<std::size_t>(k)].second))]});
    new_labels.push_back(ws.label[static_cast<std::size_t>(k)]);
    new_labels.push_back(-ws.label[static_cast<std::size_t>(k)]);
  }

  StallingsGraph s;
  s.graph_ = Graph(nverts, std::move(edges));
  s.base_ = vmap[static_cast<std::size_t>(base_root)];
  s.ambient_rank_ = rank;
  s.labels_ = std::move(new_labels);
  return s;
}

StallingsGraph StallingsGraph::build(const std::vector<Word>& words, int rank,
                                     std::optional<std::uint64_t> fold_seed) {
  int vcount = 1;
  std::vector<std::pair<int, int>> edges;
  std::vector<Letter> labels;
  for (const Word& w : words) {
    if (w.rank() > rank) throw std::invalid_argument("word rank exceeds ambient rank");
    for (Letter x : w.letters())
      if (x > rank || x < -rank) throw std::invalid_argument("letter out of range");
    if (w.empty()) continue;
    int prev = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      int next = (i + 1 == w.size()) ? 0 : vcount++;
      Letter x = w.at(i);
      if (x > 0) {
        edges.push_back({prev, next});
        labels.push_back(x);
        labels.push_back(-x);
      } else {
        edges.push_back({next, prev});
        labels.push_back(-x);
        labels.push_back(x);
      }
      prev = next;
    }
  }
  return from_labeled(Graph(vcount, std::move(edges)), 0, std::move(labels), rank, fold_seed);
}

int StallingsGraph::subgroup_rank() const { return rank(graph_); }

// Outgoing edge at v with the given label, or -1 (immersion: at most one).
static int out_with_label(const StallingsGraph& s, int v, Letter x) {
  for (int e : s.graph().out_edges(v))
    if (s.label(e) == x) return e;
  return -1;
}

std::vector<Word> StallingsGraph::subgroup_basis() const {
  if (graph_.vertex_count() == 0) return {};
  std::vector<int> tree = maximal_tree(graph_);
  std::vector<char> in_tree(static_cast<std::size_t>(graph_.edge_pair_count()), 0);
  for (int k : tree) in_tree[static_cast<std::size_t>(k)] = 1;
  std::vector<EdgePath> loops = spanning_basis(graph_, base_, tree);
  std::vector<Word> basis;
  for (const EdgePath& loop : loops) {
    std::vector<Letter> letters;
    for (int e : loop.edges) letters.push_back(label(e));
    basis.push_back(Word::reduce(letters, ambient_rank_));
  }
  return basis;
}

bool StallingsGraph::contains(const Word& w) const {
  if (graph_.vertex_count() == 0) return w.empty();
  int at = base_;
  for (Letter x : w.letters()) {
    int e = out_with_label(*this, at, x);
    if (e == -1) return false;
    at = graph_.terminus(e);
  }
  return at == base_;
}

std::variant<int, StallingsGraph::Infinite> StallingsGraph::index() const {
  if (graph_.vertex_count() == 0) return Infinite{};
  for (int v = 0; v < graph_.vertex_count(); ++v)
    if (graph_.valence(v) != 2 * ambient_rank_) return Infinite{};
  return graph_.vertex_count();
}

std::vector<int> StallingsGraph::canonical_form() const {
  std::vector<int> order(static_cast<std::size_t>(graph_.vertex_count()), -1);
  std::vector<int> queue;
  if (graph_.vertex_count() > 0) {
    order[static_cast<std::size_t>(base_)] = 0;
    queue.push_back(base_);
  }
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    int v = queue[qi];
    for (int x = 1; x <= ambient_rank_; ++x)
      for (Letter lab : {static_cast<Letter>(x), static_cast<Letter>(-x)}) {
        int e = out_with_label(*this, v, lab);
        if (e == -1) continue;
        int w = graph_.terminus(e);
        if (order[static_cast<std::size_t>(w)] == -1) {
          order[static_cast<std::size_t>(w)] = static_cast<int>(queue.size());
          queue.push_back(w);
        }
      }
  }
  std::vector<int> enc;
  enc.push_back(graph_.vertex_count());
  for (int v : queue)
    for (int x = 1; x <= ambient_rank_; ++x)
      for (Letter lab : {static_cast<Letter>(x), static_cast<Letter>(-x)}) {
        int e = out_with_label(*this, v, lab);
        enc.push_back(e == -1 ? -1 : order[static_cast<std::size_t>(graph_.terminus(e))]);
      }
  return enc;
}

bool is_surjective(const std::vector<Word>& words, int rank) {
  StallingsGraph s = StallingsGraph::build(words, rank);
  auto idx = s.index();
  if (auto* d = std::get_if<int>(&idx)) return *d == 1;
  return false;
}

}  // namespace stallings
