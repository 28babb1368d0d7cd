#include "stallings/lengths.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace stallings {

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(std::stoll(s));
    long long num = std::stoll(s.substr(0, slash));
    long long den = std::stoll(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse rational: " + s);
  }
}

std::string rational_str(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

LengthStructure::LengthStructure(Graph graph, std::vector<Rational> lengths)
    : graph_(std::move(graph)), lengths_(std::move(lengths)) {
  if (!graph_.connected()) throw std::invalid_argument("length structure needs a connected graph");
  for (int v = 0; v < graph_.vertex_count(); ++v)
    if (graph_.valence(v) < 2) throw std::invalid_argument("length structure needs a core graph");
  if (lengths_.size() != static_cast<std::size_t>(graph_.edge_pair_count()))
    throw std::invalid_argument("need one length per edge");
  Rational sum(0);
  for (const Rational& x : lengths_) {
    if (x < Rational(0)) throw std::invalid_argument("lengths must be nonnegative");
    sum += x;
  }
  if (sum != Rational(1)) throw std::invalid_argument("lengths must sum to 1");
  std::vector<int> zeros;
  for (int k = 0; k < graph_.edge_pair_count(); ++k)
    if (lengths_[static_cast<std::size_t>(k)] == Rational(0)) zeros.push_back(k);
  // forest check: collapse_forest throws exactly when the set has a circuit
  collapse_forest(graph_, zeros);
}

LengthStructure LengthStructure::barycenter(const Graph& g) {
  int m = g.edge_pair_count();
  if (m == 0) throw std::invalid_argument("graph has no edges");
  return LengthStructure(g, std::vector<Rational>(static_cast<std::size_t>(m), Rational(1, m)));
}

Rational circuit_length(const EdgePath& c, const LengthStructure& l) {
  if (c.edges.empty()) throw std::invalid_argument("circuit must be nonempty");
  if (!is_composable(l.graph(), c) || !is_cyclically_tight(l.graph(), c) ||
      path_terminus(l.graph(), c) != c.origin)
    throw std::invalid_argument("not a circuit");
  Rational sum(0);
  for (int e : c.edges) sum += l.length(Graph::pair_of(e));
  return sum;
}

namespace {

// Canonical representative of an embedded circle: the lexicographically least
// oriented edge-id sequence over both directions and all rotations.
std::vector<int> canonical_circle(const Graph&, std::vector<int> edges) {
  std::vector<int> best;
  for (int dir = 0; dir < 2; ++dir) {
    for (std::size_t r = 0; r < edges.size(); ++r) {
      std::vector<int> cand;
      for (std::size_t i = 0; i < edges.size(); ++i)
        cand.push_back(edges[(r + i) % edges.size()]);
      if (best.empty() || cand < best) best = cand;
    }
    // reverse direction
    std::vector<int> rev(edges.rbegin(), edges.rend());
    for (int& e : rev) e = Graph::bar(e);
    edges = rev;
  }
  return best;
}

}  // namespace

std::vector<EdgePath> embedded_circles(const Graph& g) {
  std::set<std::vector<int>> found;
  // DFS over paths with pairwise distinct interior vertices, closing at start.
  for (int s = 0; s < g.vertex_count(); ++s) {
    std::vector<int> stack_edges;
    std::vector<char> on_path(static_cast<std::size_t>(g.vertex_count()), 0);
    on_path[static_cast<std::size_t>(s)] = 1;
    auto dfs = [&](auto&& self, int at) -> void {
      for (int e : g.out_edges(at)) {
        if (!stack_edges.empty() && Graph::pair_of(e) == Graph::pair_of(stack_edges.back()))
          continue;  // no immediate backtrack and no double use of an edge
        int w = g.terminus(e);
        if (w == s) {
          std::vector<int> cyc = stack_edges;
          cyc.push_back(e);
          // embedded circle needs distinct unoriented edges (2-cycles allowed)
          std::set<int> pairs;
          bool ok = true;
          for (int x : cyc) ok = ok && pairs.insert(Graph::pair_of(x)).second;
          if (ok) found.insert(canonical_circle(g, cyc));
          continue;
        }
        if (on_path[static_cast<std::size_t>(w)]) continue;  // would repeat a vertex
        if (w < s) continue;  // only enumerate circles whose least vertex is s
        on_path[static_cast<std::size_t>(w)] = 1;
        stack_edges.push_back(e);
        self(self, w);
        stack_edges.pop_back();
        on_path[static_cast<std::size_t>(w)] = 0;
      }
    };
    dfs(dfs, s);
  }
  std::vector<EdgePath> circles;
  for (const auto& cyc : found) {
    EdgePath p;
    p.origin = g.origin(cyc.front());
    p.edges = cyc;
    circles.push_back(std::move(p));
  }
  return circles;
}

Systole systole(const LengthStructure& l) {
  std::vector<EdgePath> circles = embedded_circles(l.graph());
  if (circles.empty()) throw std::invalid_argument("graph has no circuit");
  std::optional<Systole> best;
  for (const EdgePath& c : circles) {
    Rational len = circuit_length(c, l);
    if (!best || len < best->value || (len == best->value && c.edges < best->witness.edges))
      best = Systole{len, c};
  }
  return *best;
}

std::pair<Graph, LengthStructure> face_collapse(const LengthStructure& l) {
  std::vector<int> zeros;
  for (int k = 0; k < l.graph().edge_pair_count(); ++k)
    if (l.length(k) == Rational(0)) zeros.push_back(k);
  if (zeros.empty()) throw std::invalid_argument("face_collapse needs a nonempty zero-set");
  auto [g, cm] = collapse_forest(l.graph(), zeros);
  std::vector<Rational> lens(static_cast<std::size_t>(g.edge_pair_count()), Rational(0));
  for (int k = 0; k < l.graph().edge_pair_count(); ++k)
    if (cm.edge_map[static_cast<std::size_t>(k)] != -1)
      lens[static_cast<std::size_t>(cm.edge_map[static_cast<std::size_t>(k)])] = l.length(k);
  return {g, LengthStructure(g, std::move(lens))};
}

}  // namespace stallings
