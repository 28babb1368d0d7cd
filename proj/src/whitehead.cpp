#include "stallings/whitehead.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace stallings {

std::optional<CyclicWord> CircuitFamily::circuit_class(int i) const {
  const EdgePath& c = circuits[static_cast<std::size_t>(i)];
  Word w(ambient_rank);
  for (int e : c.edges) w = multiply(w, edge_words[static_cast<std::size_t>(e)]);
  return cyclic_reduce(w).core;
}

CircuitFamily circuits_from_words(const std::vector<Word>& ws, int rank) {
  if (rank < 1) throw std::invalid_argument("rank must be positive");
  CircuitFamily f;
  f.graph = Graph::rose(rank);
  f.ambient_rank = rank;
  for (int i = 1; i <= rank; ++i) {
    f.edge_words.push_back(Word::reduce(std::vector<Letter>{i}, rank));
    f.edge_words.push_back(Word::reduce(std::vector<Letter>{-i}, rank));
  }
  std::set<CyclicWord> seen;
  for (const Word& raw : ws) {
    if (raw.rank() > rank) throw std::invalid_argument("word rank exceeds ambient rank");
    Word w = Word::reduce(raw.letters(), rank);
    auto cr = cyclic_reduce(w);
    if (!cr.core) throw std::invalid_argument("identity word has no circuit");
    if (!seen.insert(*cr.core).second)
      throw std::invalid_argument("duplicate conjugacy class in circuit family");
    EdgePath p;
    p.origin = 0;
    for (Letter x : cr.core->letters())
      p.edges.push_back(x > 0 ? 2 * (x - 1) : 2 * (-x - 1) + 1);
    f.circuits.push_back(std::move(p));
  }
  return f;
}

bool is_jointly_primitive(const CircuitFamily& f) {
  std::vector<CyclicWord> classes;
  for (int i = 0; i < static_cast<int>(f.circuits.size()); ++i) {
    auto c = f.circuit_class(i);
    if (!c) return false;
    if (extract_root(*c).power != 1) return false;
    classes.push_back(*c);
  }
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (std::size_t j = i + 1; j < classes.size(); ++j)
      if (classes[i] == classes[j] || classes[i] == classes[j].inverse()) return false;
  return true;
}

WhiteheadGraph whitehead_graph(const CircuitFamily& f, int v) {
  WhiteheadGraph w;
  w.vertex = v;
  std::set<int> dirs;
  std::set<Turn> turns;
  for (const EdgePath& c : f.circuits) {
    const auto& es = c.edges;
    const std::size_t n = es.size();
    for (std::size_t i = 0; i < n; ++i) {
      int x = es[i], y = es[(i + 1) % n];
      if (f.graph.origin(x) == v) dirs.insert(x);
      if (f.graph.terminus(x) == v) dirs.insert(Graph::bar(x));
      if (f.graph.terminus(x) == v) turns.insert(Turn(Graph::bar(x), y));
    }
  }
  w.dirs.assign(dirs.begin(), dirs.end());
  w.turns.assign(turns.begin(), turns.end());
  return w;
}

std::vector<WhiteheadGraph> whitehead_graphs(const CircuitFamily& f) {
  std::vector<WhiteheadGraph> ws;
  for (int v = 0; v < f.graph.vertex_count(); ++v) ws.push_back(whitehead_graph(f, v));
  return ws;
}

namespace {

// Union-find over the dirs of one Whitehead graph, by position in w.dirs.
struct Components {
  std::vector<int> parent;
  explicit Components(std::size_t n) : parent(n) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
  }
  int find(int i) {
    while (parent[static_cast<std::size_t>(i)] != i) {
      parent[static_cast<std::size_t>(i)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(i)])];
      i = parent[static_cast<std::size_t>(i)];
    }
    return i;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<std::size_t>(a)] = b;
  }
};

int dir_pos(const WhiteheadGraph& w, int d) {
  auto it = std::lower_bound(w.dirs.begin(), w.dirs.end(), d);
  return static_cast<int>(it - w.dirs.begin());
}

}  // namespace

bool near_visibility(const CircuitFamily& f) {
  for (int v = 0; v < f.graph.vertex_count(); ++v) {
    WhiteheadGraph w = whitehead_graph(f, v);
    // every component a single turn <=> each direction has exactly one
    // incident turn and no two turns share an endpoint
    std::map<int, int> incident;
    for (const Turn& t : w.turns) {
      ++incident[t.a];
      ++incident[t.b];
    }
    for (int d : w.dirs)
      if (incident[d] != 1) return false;
  }
  return true;
}

std::optional<Cut> find_cut(const CircuitFamily& f) {
  for (int v = 0; v < f.graph.vertex_count(); ++v) {
    WhiteheadGraph w = whitehead_graph(f, v);
    if (w.dirs.empty()) continue;
    Components comp(w.dirs.size());
    for (const Turn& t : w.turns) comp.unite(dir_pos(w, t.a), dir_pos(w, t.b));
    for (int d : w.dirs) {  // ascending id order
      int dp = dir_pos(w, d);
      // components of (component of d) minus d
      Components sub(w.dirs.size());
      for (const Turn& t : w.turns) {
        if (t.a == d || t.b == d) continue;
        sub.unite(dir_pos(w, t.a), dir_pos(w, t.b));
      }
      std::set<int> pieces;
      for (std::size_t i = 0; i < w.dirs.size(); ++i) {
        int di = w.dirs[i];
        if (di == d) continue;
        if (comp.find(static_cast<int>(i)) != comp.find(dp)) continue;
        pieces.insert(sub.find(static_cast<int>(i)));
      }
      if (pieces.size() < 2) continue;

      // d is a cut vertex; build the halves of the augmented graph.
      Cut cut;
      cut.vertex = v;
      cut.direction = d;
      int first_piece = -1;  // piece containing the smallest direction id != d
      for (std::size_t i = 0; i < w.dirs.size(); ++i) {
        int di = w.dirs[i];
        if (di == d || comp.find(static_cast<int>(i)) != comp.find(dp)) continue;
        first_piece = sub.find(static_cast<int>(i));
        break;
      }
      auto in_first = [&](int dir) {
        if (dir == d) return false;
        int p = dir_pos(w, dir);
        if (static_cast<std::size_t>(p) >= w.dirs.size() || w.dirs[static_cast<std::size_t>(p)] != dir)
          return false;  // augmented isolated direction
        return comp.find(p) == comp.find(dp) && sub.find(p) == first_piece;
      };
      cut.side1_dirs.push_back(d);
      cut.side2_dirs.push_back(d);
      for (int dir : f.graph.out_edges(v)) {
        if (dir == d) continue;
        (in_first(dir) ? cut.side1_dirs : cut.side2_dirs).push_back(dir);
      }
      for (const Turn& t : w.turns) {
        bool fa = in_first(t.a) || t.a == d;
        bool fb = in_first(t.b) || t.b == d;
        (fa && fb ? cut.side1_turns : cut.side2_turns).push_back(t);
      }
      std::sort(cut.side1_dirs.begin(), cut.side1_dirs.end());
      std::sort(cut.side2_dirs.begin(), cut.side2_dirs.end());
      return cut;
    }
  }
  return std::nullopt;
}

bool WeightSequence::operator<(const WeightSequence& o) const {
  std::size_t n = std::max(counts.size(), o.counts.size());
  for (std::size_t k = n; k-- > 0;) {
    long long a = k < counts.size() ? counts[k] : 0;
    long long b = k < o.counts.size() ? o.counts[k] : 0;
    if (a != b) return a < b;
  }
  return false;
}

WeightSequence weight_sequence(const CircuitFamily& f) {
  for (int v = 0; v < f.graph.vertex_count(); ++v)
    if (f.graph.valence(v) < 3)
      throw std::invalid_argument("weight sequence needs the natural cell structure");
  std::vector<long long> crossings(static_cast<std::size_t>(f.graph.edge_pair_count()), 0);
  for (const EdgePath& c : f.circuits)
    for (int e : c.edges) ++crossings[static_cast<std::size_t>(Graph::pair_of(e))];
  WeightSequence ws;
  for (long long k : crossings) {
    if (static_cast<std::size_t>(k) >= ws.counts.size()) ws.counts.resize(static_cast<std::size_t>(k) + 1, 0);
    ++ws.counts[static_cast<std::size_t>(k)];
  }
  return ws;
}

namespace {

// Absorbs valence-2 vertices, keeping circuits and edge words in step.
void pass_to_natural_structure(CircuitFamily& f) {
  while (true) {
    int w = -1;
    for (int v = 0; v < f.graph.vertex_count(); ++v)
      if (f.graph.valence(v) == 2) w = v;
    if (w == -1) return;
    const auto& out = f.graph.out_edges(w);
    int p = out[0], q = out[1];
    if (p == Graph::bar(q))
      throw std::logic_error("isolated circle component while absorbing");
    int A = Graph::bar(p);  // arrives at w
    int B = q;              // leaves w
    // Rebuild with pairs of A and B merged into one new edge C = A then B.
    int ka = Graph::pair_of(A), kb = Graph::pair_of(B);
    std::vector<int> pair_map(static_cast<std::size_t>(f.graph.edge_pair_count()), -1);
    std::vector<std::pair<int, int>> edges;
    std::vector<Word> words;
    for (int k = 0; k < f.graph.edge_pair_count(); ++k) {
      if (k == ka || k == kb) continue;
      pair_map[static_cast<std::size_t>(k)] = static_cast<int>(edges.size());
      edges.push_back({f.graph.origin(2 * k), f.graph.terminus(2 * k)});
      words.push_back(f.edge_words[static_cast<std::size_t>(2 * k)]);
    }
    int kc = static_cast<int>(edges.size());
    edges.push_back({f.graph.origin(A), f.graph.terminus(B)});
    words.push_back(multiply(f.edge_words[static_cast<std::size_t>(A)],
                             f.edge_words[static_cast<std::size_t>(B)]));
    // Delete w from the vertex set.
    std::vector<int> vmap(static_cast<std::size_t>(f.graph.vertex_count()), -1);
    int nv = 0;
    for (int v = 0; v < f.graph.vertex_count(); ++v)
      if (v != w) vmap[static_cast<std::size_t>(v)] = nv++;
    for (auto& [a, b] : edges) {
      a = vmap[static_cast<std::size_t>(a)];
      b = vmap[static_cast<std::size_t>(b)];
    }
    auto map_edge = [&](int e) {
      int k = pair_map[static_cast<std::size_t>(Graph::pair_of(e))];
      return 2 * k + (e & 1);
    };
    int C = 2 * kc;
    std::vector<EdgePath> new_circuits;
    for (const EdgePath& c : f.circuits) {
      // Rotate so the read never starts mid-arc: every B is preceded by A and
      // every bar(A) by bar(B), so a rotation onto A or bar(B) (or any edge
      // away from the arc) always exists.
      std::vector<int> es = c.edges;
      const std::size_t n = es.size();
      std::size_t start = 0;
      for (std::size_t i = 0; i < n; ++i) {
        int e = es[i];
        if (e == A || e == Graph::bar(B) ||
            (e != B && e != Graph::bar(A))) {
          start = i;
          break;
        }
      }
      std::rotate(es.begin(), es.begin() + static_cast<std::ptrdiff_t>(start), es.end());
      EdgePath nc;
      for (std::size_t i = 0; i < n; ++i) {
        int e = es[i];
        if (e == A) {
          nc.edges.push_back(C);  // A is always followed by B
          ++i;
          if (i >= n || es[i] != B)
            throw std::logic_error("circuit does not traverse absorbed arc cleanly");
        } else if (e == Graph::bar(B)) {
          nc.edges.push_back(Graph::bar(C));  // bar(B) is always followed by bar(A)
          ++i;
          if (i >= n || es[i] != Graph::bar(A))
            throw std::logic_error("circuit does not traverse absorbed arc cleanly");
        } else {
          nc.edges.push_back(map_edge(e));
        }
      }
      new_circuits.push_back(std::move(nc));
    }
    Graph g(nv, edges);
    std::vector<Word> new_words;
    for (std::size_t k = 0; k < words.size(); ++k) {
      new_words.push_back(words[k]);
      new_words.push_back(invert(words[k]));
    }
    f.graph = std::move(g);
    f.edge_words = std::move(new_words);
    f.circuits = std::move(new_circuits);
    for (EdgePath& c : f.circuits) {
      if (!c.edges.empty()) c.origin = f.graph.origin(c.edges.front());
      if (!is_composable(f.graph, c) || !is_cyclically_tight(f.graph, c))
        throw std::logic_error("absorption broke a circuit");
    }
  }
}

}  // namespace

SplitResult split(const CircuitFamily& f, const Cut& c) {
  const Graph& g = f.graph;
  int v = c.vertex;
  int d = c.direction;
  if (g.origin(d) != v) throw std::invalid_argument("cut direction not at cut vertex");
  if (g.valence(v) < 3) throw std::invalid_argument("cut vertex must be natural");
  std::set<int> t1(c.side1_dirs.begin(), c.side1_dirs.end());
  std::set<int> t2(c.side2_dirs.begin(), c.side2_dirs.end());
  if (!t1.count(d) || !t2.count(d)) throw std::invalid_argument("halves must share the cut direction");
  for (int dir : g.out_edges(v))
    if (static_cast<int>(t1.count(dir)) + static_cast<int>(t2.count(dir)) !=
        (dir == d ? 2 : 1))
      throw std::invalid_argument("halves must partition the directions at the vertex");
  if (t1.size() < 2 || t2.size() < 2) throw std::invalid_argument("each half needs a direction besides the cut");

  int E = Graph::bar(d);   // terminal direction of E is d
  int u = g.origin(E);
  bool loop_case = u == v;  // Case 2 of the construction
  int dE = E;               // initial direction of E, a direction at v iff loop_case
  if (loop_case && !t1.count(dE)) {
    std::swap(t1, t2);  // index so that dE lies in T_1
  }

  // Vertices: v becomes v1 (same slot); v2 is appended.
  int v1 = v, v2 = g.vertex_count();
  auto reattach = [&](int dir, int vertex_of_dir) {
    if (vertex_of_dir != v) return vertex_of_dir;
    return t1.count(dir) ? v1 : v2;
  };
  const int pe = Graph::pair_of(E);
  const int orE = E & 1;  // orientation index of E within its pair
  std::vector<std::pair<int, int>> edges;
  for (int k = 0; k < g.edge_pair_count(); ++k) {
    int fwd = 2 * k;
    int from = g.origin(fwd), to = g.terminus(fwd);
    if (k == pe) {
      // replaced below; keep slot for E1
      edges.push_back({0, 0});
      continue;
    }
    edges.push_back({reattach(fwd, from), reattach(Graph::bar(fwd), to)});
  }
  // E1 occupies E's pair slot; E2 is appended. Oriented (2k+orE) runs as E does.
  auto set_pair = [&](int k, int from_of_E_orientation, int to_of_E_orientation) {
    if (orE == 0)
      edges[static_cast<std::size_t>(k)] = {from_of_E_orientation, to_of_E_orientation};
    else
      edges[static_cast<std::size_t>(k)] = {to_of_E_orientation, from_of_E_orientation};
  };
  int pe2 = static_cast<int>(edges.size());
  edges.push_back({0, 0});
  if (!loop_case) {
    set_pair(pe, u, v1);
    set_pair(pe2, u, v2);
  } else {
    set_pair(pe, v1, v1);
    set_pair(pe2, v1, v2);
  }
  Graph h(g.vertex_count() + 1, edges);

  int E1 = 2 * pe + orE, E2 = 2 * pe2 + orE;

  // Transport the circuits: the lift of each crossing of E is decided by the
  // side of the adjacent direction at v.
  std::vector<EdgePath> lifted;
  for (const EdgePath& circ : f.circuits) {
    const auto& es = circ.edges;
    const std::size_t n = es.size();
    EdgePath nc;
    for (std::size_t i = 0; i < n; ++i) {
      int e = es[i];
      if (Graph::pair_of(e) != pe) {
        nc.edges.push_back(e);
      } else if (e == E) {
        int next = es[(i + 1) % n];  // a direction at v, never d itself
        nc.edges.push_back(t1.count(next) ? E1 : E2);
      } else {  // e == bar(E)
        int prev = es[(i + n - 1) % n];
        int back = Graph::bar(prev);  // direction at v
        nc.edges.push_back(t1.count(back) ? Graph::bar(E1) : Graph::bar(E2));
      }
    }
    if (!nc.edges.empty()) nc.origin = h.origin(nc.edges.front());
    if (!is_composable(h, nc) || !is_cyclically_tight(h, nc))
      throw std::logic_error("split transport produced a non-immersed circuit");
    lifted.push_back(std::move(nc));
  }

  SplitResult r;
  r.pre_absorb_graph = h;
  r.pre_absorb_circuits = lifted;
  r.fold.codomain_vertices = g.vertex_count();
  r.fold.vertex_map.resize(static_cast<std::size_t>(h.vertex_count()));
  for (int w = 0; w < h.vertex_count(); ++w) r.fold.vertex_map[static_cast<std::size_t>(w)] = w == v2 ? v : w;
  r.fold.edge_map.resize(static_cast<std::size_t>(h.oriented_edge_count()));
  for (int e = 0; e < h.oriented_edge_count(); ++e) {
    int k = Graph::pair_of(e);
    r.fold.edge_map[static_cast<std::size_t>(e)] = k == pe2 ? 2 * pe + (e & 1) : e;
  }

  r.family.graph = std::move(h);
  r.family.ambient_rank = f.ambient_rank;
  r.family.circuits = std::move(lifted);
  r.family.edge_words = f.edge_words;
  r.family.edge_words.push_back(f.edge_words[static_cast<std::size_t>(2 * pe)]);
  r.family.edge_words.push_back(f.edge_words[static_cast<std::size_t>(2 * pe + 1)]);
  pass_to_natural_structure(r.family);
  return r;
}

std::vector<WhiteheadGraph> induced_whitehead_maps(const std::vector<WhiteheadGraph>& before,
                                                   const FoldMapData& fold) {
  std::vector<std::set<int>> dirs(static_cast<std::size_t>(fold.codomain_vertices));
  std::vector<std::set<Turn>> turns(static_cast<std::size_t>(fold.codomain_vertices));
  for (const WhiteheadGraph& w : before) {
    int pv = fold.vertex_map[static_cast<std::size_t>(w.vertex)];
    for (int dir : w.dirs)
      dirs[static_cast<std::size_t>(pv)].insert(fold.edge_map[static_cast<std::size_t>(dir)]);
    for (const Turn& t : w.turns) {
      int ia = fold.edge_map[static_cast<std::size_t>(t.a)];
      int ib = fold.edge_map[static_cast<std::size_t>(t.b)];
      if (ia == ib)
        throw std::invalid_argument("family takes the illegal turn of the fold");
      turns[static_cast<std::size_t>(pv)].insert(Turn(ia, ib));
    }
  }
  std::vector<WhiteheadGraph> out(static_cast<std::size_t>(fold.codomain_vertices));
  for (int v = 0; v < fold.codomain_vertices; ++v) {
    out[static_cast<std::size_t>(v)].vertex = v;
    out[static_cast<std::size_t>(v)].dirs.assign(dirs[static_cast<std::size_t>(v)].begin(),
                                                 dirs[static_cast<std::size_t>(v)].end());
    out[static_cast<std::size_t>(v)].turns.assign(turns[static_cast<std::size_t>(v)].begin(),
                                                  turns[static_cast<std::size_t>(v)].end());
  }
  return out;
}

PartialBasisResult is_partial_free_basis(const std::vector<Word>& ws, int rank) {
  PartialBasisResult r;
  if (rank < 1) throw std::invalid_argument("rank must be positive");
  std::vector<CyclicWord> classes;
  for (const Word& raw : ws) {
    if (raw.rank() > rank) throw std::invalid_argument("word rank exceeds ambient rank");
    auto cr = cyclic_reduce(Word::reduce(raw.letters(), rank));
    if (!cr.core) throw std::invalid_argument("identity word is not a basis candidate");
    classes.push_back(*cr.core);
  }
  // repeated classes can never embed in a free basis
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (std::size_t j = i + 1; j < classes.size(); ++j)
      if (classes[i] == classes[j]) return r;

  if (rank == 1) {
    r.verdict = ws.size() <= 1;
    for (const CyclicWord& c : classes) r.verdict = r.verdict && c.size() == 1;
    return r;
  }

  CircuitFamily f = circuits_from_words(ws, rank);
  if (!is_jointly_primitive(f)) return r;

  int iteration = 0;
  while (true) {
    if (near_visibility(f)) {
      r.verdict = true;
      return r;
    }
    auto cut = find_cut(f);
    if (!cut) return r;
    WeightSequence before = weight_sequence(f);
    SplitResult sr = split(f, *cut);
    WeightSequence after = weight_sequence(sr.family);
    if (!(after < before))
      throw std::logic_error("weight sequence failed to decrease at a split");
    SplitTraceStep step;
    step.iteration = iteration++;
    step.vertex = cut->vertex;
    step.cut_direction = cut->direction;
    step.before = before;
    step.after = after;
    step.snapshot = sr.family.graph;
    r.trace.push_back(std::move(step));
    f = std::move(sr.family);
  }
}

}  // namespace stallings
