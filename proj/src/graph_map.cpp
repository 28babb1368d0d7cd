#include "stallings/graph_map.hpp"

#include <numeric>
#include <stdexcept>

namespace stallings {

void validate(const GraphMap& f) {
  if (f.vertex_map.size() != static_cast<std::size_t>(f.domain.vertex_count()))
    throw std::invalid_argument("vertex_map size mismatch");
  if (f.edge_map.size() != static_cast<std::size_t>(f.domain.oriented_edge_count()))
    throw std::invalid_argument("edge_map size mismatch");
  for (int v = 0; v < f.domain.vertex_count(); ++v) {
    int w = f.vertex_map[static_cast<std::size_t>(v)];
    if (w < 0 || w >= f.codomain.vertex_count())
      throw std::invalid_argument("vertex image out of range");
  }
  for (int e = 0; e < f.domain.oriented_edge_count(); ++e) {
    EdgePath p{f.vertex_map[static_cast<std::size_t>(f.domain.origin(e))], f.image(e)};
    if (!is_composable(f.codomain, p)) throw std::invalid_argument("image path not composable");
    if (path_terminus(f.codomain, p) != f.vertex_map[static_cast<std::size_t>(f.domain.terminus(e))])
      throw std::invalid_argument("image path endpoint mismatch");
    if (!is_tight(f.codomain, p)) throw std::invalid_argument("image path not tight");
    std::vector<int> rev(f.image(e).rbegin(), f.image(e).rend());
    for (int& x : rev) x = Graph::bar(x);
    if (rev != f.image(Graph::bar(e)))
      throw std::invalid_argument("edge_map not involution-compatible");
  }
}

GraphMap from_endomorphism(const Endomorphism& e) {
  GraphMap f;
  f.domain = Graph::rose(e.rank());
  f.codomain = Graph::rose(e.rank());
  f.vertex_map = {0};
  f.edge_map.assign(static_cast<std::size_t>(2 * e.rank()), {});
  for (int i = 1; i <= e.rank(); ++i) {
    std::vector<int> path, rev;
    for (Letter x : e.image(i).letters())
      path.push_back(x > 0 ? 2 * (x - 1) : 2 * (-x - 1) + 1);
    rev.assign(path.rbegin(), path.rend());
    for (int& x : rev) x = Graph::bar(x);
    f.edge_map[static_cast<std::size_t>(2 * (i - 1))] = std::move(path);
    f.edge_map[static_cast<std::size_t>(2 * (i - 1) + 1)] = std::move(rev);
  }
  return f;
}

GraphMap tighten_map(const GraphMap& f) {
  GraphMap g = f;
  for (int e = 0; e < g.domain.oriented_edge_count(); e += 2) {
    EdgePath p{g.vertex_map[static_cast<std::size_t>(g.domain.origin(e))], g.image(e)};
    EdgePath t = tighten_path(g.codomain, p);
    EdgePath r = reverse_path(g.codomain, t);
    g.edge_map[static_cast<std::size_t>(e)] = t.edges;
    g.edge_map[static_cast<std::size_t>(e + 1)] = r.edges;
  }
  return g;
}

bool is_degenerate_at(const GraphMap& f, int v) {
  for (int e : f.domain.out_edges(v))
    if (f.image(e).empty()) return true;
  return false;
}

int derivative(const GraphMap& f, int d) {
  const auto& p = f.image(d);
  if (p.empty()) throw std::invalid_argument("derivative of a collapsed edge");
  return p.front();
}

GatePartition gates(const GraphMap& f, int v) {
  if (is_degenerate_at(f, v)) throw std::invalid_argument("map is degenerate at vertex");
  GatePartition gp;
  gp.vertex = v;
  for (int d : f.domain.out_edges(v)) {
    int der = derivative(f, d);
    bool placed = false;
    for (auto& block : gp.blocks)
      if (derivative(f, block.front()) == der) {
        block.push_back(d);
        placed = true;
        break;
      }
    if (!placed) gp.blocks.push_back({d});
  }
  return gp;
}

bool is_foldable(const GraphMap& f) {
  for (int e = 0; e < f.domain.oriented_edge_count(); ++e)
    if (f.image(e).empty()) return false;
  for (int v = 0; v < f.domain.vertex_count(); ++v)
    if (gates(f, v).blocks.size() < 2) return false;
  return true;
}

namespace {

// Working state for the collapse stage: an edgelet map under vertex merging.
struct EdgeletState {
  std::vector<int> vparent;      // union-find over domain vertices
  std::vector<char> edge_dead;   // per unoriented edgelet
  std::vector<int> edge_image;   // per oriented edgelet, single codomain edge
  const Graph* domain;
  const Graph* codomain;
  std::vector<int> vertex_image;  // per union-find root (indexed by vertex)

  int find(int v) {
    while (vparent[static_cast<std::size_t>(v)] != v) {
      vparent[static_cast<std::size_t>(v)] =
          vparent[static_cast<std::size_t>(vparent[static_cast<std::size_t>(v)])];
      v = vparent[static_cast<std::size_t>(v)];
    }
    return v;
  }
};

}  // namespace

std::variant<FoldableResult, PiOneTrivial> make_foldable(const GraphMap& input) {
  GraphMap f = tighten_map(input);
  if (!f.domain.connected()) throw std::invalid_argument("make_foldable needs a connected domain");

  // Edgelet subdivision: one domain edgelet per letter of each image path.
  std::vector<std::pair<int, int>> sub_edges;
  std::vector<int> sub_img;                  // per oriented edgelet
  std::vector<std::vector<int>> sub_of_edge  // original oriented edge -> its edgelets
      (static_cast<std::size_t>(f.domain.oriented_edge_count()));
  int nv = f.domain.vertex_count();
  std::vector<int> sub_vertex_image(static_cast<std::size_t>(nv), -1);
  for (int v = 0; v < f.domain.vertex_count(); ++v)
    sub_vertex_image[static_cast<std::size_t>(v)] = f.vertex_map[static_cast<std::size_t>(v)];
  for (int e = 0; e < f.domain.oriented_edge_count(); e += 2) {
    const auto& img = f.image(e);
    int from = f.domain.origin(e), to = f.domain.terminus(e);
    std::vector<int> lets;
    if (img.empty()) {
      // degenerate edge: keep as one edgelet with no image
      sub_edges.push_back({from, to});
      sub_img.push_back(-1);
      sub_img.push_back(-1);
      lets = {static_cast<int>(sub_edges.size()) * 2 - 2};
    } else {
      int prev = from;
      for (std::size_t i = 0; i < img.size(); ++i) {
        int next = (i + 1 == img.size()) ? to : nv++;
        if (next >= static_cast<int>(sub_vertex_image.size()))
          sub_vertex_image.push_back(f.codomain.terminus(img[i]));
        sub_edges.push_back({prev, next});
        sub_img.push_back(img[i]);
        sub_img.push_back(Graph::bar(img[i]));
        lets.push_back(static_cast<int>(sub_edges.size()) * 2 - 2);
        prev = next;
      }
    }
    sub_of_edge[static_cast<std::size_t>(e)] = lets;
    std::vector<int> rev(lets.rbegin(), lets.rend());
    for (int& x : rev) x = Graph::bar(x);
    sub_of_edge[static_cast<std::size_t>(Graph::bar(e))] = std::move(rev);
  }
  Graph subdivided(nv, sub_edges);

  GraphMap subdivision;
  subdivision.domain = f.domain;
  subdivision.codomain = subdivided;
  subdivision.vertex_map.resize(static_cast<std::size_t>(f.domain.vertex_count()));
  std::iota(subdivision.vertex_map.begin(), subdivision.vertex_map.end(), 0);
  subdivision.edge_map = sub_of_edge;

  // Collapse stage. First kill constant edgelets, then one-gate vertices.
  EdgeletState st;
  st.domain = &subdivided;
  st.codomain = &f.codomain;
  st.vparent.resize(static_cast<std::size_t>(subdivided.vertex_count()));
  std::iota(st.vparent.begin(), st.vparent.end(), 0);
  st.edge_dead.assign(static_cast<std::size_t>(subdivided.edge_pair_count()), 0);
  st.edge_image = sub_img;
  st.vertex_image = sub_vertex_image;

  auto collapse_edgelet = [&](int pair) {
    st.edge_dead[static_cast<std::size_t>(pair)] = 1;
    int a = st.find(subdivided.origin(2 * pair));
    int b = st.find(subdivided.terminus(2 * pair));
    if (a != b) st.vparent[static_cast<std::size_t>(a)] = b;
  };

  for (int k = 0; k < subdivided.edge_pair_count(); ++k)
    if (st.edge_image[static_cast<std::size_t>(2 * k)] == -1) collapse_edgelet(k);

  // Live oriented edgelets out of each merged vertex class.
  auto live_out = [&](int root) {
    std::vector<int> out;
    for (int v = 0; v < subdivided.vertex_count(); ++v) {
      if (st.find(v) != root) continue;
      for (int e : subdivided.out_edges(v))
        if (!st.edge_dead[static_cast<std::size_t>(Graph::pair_of(e))]) out.push_back(e);
    }
    return out;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < subdivided.vertex_count() && !changed; ++v) {
      if (st.find(v) != v) continue;
      std::vector<int> out = live_out(v);
      if (out.empty()) continue;
      int der = st.edge_image[static_cast<std::size_t>(out.front())];
      bool one_gate = true;
      for (int e : out) one_gate = one_gate && st.edge_image[static_cast<std::size_t>(e)] == der;
      if (!one_gate) continue;
      // One gate: the star maps onto a single codomain edge; collapse it onto
      // its far endpoint.
      for (int e : out) collapse_edgelet(Graph::pair_of(e));
      st.vertex_image[static_cast<std::size_t>(st.find(v))] = f.codomain.terminus(der);
      changed = true;
    }
  }

  int live = 0;
  for (int k = 0; k < subdivided.edge_pair_count(); ++k)
    if (!st.edge_dead[static_cast<std::size_t>(k)]) ++live;
  if (live == 0) return PiOneTrivial{};

  // Rebuild the collapsed graph with dense ids.
  std::vector<int> new_vertex(static_cast<std::size_t>(subdivided.vertex_count()), -1);
  int nverts = 0;
  for (int v = 0; v < subdivided.vertex_count(); ++v) {
    int r = st.find(v);
    if (new_vertex[static_cast<std::size_t>(r)] == -1) new_vertex[static_cast<std::size_t>(r)] = nverts++;
    new_vertex[static_cast<std::size_t>(v)] = new_vertex[static_cast<std::size_t>(r)];
  }
  std::vector<std::pair<int, int>> new_edges;
  std::vector<int> new_edge_of_pair(static_cast<std::size_t>(subdivided.edge_pair_count()), -1);
  std::vector<int> new_img;
  for (int k = 0; k < subdivided.edge_pair_count(); ++k) {
    if (st.edge_dead[static_cast<std::size_t>(k)]) continue;
    new_edge_of_pair[static_cast<std::size_t>(k)] = static_cast<int>(new_edges.size());
    new_edges.push_back({new_vertex[static_cast<std::size_t>(subdivided.origin(2 * k))],
                         new_vertex[static_cast<std::size_t>(subdivided.terminus(2 * k))]});
    new_img.push_back(st.edge_image[static_cast<std::size_t>(2 * k)]);
    new_img.push_back(st.edge_image[static_cast<std::size_t>(2 * k + 1)]);
  }
  Graph collapsed(nverts, new_edges);

  FoldableResult r;
  r.subdivision = std::move(subdivision);

  r.collapse.domain = subdivided;
  r.collapse.codomain = collapsed;
  r.collapse.vertex_map = new_vertex;
  r.collapse.edge_map.assign(static_cast<std::size_t>(subdivided.oriented_edge_count()), {});
  for (int e = 0; e < subdivided.oriented_edge_count(); ++e) {
    int k = Graph::pair_of(e);
    if (st.edge_dead[static_cast<std::size_t>(k)]) continue;
    int ne = 2 * new_edge_of_pair[static_cast<std::size_t>(k)] + (e & 1);
    r.collapse.edge_map[static_cast<std::size_t>(e)] = {ne};
  }

  r.foldable.domain = collapsed;
  r.foldable.codomain = f.codomain;
  r.foldable.vertex_map.assign(static_cast<std::size_t>(nverts), -1);
  for (int v = 0; v < subdivided.vertex_count(); ++v)
    if (st.find(v) == v)
      r.foldable.vertex_map[static_cast<std::size_t>(new_vertex[static_cast<std::size_t>(v)])] =
          st.vertex_image[static_cast<std::size_t>(v)];
  r.foldable.edge_map.assign(static_cast<std::size_t>(collapsed.oriented_edge_count()), {});
  for (int e = 0; e < collapsed.oriented_edge_count(); ++e)
    r.foldable.edge_map[static_cast<std::size_t>(e)] = {new_img[static_cast<std::size_t>(e)]};

  // Forest collapse exactly when rank is preserved.
  r.collapsed_forest = rank(collapsed) == rank(subdivided);
  return r;
}

}  // namespace stallings
