#include "stallings/fold.hpp"

#include <numeric>
#include <stdexcept>

#include "stallings/stallings_graph.hpp"

namespace stallings {

std::string fold_class_name(FoldClass c) {
  switch (c) {
    case FoldClass::Bigon: return "bigon";
    case FoldClass::Partial: return "partial";
    case FoldClass::ImproperFull: return "improper-full";
    case FoldClass::ProperFull: return "proper-full";
  }
  return "?";
}

static void require_edgelet_map(const GraphMap& f) {
  for (int e = 0; e < f.domain.oriented_edge_count(); ++e)
    if (f.image(e).size() != 1)
      throw std::invalid_argument("fold machinery needs an edgelet map (run make_foldable)");
}

std::optional<FoldEvent> find_fold(const GraphMap& f) {
  require_edgelet_map(f);
  const Graph& g = f.domain;
  for (int v = 0; v < g.vertex_count(); ++v) {
    const auto& out = g.out_edges(v);
    for (std::size_t i = 0; i < out.size(); ++i)
      for (std::size_t j = i + 1; j < out.size(); ++j) {
        int da = out[i], db = out[j];
        if (da == db) continue;  // a loop lists both orientations; these differ
        if (derivative(f, da) != derivative(f, db)) continue;

        // Extend the folded initial segments maximally: through valence-2
        // interior points while the image edgelets keep agreeing, stopping
        // when the two ends meet (bigon) or reach a natural endpoint.
        FoldEvent ev;
        ev.vertex = v;
        ev.dir_a = da;
        ev.dir_b = db;
        ev.seg_a = {da};
        ev.seg_b = {db};
        while (true) {
          int xa = g.terminus(ev.seg_a.back());
          int xb = g.terminus(ev.seg_b.back());
          if (xa == xb) {
            ev.fold_class = FoldClass::Bigon;
            return ev;
          }
          if (g.valence(xa) != 2 || g.valence(xb) != 2) break;
          int na = -1, nb = -1;
          for (int e : g.out_edges(xa))
            if (e != Graph::bar(ev.seg_a.back())) na = e;
          for (int e : g.out_edges(xb))
            if (e != Graph::bar(ev.seg_b.back())) nb = e;
          if (derivative(f, na) != derivative(f, nb)) break;
          ev.seg_a.push_back(na);
          ev.seg_b.push_back(nb);
        }
        bool full_a = g.valence(g.terminus(ev.seg_a.back())) != 2;
        bool full_b = g.valence(g.terminus(ev.seg_b.back())) != 2;
        ev.fold_class = full_a && full_b ? FoldClass::ImproperFull
                        : (full_a || full_b) ? FoldClass::ProperFull
                                             : FoldClass::Partial;
        return ev;
      }
  }
  return std::nullopt;
}

FoldStep apply_fold(const GraphMap& f, const FoldEvent& ev) {
  require_edgelet_map(f);
  const Graph& g = f.domain;
  if (ev.seg_a.size() != ev.seg_b.size() || ev.seg_a.empty())
    throw std::invalid_argument("invalid fold event");
  for (std::size_t i = 0; i < ev.seg_a.size(); ++i)
    if (f.image(ev.seg_a[i]) != f.image(ev.seg_b[i]))
      throw std::invalid_argument("fold event segments have different images");

  // Identify the two segments edgelet by edgelet, orientation preserving.
  std::vector<int> vparent(static_cast<std::size_t>(g.vertex_count()));
  std::iota(vparent.begin(), vparent.end(), 0);
  auto vfind = [&](int v) {
    while (vparent[static_cast<std::size_t>(v)] != v) {
      vparent[static_cast<std::size_t>(v)] =
          vparent[static_cast<std::size_t>(vparent[static_cast<std::size_t>(v)])];
      v = vparent[static_cast<std::size_t>(v)];
    }
    return v;
  };
  std::vector<int> eparent(static_cast<std::size_t>(g.oriented_edge_count()));
  std::iota(eparent.begin(), eparent.end(), 0);
  auto efind = [&](int e) {
    while (eparent[static_cast<std::size_t>(e)] != e) {
      eparent[static_cast<std::size_t>(e)] =
          eparent[static_cast<std::size_t>(eparent[static_cast<std::size_t>(e)])];
      e = eparent[static_cast<std::size_t>(e)];
    }
    return e;
  };
  for (std::size_t i = 0; i < ev.seg_a.size(); ++i) {
    int a = ev.seg_a[i], b = ev.seg_b[i];
    eparent[static_cast<std::size_t>(efind(std::max(a, b)))] = efind(std::min(a, b));
    int ra = Graph::bar(a), rb = Graph::bar(b);
    eparent[static_cast<std::size_t>(efind(std::max(ra, rb)))] = efind(std::min(ra, rb));
    int ta = vfind(g.terminus(a)), tb = vfind(g.terminus(b));
    if (ta != tb) vparent[static_cast<std::size_t>(std::max(ta, tb))] = std::min(ta, tb);
  }

  // Dense relabeling, ascending in old ids for reproducibility.
  std::vector<int> new_vertex(static_cast<std::size_t>(g.vertex_count()), -1);
  int nverts = 0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    int r = vfind(v);
    if (new_vertex[static_cast<std::size_t>(r)] == -1) new_vertex[static_cast<std::size_t>(r)] = nverts++;
    new_vertex[static_cast<std::size_t>(v)] = new_vertex[static_cast<std::size_t>(r)];
  }
  std::vector<int> new_edge(static_cast<std::size_t>(g.oriented_edge_count()), -1);
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> res_edge_map;
  for (int e = 0; e < g.oriented_edge_count(); e += 2) {
    if (efind(e) != e) continue;  // merged into an earlier edgelet
    int ne = static_cast<int>(edges.size()) * 2;
    new_edge[static_cast<std::size_t>(e)] = ne;
    new_edge[static_cast<std::size_t>(Graph::bar(e))] = ne + 1;
    edges.push_back({new_vertex[static_cast<std::size_t>(g.origin(e))],
                     new_vertex[static_cast<std::size_t>(g.terminus(e))]});
    res_edge_map.push_back(f.image(e));
    res_edge_map.push_back(f.image(Graph::bar(e)));
  }
  for (int e = 0; e < g.oriented_edge_count(); ++e)
    if (new_edge[static_cast<std::size_t>(e)] == -1)
      new_edge[static_cast<std::size_t>(e)] = new_edge[static_cast<std::size_t>(efind(e))];
  Graph gq(nverts, edges);

  FoldStep step;
  step.event = ev;
  step.fold.domain = g;
  step.fold.codomain = gq;
  step.fold.vertex_map = new_vertex;
  step.fold.edge_map.resize(static_cast<std::size_t>(g.oriented_edge_count()));
  for (int e = 0; e < g.oriented_edge_count(); ++e)
    step.fold.edge_map[static_cast<std::size_t>(e)] = {new_edge[static_cast<std::size_t>(e)]};

  step.residual.domain = gq;
  step.residual.codomain = f.codomain;
  step.residual.vertex_map.assign(static_cast<std::size_t>(nverts), -1);
  for (int v = 0; v < g.vertex_count(); ++v)
    step.residual.vertex_map[static_cast<std::size_t>(new_vertex[static_cast<std::size_t>(v)])] =
        f.vertex_map[static_cast<std::size_t>(v)];
  step.residual.edge_map = std::move(res_edge_map);
  return step;
}

bool FoldFactorization::has_bigon() const {
  for (const auto& ev : events)
    if (ev.fold_class == FoldClass::Bigon) return true;
  return false;
}

FoldFactorization fold_factorize(const GraphMap& foldable) {
  require_edgelet_map(foldable);
  FoldFactorization fac;
  fac.graphs.push_back(foldable.domain);
  GraphMap cur = foldable;
  while (auto ev = find_fold(cur)) {
    FoldStep step = apply_fold(cur, *ev);
    fac.events.push_back(step.event);
    fac.folds.push_back(std::move(step.fold));
    fac.graphs.push_back(step.residual.domain);
    cur = std::move(step.residual);
  }
  fac.terminal = std::move(cur);
  return fac;
}

TerminalClassification classify_terminal(const GraphMap& f) {
  require_edgelet_map(f);
  if (find_fold(f)) throw std::invalid_argument("classify_terminal needs a locally injective map");
  for (int v = 0; v < f.domain.vertex_count(); ++v)
    if (f.domain.valence(v) < 2) throw std::invalid_argument("classify_terminal needs core graphs");

  bool locally_surjective = true;
  for (int v = 0; v < f.domain.vertex_count() && locally_surjective; ++v) {
    int w = f.vertex_map[static_cast<std::size_t>(v)];
    locally_surjective = f.domain.valence(v) == f.codomain.valence(w);
  }
  if (!locally_surjective) return {TerminalClass::NotCoveringInfiniteIndex, 0};

  int fiber = 0;
  for (int v = 0; v < f.domain.vertex_count(); ++v)
    if (f.vertex_map[static_cast<std::size_t>(v)] == 0) ++fiber;
  bool bijective = f.domain.vertex_count() == f.codomain.vertex_count() &&
                   f.domain.edge_pair_count() == f.codomain.edge_pair_count();
  if (bijective) return {TerminalClass::Homeomorphism, 1};
  return {TerminalClass::Covering, fiber};
}

EndomorphismClassification classify_endomorphism(const Endomorphism& e) {
  EndomorphismClassification c;
  std::vector<Word> image_words = e.images();
  c.surjective = is_surjective(image_words, e.rank());

  auto made = make_foldable(from_endomorphism(e));
  if (std::holds_alternative<PiOneTrivial>(made)) {
    c.pi1_trivial = true;
    return c;
  }
  const auto& fr = std::get<FoldableResult>(made);
  FoldFactorization fac = fold_factorize(fr.foldable);
  c.injective = fr.collapsed_forest && !fac.has_bigon();
  c.automorphism = c.injective && classify_terminal(fac.terminal).kind == TerminalClass::Homeomorphism;
  return c;
}

}  // namespace stallings
