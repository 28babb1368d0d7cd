#include <doctest.h>

#include <numeric>
#include <set>

#include "helpers.hpp"
#include "stallings/graph.hpp"

using namespace stallings;

static Graph theta() { return Graph(2, {{0, 1}, {0, 1}, {0, 1}}); }
static Graph barbell() { return Graph(2, {{0, 0}, {1, 1}, {0, 1}}); }

// Random connected graph on `n` vertices with `extra` extra edges.
static Graph random_connected(std::mt19937_64& g, int n, int extra) {
  std::vector<std::pair<int, int>> edges;
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (int v = 1; v < n; ++v) edges.push_back({pick(g) % v, v});
  for (int i = 0; i < extra; ++i) edges.push_back({pick(g), pick(g)});
  return Graph(n, std::move(edges));
}

TEST_CASE("rose and bar involution") {
  Graph r1 = Graph::rose(1);
  CHECK(r1.vertex_count() == 1);
  CHECK(r1.oriented_edge_count() == 2);
  Graph r2 = Graph::rose(2);
  CHECK(r2.oriented_edge_count() == 4);
  for (int n = 1; n <= 10; ++n) CHECK(rank(Graph::rose(n)) == n);
  for (int e = 0; e < r2.oriented_edge_count(); ++e) {
    CHECK(Graph::bar(Graph::bar(e)) == e);
    CHECK(r2.origin(Graph::bar(e)) == r2.terminus(e));
  }
  CHECK_THROWS_AS(Graph::rose(0), std::invalid_argument);
}

TEST_CASE("rank") {
  CHECK(rank(Graph(1, {{0, 0}})) == 1);  // circle
  CHECK(rank(theta()) == 2);
  CHECK(rank(barbell()) == 2);
  CHECK_THROWS_AS(rank(Graph(2, {})), std::invalid_argument);  // disconnected
}

TEST_CASE("valence counts loops twice") {
  Graph b = barbell();
  CHECK(b.valence(0) == 3);
  CHECK(b.valence(1) == 3);
}

TEST_CASE("Euler-Poincare index formula") {
  auto g = testutil::rng(20);
  for (int trial = 0; trial < 50; ++trial) {
    Graph G = random_connected(g, 5, 4);
    double chi = 0;
    for (int v = 0; v < G.vertex_count(); ++v) chi += 1.0 - G.valence(v) / 2.0;
    CHECK(chi == doctest::Approx(G.vertex_count() - G.edge_pair_count()));
  }
}

TEST_CASE("maximal_tree") {
  CHECK(maximal_tree(Graph::rose(3)).empty());
  CHECK(maximal_tree(theta()).size() == 1);
  auto g = testutil::rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    Graph G = random_connected(g, 6, 5);
    auto tree = maximal_tree(G);
    CHECK(static_cast<int>(tree.size()) == G.vertex_count() - 1);
    CHECK(G.edge_pair_count() - static_cast<int>(tree.size()) == rank(G));
  }
}

TEST_CASE("spanning_basis") {
  Graph r2 = Graph::rose(2);
  auto loops = spanning_basis(r2, 0, {});
  REQUIRE(loops.size() == 2);
  CHECK(loops[0].edges == std::vector<int>{0});
  CHECK(loops[1].edges == std::vector<int>{2});

  Graph th = theta();
  auto tloops = spanning_basis(th, 0, {2});
  REQUIRE(tloops.size() == 2);
  for (const auto& l : tloops) {
    CHECK(l.edges.size() == 2);
    CHECK(l.origin == 0);
    CHECK(path_terminus(th, l) == 0);
    CHECK(is_tight(th, l));
  }

  auto g = testutil::rng(22);
  for (int trial = 0; trial < 30; ++trial) {
    Graph G = random_connected(g, 5, 4);
    auto basis = spanning_basis(G, 0, maximal_tree(G));
    CHECK(static_cast<int>(basis.size()) == rank(G));
  }
  CHECK_THROWS_AS(spanning_basis(r2, 7, {}), std::invalid_argument);
}

TEST_CASE("collapse_forest") {
  auto [g1, cm1] = collapse_forest(theta(), {0});
  CHECK(g1.vertex_count() == 1);
  CHECK(g1.edge_pair_count() == 2);
  CHECK(rank(g1) == 2);

  auto [g2, cm2] = collapse_forest(theta(), {});
  CHECK(g2.vertex_count() == 2);
  CHECK(g2.edge_pair_count() == 3);

  CHECK_THROWS_AS(collapse_forest(theta(), {0, 1}), std::invalid_argument);  // circuit

  auto g = testutil::rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    Graph G = random_connected(g, 6, 4);
    auto tree = maximal_tree(G);
    auto [q, cm] = collapse_forest(G, tree);
    CHECK(rank(q) == rank(G));
    CHECK(q.vertex_count() == 1);

    // rank is preserved for arbitrary subforests, not just spanning trees
    std::vector<int> forest;
    for (int k : tree)
      if (g() % 2 == 0) forest.push_back(k);
    auto [qf, cmf] = collapse_forest(G, forest);
    CHECK(rank(qf) == rank(G));
  }
}

TEST_CASE("core") {
  // circle with an attached segment
  Graph g(3, {{0, 0}, {0, 1}, {1, 2}});
  Graph c = core(g);
  CHECK(c.vertex_count() == 1);
  CHECK(c.edge_pair_count() == 1);
  CHECK(rank(c) == 1);

  Graph th = theta();
  Graph tc = core(th);
  CHECK(tc.vertex_count() == 2);
  CHECK(tc.edge_pair_count() == 3);

  auto rng = testutil::rng(24);
  for (int trial = 0; trial < 30; ++trial) {
    Graph G = random_connected(rng, 6, 4);
    if (rank(G) < 1) continue;
    CHECK(rank(core(G)) == rank(G));
  }
  CHECK_THROWS_AS(core(Graph(2, {{0, 1}})), std::invalid_argument);  // tree
}

TEST_CASE("natural structure") {
  Graph r2 = Graph::rose(2);
  CHECK(natural_vertices(r2) == std::vector<int>{0});
  CHECK(natural_edges(r2).size() == 2);

  Graph th = theta();
  CHECK(natural_vertices(th).size() == 2);
  CHECK(natural_edges(th).size() == 3);

  // subdivision-invariance: extra valence-2 vertex on petal a
  Graph sub = subdivide_edge(r2, 0);
  CHECK(natural_vertices(sub).size() == 1);
  CHECK(natural_edges(sub).size() == 2);

  CHECK_THROWS_AS(natural_vertices(Graph(1, {{0, 0}})), std::invalid_argument);  // rank 1
}

TEST_CASE("tighten_path") {
  Graph r2 = Graph::rose(2);
  EdgePath p{0, {0, 1}};  // e . bar(e)
  EdgePath t = tighten_path(r2, p);
  CHECK(t.edges.empty());
  CHECK(t.origin == 0);

  EdgePath q{0, {0, 2, 3}};
  CHECK(tighten_path(r2, q).edges == std::vector<int>{0});

  EdgePath already{0, {0, 2}};
  CHECK(tighten_path(r2, already) == already);

  // result independent of cancellation order: compare against words reduction
  auto g = testutil::rng(25);
  for (int trial = 0; trial < 200; ++trial) {
    auto letters = testutil::random_letters(g, 2, 16);
    EdgePath raw{0, {}};
    for (Letter x : letters) raw.edges.push_back(x > 0 ? 2 * (x - 1) : 2 * (-x - 1) + 1);
    EdgePath tightened = tighten_path(r2, raw);
    Word reduced = Word::reduce(letters, 2);
    EdgePath expect{0, {}};
    for (Letter x : reduced.letters()) expect.edges.push_back(x > 0 ? 2 * (x - 1) : 2 * (-x - 1) + 1);
    CHECK(tightened == expect);
  }
}

TEST_CASE("connectivity equals edge-path reachability") {
  Graph conn(3, {{0, 1}, {1, 2}, {2, 0}});
  CHECK(conn.connected());
  Graph disc(4, {{0, 1}, {2, 3}});
  CHECK_FALSE(disc.connected());
}
