#pragma once

#include <optional>
#include <vector>

#include "stallings/graph.hpp"
#include "stallings/word.hpp"

namespace stallings {

// A family of immersed circuits in a core graph kept in its natural cell
// structure. `edge_words` carries, per oriented edge, its image in F_n under
// the composed fold chain back to the base rose, so the represented conjugacy
// classes can always be read off without re-tracking markings.
struct CircuitFamily {
  Graph graph;
  int ambient_rank = 2;
  std::vector<EdgePath> circuits;      // cyclically tight closed paths
  std::vector<Word> edge_words;        // per oriented edge

  // Conjugacy class of circuit i as a cyclic word in F_n.
  std::optional<CyclicWord> circuit_class(int i) const;
};

// No two circuits equivalent up to rotation; identity words rejected.
CircuitFamily circuits_from_words(const std::vector<Word>& ws, int rank);

bool is_jointly_primitive(const CircuitFamily& f);

// An unordered pair of distinct directions at one vertex; normalized a < b.
struct Turn {
  int a, b;
  Turn(int x, int y) : a(x < y ? x : y), b(x < y ? y : x) {}
  friend bool operator==(const Turn&, const Turn&) = default;
  friend auto operator<=>(const Turn& l, const Turn& r) {
    return std::pair{l.a, l.b} <=> std::pair{r.a, r.b};
  }
};

struct WhiteheadGraph {
  int vertex = 0;
  std::vector<int> dirs;    // directions crossed by the family, ascending
  std::vector<Turn> turns;  // taken turns, sorted, unique
};

WhiteheadGraph whitehead_graph(const CircuitFamily& f, int v);
std::vector<WhiteheadGraph> whitehead_graphs(const CircuitFamily& f);

// Every component of every Whitehead graph is a single turn.
bool near_visibility(const CircuitFamily& f);

// A two-half decomposition of the augmented Whitehead graph at a vertex,
// meeting exactly in the cut direction; halves carry their direction sets
// (T_1, T_2 of the split construction) and their turns.
struct Cut {
  int vertex = 0;
  int direction = 0;
  std::vector<int> side1_dirs, side2_dirs;    // each contains `direction`
  std::vector<Turn> side1_turns, side2_turns;
};

// First vertex in id order, first cut vertex in direction-id order; halves:
// the component side containing the smallest direction id versus the rest,
// isolated augmented directions going to the second half.
std::optional<Cut> find_cut(const CircuitFamily& f);

// Crossing-multiplicity counts over natural edges, compared in dictionary
// order on (..., w2, w1, w0).
struct WeightSequence {
  std::vector<long long> counts;  // counts[k] = number of edges crossed k times

  friend bool operator==(const WeightSequence&, const WeightSequence&) = default;
  bool operator<(const WeightSequence& o) const;
};

WeightSequence weight_sequence(const CircuitFamily& f);

// A simplicial surjection recording a fold H -> G (edges to single edges).
struct FoldMapData {
  std::vector<int> vertex_map;  // per H vertex
  std::vector<int> edge_map;    // per oriented H edge
  int codomain_vertices = 0;
};

struct SplitResult {
  CircuitFamily family;      // transported family in the split graph, natural structure
  Graph pre_absorb_graph;    // the split graph with its pullback cell structure
  std::vector<EdgePath> pre_absorb_circuits;
  FoldMapData fold;          // fold map pre_absorb_graph -> input graph
};

// Inverse-fold surgery guided by a cut; the transported family avoids the
// fold's illegal turn and its weight sequence strictly decreases.
SplitResult split(const CircuitFamily& f, const Cut& c);

// Pushes per-vertex Whitehead graphs forward through a fold:
// W_{p'} = union over p in preimage of p' of the derivative images.
// Throws if the family takes the fold's illegal turn (two directions of one
// turn with equal image).
std::vector<WhiteheadGraph> induced_whitehead_maps(const std::vector<WhiteheadGraph>& before,
                                                   const FoldMapData& fold);

struct SplitTraceStep {
  int iteration = 0;
  int vertex = 0;
  int cut_direction = 0;
  WeightSequence before, after;
  Graph snapshot;  // graph after the split, natural structure
};

struct PartialBasisResult {
  bool verdict = false;
  std::vector<SplitTraceStep> trace;
};

// Whitehead's algorithm for conjugacy classes: joint primitivity, then the
// near-visibility / cut-vertex / split loop.
PartialBasisResult is_partial_free_basis(const std::vector<Word>& ws, int rank);

}  // namespace stallings
