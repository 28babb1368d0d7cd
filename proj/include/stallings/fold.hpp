#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stallings/graph_map.hpp"

namespace stallings {

enum class FoldClass { Bigon, Partial, ImproperFull, ProperFull };

std::string fold_class_name(FoldClass c);

// A maximal first fold of a foldable edgelet map: two same-gate directions at
// `vertex` whose maximal folded initial segments are `seg_a`, `seg_b`
// (edgelet paths of equal length with identical image paths).
struct FoldEvent {
  int vertex;
  int dir_a, dir_b;            // oriented edgelets, distinct, one gate
  std::vector<int> seg_a, seg_b;
  FoldClass fold_class;

  int segment_length() const { return static_cast<int>(seg_a.size()); }
};

// None iff f is locally injective. Deterministic: vertices scanned in id
// order, direction pairs in id order. Requires a foldable edgelet map.
std::optional<FoldEvent> find_fold(const GraphMap& f);

struct FoldStep {
  GraphMap fold;       // g : G -> G', edgelets to edgelets, surjective
  GraphMap residual;   // f' : G' -> H with f = f' o g edgelet-exact
  FoldEvent event;
};

FoldStep apply_fold(const GraphMap& f, const FoldEvent& ev);

struct FoldFactorization {
  std::vector<Graph> graphs;      // G_0, ..., G_K
  std::vector<GraphMap> folds;    // g_1, ..., g_K
  std::vector<FoldEvent> events;
  GraphMap terminal;              // f^K : G_K -> H, locally injective

  int fold_count() const { return static_cast<int>(folds.size()); }
  bool has_bigon() const;
};

// Repeated maximal first folds until the residual is locally injective.
FoldFactorization fold_factorize(const GraphMap& foldable);

enum class TerminalClass { NotCoveringInfiniteIndex, Covering, Homeomorphism };

struct TerminalClassification {
  TerminalClass kind;
  int degree = 0;  // covering degree when kind == Covering (or 1 for Homeomorphism)
};

// Requires f locally injective between finite core graphs.
TerminalClassification classify_terminal(const GraphMap& f);

struct EndomorphismClassification {
  bool injective = false;
  bool surjective = false;
  bool automorphism = false;
  bool pi1_trivial = false;
};

EndomorphismClassification classify_endomorphism(const Endomorphism& e);

}  // namespace stallings
