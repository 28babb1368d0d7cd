#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "stallings/graph.hpp"
#include "stallings/word.hpp"

namespace stallings {

// The folded, labeled immersion over rose(rank) canonically representing a
// finitely generated subgroup. Labels satisfy label(bar e) = -label(e); at
// each vertex no two outgoing edges carry the same label; every valence-1
// vertex equals the base.
class StallingsGraph {
 public:
  // Wedge of labeled loops at the base, folded to an immersion, then trimmed.
  // `fold_seed` randomizes the fold order (used by confluence tests); the
  // default folds deterministically.
  static StallingsGraph build(const std::vector<Word>& words, int rank,
                              std::optional<std::uint64_t> fold_seed = std::nullopt);

  // Adopts an existing labeled graph; folds/trims if necessary.
  static StallingsGraph from_labeled(const Graph& g, int base, std::vector<Letter> labels,
                                     int rank,
                                     std::optional<std::uint64_t> fold_seed = std::nullopt);

  const Graph& graph() const { return graph_; }
  int base() const { return base_; }
  int rank_of_ambient() const { return ambient_rank_; }
  Letter label(int e) const { return labels_[static_cast<std::size_t>(e)]; }

  int subgroup_rank() const;
  std::vector<Word> subgroup_basis() const;
  bool contains(const Word& w) const;

  struct Infinite {};
  std::variant<int, Infinite> index() const;  // Finite(d) | Infinite

  // Breadth-first relabeling from the base following label order; equal
  // encodings iff label-isomorphic based graphs.
  std::vector<int> canonical_form() const;

 private:
  StallingsGraph() = default;
  Graph graph_;
  int base_ = 0;
  int ambient_rank_ = 1;
  std::vector<Letter> labels_;  // per oriented edge
};

bool is_surjective(const std::vector<Word>& words, int rank);

}  // namespace stallings
