#pragma once

#include <string>
#include <vector>

#include "stallings/word.hpp"

namespace stallings {

// An endomorphism of F_n, recorded by the images of the generators. Images may
// be empty (degenerate maps are legal inputs to the fold machinery).
class Endomorphism {
 public:
  Endomorphism(int rank, std::vector<Word> images);

  static Endomorphism identity(int rank);

  // Parses comma-separated image words, e.g. "aabababaaba,aabaaba".
  static Endomorphism parse(const std::string& images, std::optional<int> rank = std::nullopt);

  int rank() const { return rank_; }
  const std::vector<Word>& images() const { return images_; }
  const Word& image(int i) const { return images_[static_cast<std::size_t>(i - 1)]; }

  friend bool operator==(const Endomorphism&, const Endomorphism&) = default;

 private:
  int rank_;
  std::vector<Word> images_;
};

Word apply_endomorphism(const Endomorphism& e, const Word& w);

// compose(e1, e2) = e1 after e2.
Endomorphism compose(const Endomorphism& e1, const Endomorphism& e2);

enum class NielsenKind {
  TransvectionRight,         // s_i -> s_i s_j
  TransvectionRightInverse,  // s_i -> s_i s_j^-1
  TransvectionLeft,          // s_i -> s_j s_i
  TransvectionLeftInverse,   // s_i -> s_j^-1 s_i
  Transposition,             // s_i <-> s_j
  Inversion,                 // s_i -> s_i^-1 (j ignored)
};

Endomorphism nielsen_generator(NielsenKind kind, int i, int j, int rank);

// Column j is abelianize(image of s_j); |det| = 1 is necessary for an
// automorphism.
std::vector<std::vector<long long>> abelianization_matrix(const Endomorphism& e);
long long abelianization_determinant(const Endomorphism& e);

}  // namespace stallings
