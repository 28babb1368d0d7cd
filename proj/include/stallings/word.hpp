#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace stallings {

// A letter of F<s_1,...,s_n>: positive i is the generator s_i, negative i its
// formal inverse. Zero is never a letter.
using Letter = int;

inline Letter inverse(Letter x) { return -x; }

// Ordering used for canonical rotations of cyclic words: a < A < b < B < ...
// i.e. compare by generator index first, positive orientation before negative.
inline int letter_key(Letter x) { return 2 * (x > 0 ? x : -x) + (x < 0 ? 1 : 0); }
bool letter_less(Letter a, Letter b);

std::string letter_to_string(Letter x);

// A reduced word over a rank-n alphabet. The empty word is the identity.
class Word {
 public:
  Word() : rank_(1) {}
  explicit Word(int rank) : rank_(rank) {}

  // Reduces an arbitrary letter sequence. Throws std::invalid_argument on a
  // zero letter or a letter out of range.
  static Word reduce(std::span<const Letter> letters, int rank);
  static Word reduce(const std::vector<Letter>& letters, int rank) {
    return reduce(std::span<const Letter>(letters), rank);
  }

  // Text grammar: letter := [a-z] | [A-Z]; whitespace ignored; optional caret
  // form "a^-2" expands to "AA". Rank defaults to the highest letter used.
  static Word parse(const std::string& text, std::optional<int> rank = std::nullopt);

  int rank() const { return rank_; }
  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter at(std::size_t i) const { return letters_[i]; }

  std::string str() const;

  friend bool operator==(const Word&, const Word&) = default;

 private:
  int rank_;
  std::vector<Letter> letters_;  // reduced, invariant maintained by factories
};

Word multiply(const Word& u, const Word& v);
Word invert(const Word& w);

// A cyclically reduced nonempty word stored in its canonical rotation (the
// lexicographically minimal one under letter_key order). Represents the
// conjugacy class of its underlying element.
class CyclicWord {
 public:
  // Requires `letters` cyclically reduced and nonempty; rotates to canonical.
  static CyclicWord from_cyclically_reduced(std::vector<Letter> letters, int rank);

  int rank() const { return rank_; }
  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  std::string str() const;

  Word word() const;
  CyclicWord inverse() const;

  friend bool operator==(const CyclicWord&, const CyclicWord&) = default;
  bool operator<(const CyclicWord& o) const;

 private:
  CyclicWord() : rank_(1) {}
  int rank_;
  std::vector<Letter> letters_;
};

struct CyclicReduction {
  Word conjugator;                // g with w = g h g^-1, no cancellation
  Word aligned_core;              // h, the rotation in place inside w
  std::optional<CyclicWord> core; // h's conjugacy class; empty iff w = identity
};

CyclicReduction cyclic_reduce(const Word& w);

bool are_conjugate(const Word& u, const Word& v);

struct Root {
  CyclicWord root;
  int power;  // maximal, root is root-free
};

Root extract_root(const CyclicWord& c);

// Abelianization m(w): coordinate i is the signed count of occurrences of s_i.
struct AbelianVector {
  std::vector<long long> coords;

  friend bool operator==(const AbelianVector&, const AbelianVector&) = default;
};

AbelianVector abelianize(const Word& w);
AbelianVector abelian_add(const AbelianVector& a, const AbelianVector& b);

// True iff v is nonzero and gcd of its entries is 1 (gcd of all zeros is 0).
bool abelian_basis_element(const AbelianVector& v);

// True iff the vectors extend to a Z-basis of Z^n: Smith normal form has full
// column rank with every elementary divisor equal to 1.
bool abelian_partial_basis(const std::vector<AbelianVector>& vs);

}  // namespace stallings
