#pragma once

#include <cstdlib>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "stallings/endomorphism.hpp"
#include "stallings/word.hpp"

namespace testutil {

// Every randomized test draws from a seed settable via STALLINGS_TEST_SEED.
inline std::uint64_t base_seed() {
  if (const char* s = std::getenv("STALLINGS_TEST_SEED")) return std::strtoull(s, nullptr, 10);
  return 20240817ull;
}

inline std::mt19937_64 rng(std::uint64_t salt = 0) { return std::mt19937_64(base_seed() ^ salt); }

inline std::vector<stallings::Letter> random_letters(std::mt19937_64& g, int rank, int len) {
  std::uniform_int_distribution<int> pick(1, 2 * rank);
  std::vector<stallings::Letter> out;
  for (int i = 0; i < len; ++i) {
    int x = pick(g);
    out.push_back(x <= rank ? x : -(x - rank));
  }
  return out;
}

inline stallings::Word random_word(std::mt19937_64& g, int rank, int len) {
  return stallings::Word::reduce(random_letters(g, rank, len), rank);
}

// Reduced word of exactly the requested length.
inline stallings::Word random_reduced_word(std::mt19937_64& g, int rank, int len) {
  std::vector<stallings::Letter> out;
  std::uniform_int_distribution<int> pick(1, 2 * rank);
  while (static_cast<int>(out.size()) < len) {
    int x = pick(g);
    stallings::Letter l = x <= rank ? x : -(x - rank);
    if (!out.empty() && out.back() == -l) continue;
    out.push_back(l);
  }
  return stallings::Word::reduce(out, rank);
}

// Eliminates cancelling pairs in random order; the independent oracle for
// cancellation-order invariance.
inline stallings::Word random_order_reduce(std::mt19937_64& g,
                                           std::vector<stallings::Letter> letters, int rank) {
  while (true) {
    std::vector<std::size_t> cancels;
    for (std::size_t i = 0; i + 1 < letters.size(); ++i)
      if (letters[i] == -letters[i + 1]) cancels.push_back(i);
    if (cancels.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, cancels.size() - 1);
    std::size_t at = cancels[pick(g)];
    letters.erase(letters.begin() + static_cast<std::ptrdiff_t>(at),
                  letters.begin() + static_cast<std::ptrdiff_t>(at) + 2);
  }
  return stallings::Word::reduce(letters, rank);
}

inline stallings::Endomorphism random_nielsen(std::mt19937_64& g, int rank) {
  using stallings::NielsenKind;
  std::uniform_int_distribution<int> kind_pick(0, 5);
  std::uniform_int_distribution<int> idx(1, rank);
  NielsenKind kind = static_cast<NielsenKind>(kind_pick(g));
  int i = idx(g), j = idx(g);
  while (j == i) j = idx(g);
  return stallings::nielsen_generator(kind, i, j, rank);
}

inline stallings::Endomorphism random_nielsen_composition(std::mt19937_64& g, int rank,
                                                          int steps) {
  stallings::Endomorphism e = stallings::Endomorphism::identity(rank);
  for (int s = 0; s < steps; ++s) e = stallings::compose(random_nielsen(g, rank), e);
  return e;
}

}  // namespace testutil
