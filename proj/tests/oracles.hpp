#pragma once

// Independent oracles used only by tests. The Whitehead-automorphism BFS
// decides primitivity of a conjugacy class by searching for a length-1 class
// through moves that never increase cyclic length; peak reduction guarantees
// completeness of that restriction.

#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <vector>

#include "stallings/endomorphism.hpp"
#include "stallings/word.hpp"

namespace testutil {

using stallings::CyclicWord;
using stallings::Endomorphism;
using stallings::Letter;
using stallings::Word;

// All Whitehead automorphisms of the second kind for rank n: a multiplier
// m in {s_1^±1, ..., s_n^±1}, every other generator independently sent to one
// of x, xm, m^-1 x, m^-1 x m (not all fixed), plus the letter permutations as
// the first kind.
inline std::vector<Endomorphism> whitehead_automorphisms(int rank) {
  std::vector<Endomorphism> out;
  std::vector<Letter> multipliers;
  for (int i = 1; i <= rank; ++i) {
    multipliers.push_back(i);
    multipliers.push_back(-i);
  }
  for (Letter m : multipliers) {
    int mi = m > 0 ? m : -m;
    std::vector<int> others;
    for (int i = 1; i <= rank; ++i)
      if (i != mi) others.push_back(i);
    int combos = 1;
    for (std::size_t k = 0; k < others.size(); ++k) combos *= 4;
    for (int mask = 1; mask < combos; ++mask) {
      std::vector<Word> images;
      int rest = mask;
      std::size_t oi = 0;
      bool ok = true;
      for (int i = 1; i <= rank && ok; ++i) {
        if (i == mi) {
          images.push_back(Word::reduce(std::vector<Letter>{i}, rank));
          continue;
        }
        int choice = (oi < others.size()) ? (rest % 4) : 0;
        rest /= 4;
        ++oi;
        std::vector<Letter> w;
        switch (choice) {
          case 0: w = {i}; break;
          case 1: w = {i, m}; break;
          case 2: w = {-m, i}; break;
          case 3: w = {-m, i, m}; break;
        }
        images.push_back(Word::reduce(w, rank));
      }
      if (ok) out.push_back(Endomorphism(rank, images));
    }
  }
  // first kind: permutations and inversions are generated by the elementary
  // transpositions and inversions; include those directly
  for (int i = 1; i <= rank; ++i) {
    out.push_back(stallings::nielsen_generator(stallings::NielsenKind::Inversion, i, 0, rank));
    for (int j = i + 1; j <= rank; ++j)
      out.push_back(
          stallings::nielsen_generator(stallings::NielsenKind::Transposition, i, j, rank));
  }
  return out;
}

inline std::optional<CyclicWord> cyclic_class(const Word& w) {
  return stallings::cyclic_reduce(w).core;
}

// Forward closure of the length-1 classes under Whitehead moves bounded by
// max_len: exactly the primitive classes of cyclic length <= max_len.
inline std::set<CyclicWord> primitive_classes_up_to(int rank, int max_len) {
  std::vector<Endomorphism> autos = whitehead_automorphisms(rank);
  std::set<CyclicWord> seen;
  std::queue<CyclicWord> todo;
  for (int i = 1; i <= rank; ++i)
    for (Letter s : {static_cast<Letter>(i), static_cast<Letter>(-i)}) {
      CyclicWord c = CyclicWord::from_cyclically_reduced({s}, rank);
      if (seen.insert(c).second) todo.push(c);
    }
  while (!todo.empty()) {
    CyclicWord c = todo.front();
    todo.pop();
    for (const Endomorphism& e : autos) {
      auto img = cyclic_class(stallings::apply_endomorphism(e, c.word()));
      if (!img || static_cast<int>(img->size()) > max_len) continue;
      if (seen.insert(*img).second) todo.push(*img);
    }
  }
  return seen;
}

// Non-length-increasing BFS from a single class; true iff a length-1 class is
// reachable.
inline bool whitehead_bfs_primitive(const Word& w, int rank, std::size_t state_cap = 2000000) {
  auto start = cyclic_class(w);
  if (!start) return false;
  std::vector<Endomorphism> autos = whitehead_automorphisms(rank);
  std::set<CyclicWord> seen = {*start};
  std::queue<CyclicWord> todo;
  todo.push(*start);
  while (!todo.empty()) {
    CyclicWord c = todo.front();
    todo.pop();
    if (c.size() == 1) return true;
    for (const Endomorphism& e : autos) {
      auto img = cyclic_class(stallings::apply_endomorphism(e, c.word()));
      if (!img || img->size() > c.size()) continue;
      if (img->size() == 1) return true;
      if (seen.size() < state_cap && seen.insert(*img).second) todo.push(*img);
    }
  }
  return false;
}

// All cyclically reduced words over rank-n letters with length exactly len.
inline void enumerate_cyclically_reduced(int rank, int len,
                                         const std::function<void(const Word&)>& fn) {
  std::vector<Letter> cur;
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(cur.size()) == len) {
      if (len >= 1 && cur.front() == -cur.back()) return;
      fn(Word::reduce(cur, rank));
      return;
    }
    for (int i = 1; i <= rank; ++i)
      for (Letter x : {static_cast<Letter>(i), static_cast<Letter>(-i)}) {
        if (!cur.empty() && cur.back() == -x) continue;
        cur.push_back(x);
        self(self);
        cur.pop_back();
      }
  };
  rec(rec);
}

}  // namespace testutil
