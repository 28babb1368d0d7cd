#include "stallings/word.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>

namespace stallings {

bool letter_less(Letter a, Letter b) { return letter_key(a) < letter_key(b); }

std::string letter_to_string(Letter x) {
  int idx = (x > 0 ? x : -x) - 1;
  if (idx < 26) return std::string(1, static_cast<char>((x > 0 ? 'a' : 'A') + idx));
  // Generators beyond z have no single-character form.
  return (x > 0 ? "s" : "S") + std::to_string(idx + 1);
}

static void check_letter(Letter x, int rank) {
  if (x == 0) throw std::invalid_argument("letter value 0 is not a letter");
  if (x > rank || x < -rank)
    throw std::invalid_argument("letter " + std::to_string(x) + " out of range for rank " +
                                std::to_string(rank));
}

Word Word::reduce(std::span<const Letter> letters, int rank) {
  if (rank < 1) throw std::invalid_argument("rank must be positive");
  Word w(rank);
  auto& out = w.letters_;
  out.reserve(letters.size());
  for (Letter x : letters) {
    check_letter(x, rank);
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return w;
}

Word Word::parse(const std::string& text, std::optional<int> rank) {
  std::vector<Letter> letters;
  std::size_t i = 0;
  auto parse_exponent = [&](std::size_t& pos) -> long {
    ++pos;  // consume '^'
    bool neg = false;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
      neg = text[pos] == '-';
      ++pos;
    }
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
      throw std::invalid_argument("malformed exponent in word: " + text);
    long e = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      e = e * 10 + (text[pos] - '0');
      if (e > 1000000) throw std::invalid_argument("exponent too large");
      ++pos;
    }
    return neg ? -e : e;
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    Letter x;
    if (c >= 'a' && c <= 'z')
      x = c - 'a' + 1;
    else if (c >= 'A' && c <= 'Z')
      x = -(c - 'A' + 1);
    else
      throw std::invalid_argument(std::string("unexpected character '") + c + "' in word");
    ++i;
    long e = 1;
    if (i < text.size() && text[i] == '^') e = parse_exponent(i);
    Letter y = e >= 0 ? x : -x;
    for (long k = 0; k < (e >= 0 ? e : -e); ++k) letters.push_back(y);
  }
  int n = 1;
  for (Letter x : letters) n = std::max(n, x > 0 ? x : -x);
  if (rank) {
    if (*rank < n)
      throw std::invalid_argument("word uses letters beyond requested rank");
    n = *rank;
  }
  return reduce(letters, n);
}

std::string Word::str() const {
  std::string s;
  for (Letter x : letters_) s += letter_to_string(x);
  return s;
}

Word multiply(const Word& u, const Word& v) {
  if (u.rank() != v.rank()) throw std::invalid_argument("rank mismatch in multiply");
  std::vector<Letter> cat = u.letters();
  cat.insert(cat.end(), v.letters().begin(), v.letters().end());
  return Word::reduce(cat, u.rank());
}

Word invert(const Word& w) {
  std::vector<Letter> rev(w.letters().rbegin(), w.letters().rend());
  for (Letter& x : rev) x = -x;
  return Word::reduce(rev, w.rank());
}

static bool rotation_less(const std::vector<Letter>& v, std::size_t i, std::size_t j) {
  // Compare rotation starting at i with rotation starting at j.
  const std::size_t n = v.size();
  for (std::size_t k = 0; k < n; ++k) {
    Letter a = v[(i + k) % n], b = v[(j + k) % n];
    if (a != b) return letter_less(a, b);
  }
  return false;
}

CyclicWord CyclicWord::from_cyclically_reduced(std::vector<Letter> letters, int rank) {
  if (letters.empty()) throw std::invalid_argument("cyclic word must be nonempty");
  for (Letter x : letters) check_letter(x, rank);
  for (std::size_t i = 0; i < letters.size(); ++i)
    if (letters[i] == -letters[(i + 1) % letters.size()])
      throw std::invalid_argument("letter sequence is not cyclically reduced");
  std::size_t best = 0;
  for (std::size_t i = 1; i < letters.size(); ++i)
    if (rotation_less(letters, i, best)) best = i;
  std::rotate(letters.begin(), letters.begin() + static_cast<std::ptrdiff_t>(best), letters.end());
  CyclicWord c;
  c.rank_ = rank;
  c.letters_ = std::move(letters);
  return c;
}

std::string CyclicWord::str() const {
  std::string s;
  for (Letter x : letters_) s += letter_to_string(x);
  return s;
}

Word CyclicWord::word() const { return Word::reduce(letters_, rank_); }

CyclicWord CyclicWord::inverse() const {
  std::vector<Letter> rev(letters_.rbegin(), letters_.rend());
  for (Letter& x : rev) x = -x;
  return from_cyclically_reduced(std::move(rev), rank_);
}

bool CyclicWord::operator<(const CyclicWord& o) const {
  if (letters_.size() != o.letters_.size()) return letters_.size() < o.letters_.size();
  for (std::size_t k = 0; k < letters_.size(); ++k)
    if (letters_[k] != o.letters_[k]) return letter_less(letters_[k], o.letters_[k]);
  return false;
}

CyclicReduction cyclic_reduce(const Word& w) {
  const auto& v = w.letters();
  std::size_t lo = 0, hi = v.size();
  while (hi - lo >= 2 && v[lo] == -v[hi - 1]) {
    ++lo;
    --hi;
  }
  CyclicReduction r;
  std::vector<Letter> conj(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(lo));
  r.conjugator = Word::reduce(conj, w.rank());
  r.aligned_core = Word(w.rank());
  if (lo == hi) {
    r.core = std::nullopt;
  } else {
    std::vector<Letter> core(v.begin() + static_cast<std::ptrdiff_t>(lo),
                             v.begin() + static_cast<std::ptrdiff_t>(hi));
    r.aligned_core = Word::reduce(core, w.rank());
    r.core = CyclicWord::from_cyclically_reduced(std::move(core), w.rank());
  }
  return r;
}

bool are_conjugate(const Word& u, const Word& v) {
  if (u.rank() != v.rank()) throw std::invalid_argument("rank mismatch in are_conjugate");
  auto cu = cyclic_reduce(u), cv = cyclic_reduce(v);
  if (!cu.core || !cv.core) return !cu.core && !cv.core;
  return *cu.core == *cv.core;
}

Root extract_root(const CyclicWord& c) {
  const auto& v = c.letters();
  const std::size_t n = v.size();
  for (std::size_t p = 1; p <= n / 2; ++p) {
    if (n % p != 0) continue;
    bool periodic = true;
    for (std::size_t k = 0; k < n && periodic; ++k)
      periodic = v[k] == v[(k + p) % n];
    if (periodic) {
      std::vector<Letter> root(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(p));
      return {CyclicWord::from_cyclically_reduced(std::move(root), c.rank()),
              static_cast<int>(n / p)};
    }
  }
  return {c, 1};
}

AbelianVector abelianize(const Word& w) {
  AbelianVector v;
  v.coords.assign(static_cast<std::size_t>(w.rank()), 0);
  for (Letter x : w.letters()) {
    if (x > 0)
      ++v.coords[static_cast<std::size_t>(x - 1)];
    else
      --v.coords[static_cast<std::size_t>(-x - 1)];
  }
  return v;
}

AbelianVector abelian_add(const AbelianVector& a, const AbelianVector& b) {
  if (a.coords.size() != b.coords.size())
    throw std::invalid_argument("rank mismatch in abelian_add");
  AbelianVector r = a;
  for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] += b.coords[i];
  return r;
}

bool abelian_basis_element(const AbelianVector& v) {
  long long g = 0;
  for (long long x : v.coords) g = std::gcd(g, x);
  return g == 1;
}

bool abelian_partial_basis(const std::vector<AbelianVector>& vs) {
  if (vs.empty()) return true;
  const std::size_t n = vs[0].coords.size();
  for (const auto& v : vs)
    if (v.coords.size() != n) throw std::invalid_argument("rank mismatch in abelian_partial_basis");
  const std::size_t k = vs.size();
  if (k > n) return false;
  // Columns are the given vectors. Diagonalize by unimodular row/column
  // operations; the vectors extend to a basis iff the matrix has full column
  // rank and every diagonal entry comes out as a unit (the gcd of the k x k
  // minors is then 1, so all elementary divisors are 1).
  std::vector<std::vector<long long>> m(n, std::vector<long long>(k, 0));
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < n; ++i) m[i][j] = vs[j].coords[i];
  auto abs_ll = [](long long x) { return x < 0 ? -x : x; };

  for (std::size_t r = 0; r < k; ++r) {
    // Move any nonzero block entry into the pivot slot.
    std::size_t pi = r, pj = r;
    bool found = false;
    for (std::size_t i = r; i < n && !found; ++i)
      for (std::size_t j = r; j < k && !found; ++j)
        if (m[i][j] != 0) {
          pi = i;
          pj = j;
          found = true;
        }
    if (!found) return false;  // rank deficient
    std::swap(m[r], m[pi]);
    for (std::size_t i = 0; i < n; ++i) std::swap(m[i][r], m[i][pj]);

    // Shrink the pivot to the gcd of its row and column; |pivot| strictly
    // decreases every time a remainder or a smaller entry is pulled in.
    while (true) {
      std::size_t best = r;
      for (std::size_t i = r; i < n; ++i)
        if (m[i][r] != 0 && (m[best][r] == 0 || abs_ll(m[i][r]) < abs_ll(m[best][r]))) best = i;
      if (best != r) std::swap(m[r], m[best]);
      bool remainder = false;
      for (std::size_t i = r + 1; i < n; ++i) {
        if (m[i][r] == 0) continue;
        long long q = m[i][r] / m[r][r];
        for (std::size_t j = r; j < k; ++j) m[i][j] -= q * m[r][j];
        remainder = remainder || m[i][r] != 0;
      }
      if (remainder) continue;
      std::size_t bj = r;
      for (std::size_t j = r; j < k; ++j)
        if (m[r][j] != 0 && (m[r][bj] == 0 || abs_ll(m[r][j]) < abs_ll(m[r][bj]))) bj = j;
      if (bj != r) {
        for (std::size_t i = r; i < n; ++i) std::swap(m[i][r], m[i][bj]);
        continue;  // strictly smaller pivot; the column below needs redoing
      }
      bool row_remainder = false;
      for (std::size_t j = r + 1; j < k; ++j) {
        if (m[r][j] == 0) continue;
        long long q = m[r][j] / m[r][r];
        for (std::size_t i = r; i < n; ++i) m[i][j] -= q * m[i][r];
        row_remainder = row_remainder || m[r][j] != 0;
      }
      if (!row_remainder) break;  // column op leaves column r untouched
    }
    if (m[r][r] != 1 && m[r][r] != -1) return false;
  }
  return true;
}

}  // namespace stallings
