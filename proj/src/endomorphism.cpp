#include "stallings/endomorphism.hpp"

#include <stdexcept>

namespace stallings {

Endomorphism::Endomorphism(int rank, std::vector<Word> images)
    : rank_(rank), images_(std::move(images)) {
  if (rank < 1) throw std::invalid_argument("rank must be positive");
  if (images_.size() != static_cast<std::size_t>(rank))
    throw std::invalid_argument("need exactly one image word per generator");
  for (const Word& w : images_)
    if (w.rank() != rank) throw std::invalid_argument("image word has mismatched rank");
}

Endomorphism Endomorphism::identity(int rank) {
  std::vector<Word> images;
  for (int i = 1; i <= rank; ++i) images.push_back(Word::reduce(std::vector<Letter>{i}, rank));
  return Endomorphism(rank, std::move(images));
}

Endomorphism Endomorphism::parse(const std::string& images, std::optional<int> rank) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : images) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  int n = rank ? *rank : static_cast<int>(parts.size());
  if (static_cast<int>(parts.size()) != n)
    throw std::invalid_argument("expected " + std::to_string(n) + " image words");
  std::vector<Word> ws;
  for (const auto& p : parts) ws.push_back(Word::parse(p, n));
  return Endomorphism(n, std::move(ws));
}

Word apply_endomorphism(const Endomorphism& e, const Word& w) {
  if (e.rank() != w.rank()) throw std::invalid_argument("rank mismatch in apply_endomorphism");
  std::vector<Letter> out;
  for (Letter x : w.letters()) {
    const Word& img = e.image(x > 0 ? x : -x);
    if (x > 0)
      out.insert(out.end(), img.letters().begin(), img.letters().end());
    else {
      for (auto it = img.letters().rbegin(); it != img.letters().rend(); ++it)
        out.push_back(-*it);
    }
  }
  return Word::reduce(out, e.rank());
}

Endomorphism compose(const Endomorphism& e1, const Endomorphism& e2) {
  if (e1.rank() != e2.rank()) throw std::invalid_argument("rank mismatch in compose");
  std::vector<Word> images;
  for (int i = 1; i <= e2.rank(); ++i) images.push_back(apply_endomorphism(e1, e2.image(i)));
  return Endomorphism(e1.rank(), std::move(images));
}

Endomorphism nielsen_generator(NielsenKind kind, int i, int j, int rank) {
  if (i < 1 || i > rank) throw std::invalid_argument("index i out of range");
  bool needs_j = kind != NielsenKind::Inversion;
  if (needs_j) {
    if (j < 1 || j > rank) throw std::invalid_argument("index j out of range");
    if (i == j) throw std::invalid_argument("indices must be distinct");
  }
  auto word = [rank](std::vector<Letter> xs) { return Word::reduce(xs, rank); };
  std::vector<Word> images;
  for (int k = 1; k <= rank; ++k) images.push_back(word({k}));
  auto& img_i = images[static_cast<std::size_t>(i - 1)];
  switch (kind) {
    case NielsenKind::TransvectionRight:
      img_i = word({i, j});
      break;
    case NielsenKind::TransvectionRightInverse:
      img_i = word({i, -j});
      break;
    case NielsenKind::TransvectionLeft:
      img_i = word({j, i});
      break;
    case NielsenKind::TransvectionLeftInverse:
      img_i = word({-j, i});
      break;
    case NielsenKind::Transposition:
      img_i = word({j});
      images[static_cast<std::size_t>(j - 1)] = word({i});
      break;
    case NielsenKind::Inversion:
      img_i = word({-i});
      break;
  }
  return Endomorphism(rank, std::move(images));
}

std::vector<std::vector<long long>> abelianization_matrix(const Endomorphism& e) {
  const int n = e.rank();
  std::vector<std::vector<long long>> m(static_cast<std::size_t>(n),
                                        std::vector<long long>(static_cast<std::size_t>(n), 0));
  for (int j = 1; j <= n; ++j) {
    AbelianVector col = abelianize(e.image(j));
    for (int i = 0; i < n; ++i)
      m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j - 1)] =
          col.coords[static_cast<std::size_t>(i)];
  }
  return m;
}

static long long det_rec(std::vector<std::vector<long long>> m) {
  // Fraction-free Gaussian elimination (Bareiss) over the integers.
  const std::size_t n = m.size();
  long long prev = 1, sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

long long abelianization_determinant(const Endomorphism& e) {
  return det_rec(abelianization_matrix(e));
}

}  // namespace stallings
