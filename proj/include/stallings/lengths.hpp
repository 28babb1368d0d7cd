#pragma once

#include <boost/rational.hpp>
#include <optional>
#include <string>
#include <vector>

#include "stallings/graph.hpp"

namespace stallings {

using Rational = boost::rational<long long>;

Rational parse_rational(const std::string& s);  // "1/3" or "2"
std::string rational_str(const Rational& r);

// Normalized nonnegative edge lengths on a core graph whose zero-set is a
// forest: barycentric coordinates of a single outer-space cell.
class LengthStructure {
 public:
  // Validates: core graph, lengths nonnegative summing to 1, zero-set a forest.
  LengthStructure(Graph graph, std::vector<Rational> lengths);

  static LengthStructure barycenter(const Graph& g);

  const Graph& graph() const { return graph_; }
  const std::vector<Rational>& lengths() const { return lengths_; }
  Rational length(int pair) const { return lengths_[static_cast<std::size_t>(pair)]; }

 private:
  Graph graph_;
  std::vector<Rational> lengths_;  // per unoriented edge
};

// Sum of lengths of crossed edges with multiplicity; the circuit must be a
// nonempty cyclically tight closed path.
Rational circuit_length(const EdgePath& c, const LengthStructure& l);

// All embedded circles (closed paths with no repeated vertex or edge),
// canonically oriented; finite for a finite graph.
std::vector<EdgePath> embedded_circles(const Graph& g);

struct Systole {
  Rational value;
  EdgePath witness;  // lexicographically least by oriented edge-id sequence
};

Systole systole(const LengthStructure& l);

// Collapses each zero-length component (a forest); lengths carry over and
// stay normalized. Requires a nonempty zero-set.
std::pair<Graph, LengthStructure> face_collapse(const LengthStructure& l);

}  // namespace stallings
