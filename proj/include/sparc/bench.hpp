#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace sparc {

// A reachability instance over a random digraph. One cr-rule per edge lets the
// solver buy edges, so the minimal abductive supports are exactly the edge
// sets of shortest source-to-target paths.
struct BenchInstance {
  int n = 0;
  double density = 0.0;
  std::uint64_t seed = 0;
  std::vector<std::pair<int, int>> edges; // sorted ascending
  int source = 0;
  int target = 0;
  int distance = 0; // hops from source to target over the full edge set
  std::string programText;
};

// Picks round(density*n*(n-1)) distinct directed edges with a seeded partial
// Fisher-Yates shuffle, then chooses the source/target pair with the largest
// finite hop count (smallest pair on ties). Throws std::invalid_argument when
// n < 2 or the edge count falls outside [1, n*(n-1)].
BenchInstance genShortestPath(int n, double density, std::uint64_t seed);

} // namespace sparc
