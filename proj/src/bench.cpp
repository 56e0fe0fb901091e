#include "sparc/bench.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>
#include <sstream>
#include <stdexcept>

namespace sparc {

namespace {

std::vector<int> hopsFrom(int start, int n, const std::vector<std::vector<int>>& adj) {
  std::vector<int> dist(n, -1);
  std::deque<int> queue{start};
  dist[start] = 0;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int w : adj[v])
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
  }
  return dist;
}

} // namespace

BenchInstance genShortestPath(int n, double density, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("need at least two vertices");
  long long all = static_cast<long long>(n) * (n - 1);
  long long e = std::llround(density * static_cast<double>(all));
  if (e < 1 || e > all)
    throw std::invalid_argument("density " + std::to_string(density) + " gives " +
                                std::to_string(e) + " edges, outside [1, " +
                                std::to_string(all) + "]");

  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(all));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) pairs.emplace_back(i, j);

  std::mt19937_64 gen(seed);
  for (long long k = 0; k < e; ++k) {
    std::uint64_t left = static_cast<std::uint64_t>(all - k);
    long long pick = k + static_cast<long long>(gen() % left);
    std::swap(pairs[static_cast<std::size_t>(k)], pairs[static_cast<std::size_t>(pick)]);
  }
  pairs.resize(static_cast<std::size_t>(e));
  std::sort(pairs.begin(), pairs.end());

  std::vector<std::vector<int>> adj(n);
  for (const auto& [a, b] : pairs) adj[a].push_back(b);

  // At least one edge exists, so some pair is one hop apart.
  int bestS = -1, bestT = -1, bestD = 0;
  for (int s = 0; s < n; ++s) {
    std::vector<int> dist = hopsFrom(s, n, adj);
    for (int t = 0; t < n; ++t) {
      if (t == s || dist[t] < 0) continue;
      if (dist[t] > bestD) {
        bestD = dist[t];
        bestS = s;
        bestT = t;
      }
    }
  }

  BenchInstance inst;
  inst.n = n;
  inst.density = density;
  inst.seed = seed;
  inst.edges = pairs;
  inst.source = bestS;
  inst.target = bestT;
  inst.distance = bestD;

  std::ostringstream os;
  os << "sorts definition\n";
  for (int i = 0; i < n; ++i) os << "vertex(v" << i << ").\n";
  os << "predicates declaration\n";
  os << "in(vertex,vertex)\n";
  os << "reached(vertex)\n";
  os << "program rules\n";
  os << "reached(v" << bestS << ").\n";
  os << "reached(Y) :- reached(X), in(X,Y).\n";
  os << ":- not reached(v" << bestT << ").\n";
  for (const auto& [a, b] : pairs) os << "in(v" << a << ",v" << b << ") :+ .\n";
  inst.programText = os.str();
  return inst;
}

} // namespace sparc
