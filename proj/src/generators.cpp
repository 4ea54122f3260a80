#include "rsd/generators.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace rsd::gen {

std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below(0)");
  const std::uint64_t limit = Rng::max() - Rng::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

Graph complete2() { return Graph(2, {{0, 1}}); }

Graph path(NodeId n) {
  std::vector<Graph::Edge> e;
  for (NodeId v = 1; v < n; ++v) e.emplace_back(v - 1, v);
  return Graph(n, e);
}

Graph star(int delta) {
  if (delta < 1) throw std::invalid_argument("star needs delta >= 1");
  std::vector<Graph::Edge> e;
  for (NodeId v = 1; v <= delta; ++v) e.emplace_back(0, v);
  return Graph(delta + 1, e);
}

Graph diamond() { return Graph(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}); }

Graph cycle(NodeId n) {
  if (n < 3) throw std::invalid_argument("cycle needs n >= 3");
  std::vector<Graph::Edge> e;
  for (NodeId v = 0; v < n; ++v) e.emplace_back(v, (v + 1) % n);
  return Graph(n, e);
}

Graph family_tree(int delta, int i) {
  if (delta < 2) throw std::invalid_argument("family needs delta >= 2");
  if (i < delta / 2 || i > delta - 1)
    throw std::invalid_argument("family index must lie in [floor(delta/2), delta-1]");
  std::vector<Graph::Edge> e;
  for (NodeId v = 1; v <= delta; ++v) e.emplace_back(0, v);
  for (NodeId v = delta + 1; v <= delta + i; ++v) e.emplace_back(1, v);
  return Graph(delta + i + 1, e);
}

namespace {

std::vector<Graph::Edge> tree_edges(NodeId n, int cap, Rng& rng, std::vector<int>& deg) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (n >= 2 && cap < 1) throw std::invalid_argument("delta cap must be >= 1");
  if (n >= 3 && cap < 2) throw std::invalid_argument("a tree on n >= 3 nodes needs delta cap >= 2");
  std::vector<Graph::Edge> e;
  deg.assign(static_cast<std::size_t>(n), 0);
  std::vector<NodeId> open;  // attached nodes with spare degree
  if (n >= 1) open.push_back(0);
  for (NodeId v = 1; v < n; ++v) {
    auto k = uniform_below(rng, open.size());
    NodeId p = open[k];
    e.emplace_back(p, v);
    if (++deg[p] >= cap) {
      open[k] = open.back();
      open.pop_back();
    }
    if (++deg[v] < cap) open.push_back(v);
  }
  return e;
}

std::vector<NodeId> permutation(NodeId n, Rng& rng) {
  std::vector<NodeId> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[uniform_below(rng, i)]);
  return perm;
}

}  // namespace

Graph random_tree(NodeId n, int delta_cap, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<int> deg;
  auto e = tree_edges(n, delta_cap, rng, deg);
  auto perm = permutation(n, rng);
  for (auto& [u, v] : e) u = perm[u], v = perm[v];
  return Graph(n, e);
}

Graph random_graph(NodeId n, int delta_cap, std::uint64_t seed, int extra_edges) {
  Rng rng(seed);
  std::vector<int> deg;
  auto e = tree_edges(n, delta_cap, rng, deg);
  std::set<Graph::Edge> present;
  for (auto [u, v] : e) present.insert(std::minmax(u, v));
  int added = 0;
  for (int attempt = 0; attempt < 20 * extra_edges && added < extra_edges; ++attempt) {
    auto u = static_cast<NodeId>(uniform_below(rng, n));
    auto v = static_cast<NodeId>(uniform_below(rng, n));
    if (u == v || deg[u] >= delta_cap || deg[v] >= delta_cap) continue;
    if (!present.insert(std::minmax(u, v)).second) continue;
    e.emplace_back(u, v);
    ++deg[u];
    ++deg[v];
    ++added;
  }
  auto perm = permutation(n, rng);
  for (auto& [u, v] : e) u = perm[u], v = perm[v];
  return Graph(n, e);
}

}  // namespace rsd::gen
