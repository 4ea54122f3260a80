#pragma once

#include <cstdint>
#include <random>

#include "rsd/graph.hpp"

namespace rsd::gen {

using Rng = std::mt19937_64;

/// Uniform integer in [0, bound) by rejection; independent of the
/// standard library's distribution implementation so corpora are stable.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

Graph complete2();
Graph path(NodeId n);
/// K_{1,delta}, center 0.
Graph star(int delta);
/// r=0 adjacent to 1,2; 1,2 adjacent to 3.
Graph diamond();
Graph cycle(NodeId n);

/// Member T_i of the lower-bound family: r=0, a=1, the other leaves of r
/// are 2..delta, the i leaves of a are delta+1..delta+i.
Graph family_tree(int delta, int i);

/// Random tree by uniform attachment, no node exceeding `delta_cap`
/// neighbors, ids relabeled by a random permutation.
/// Throws std::invalid_argument when infeasible (n >= 3 with cap < 2).
Graph random_tree(NodeId n, int delta_cap, std::uint64_t seed);

/// Random tree plus up to `extra_edges` extra edges respecting the cap.
Graph random_graph(NodeId n, int delta_cap, std::uint64_t seed, int extra_edges);

}  // namespace rsd::gen
