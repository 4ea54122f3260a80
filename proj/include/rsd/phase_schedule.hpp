#pragma once

#include <cstdint>
#include <vector>

#include "rsd/graph.hpp"
#include "rsd/labeling.hpp"
#include "rsd/upper_set.hpp"

namespace rsd {

/// Block-level replay of one size-learning phase, as the central oracle
/// sees it: which block each member of US(level) completes in and what
/// weight it derives. Mirrors the slot rules of the node automaton.
struct PhaseReplay {
  int level = 0;
  std::vector<int> completion_block;        // parallel to US(level); 0 = never
  std::vector<std::int64_t> derived_weight; // parallel to US(level)
  int blocks = 0;                           // block in which the last member completed
  bool stalled = false;
};

/// `labels` needs collision and weight tags; markers are not read.
/// `weights` must hold correct weights for level+1.
PhaseReplay replay_phase(const Graph& g, const LevelDecomposition& d, const UpperSetPlan& plan,
                         const WeightMap& weights, const std::vector<Label>& labels, int level);

}  // namespace rsd
