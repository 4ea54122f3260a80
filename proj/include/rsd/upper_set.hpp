#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rsd/graph.hpp"

namespace rsd {

/// How a member entered its upper set.
struct Admission {
  enum class Rule { First, SharedTaggedChild, Fallback };
  Rule rule = Rule::First;
  NodeId via_member = -1;  // v_a for SharedTaggedChild
  NodeId via_child = -1;   // the shared tagged child of v_a
  int inherited_id = 1;    // id forced on the member's first tagged child
};

/// One member v of US(l) together with its private children N'(v).
struct UpperSetMember {
  NodeId node = -1;
  std::vector<NodeId> private_children;  // N'(v), ascending id
  std::vector<NodeId> tagged_children;   // floor(log|N'|)+1 members of N'(v)
  std::vector<int> tagged_ids;           // parallel to tagged_children
  Admission admission;

  /// ID(v) in ascending order.
  std::vector<int> id_set() const;
};

struct LevelPlan {
  std::vector<UpperSetMember> members;  // US(l) in admission order
};

struct UpperSetPlan {
  std::vector<LevelPlan> levels;  // l = 0..h-1
  int max_id = 1;                 // floor(log Delta) + 1
  std::vector<int> child_id;      // per node; 0 when untagged
  std::vector<NodeId> owner;      // per node at level >= 1: v with node in N'(v)
  std::vector<bool> in_upper_set; // per node
  std::vector<std::uint64_t> variants;  // per level, see compute_upper_sets

  /// Index of v within its level's member list, or -1.
  int member_index(NodeId v, int level) const;
};

/// Builds US(l) for every level. The rules leave some choices open: the
/// first member, the node picked by either rule, and which members of N'
/// carry tags. Variant 0 resolves them by smallest id (tagged children are
/// the first of N'); any other variant draws them from a generator seeded
/// with the variant. `variants[l]` applies to level l (missing = 0).
/// Requires d.height >= 1. Throws std::logic_error if coverage fails.
UpperSetPlan compute_upper_sets(const Graph& g, const LevelDecomposition& d,
                                const std::vector<std::uint64_t>& variants = {});

using WeightMap = std::vector<std::int64_t>;

WeightMap compute_weights(const Graph& g, const LevelDecomposition& d, const UpperSetPlan& plan);

/// Independent check of the plan against the definitions: N' recomputed
/// from the member order, partition, coverage, id bounds, distinctness and
/// inheritance. Returns human-readable violations (empty when valid).
std::vector<std::string> verify_plan(const Graph& g, const LevelDecomposition& d,
                                     const UpperSetPlan& plan);

/// Checks the weight recursion and per-level conservation.
std::vector<std::string> verify_weights(const Graph& g, const LevelDecomposition& d,
                                        const UpperSetPlan& plan, const WeightMap& w);

}  // namespace rsd
