#include "rsd/phase_schedule.hpp"

#include <algorithm>
#include <map>

namespace rsd {

namespace {

struct Heard {
  int count = 0;
  Tag tag;
};

std::uint64_t bits_by_id(const std::map<int, int>& by_id) {
  std::vector<int> bits;
  for (auto [id, bit] : by_id) bits.push_back(bit);
  return from_msb_bits(bits);
}

}  // namespace

PhaseReplay replay_phase(const Graph& g, const LevelDecomposition& d, const UpperSetPlan& plan,
                         const WeightMap& weights, const std::vector<Label>& labels, int level) {
  const auto& members = plan.levels.at(level).members;
  PhaseReplay out;
  out.level = level;
  out.completion_block.assign(members.size(), 0);
  out.derived_weight.assign(members.size(), 0);

  std::vector<bool> child_done(g.size(), false);
  std::size_t remaining = members.size();
  // Every block completes at least one member when the construction is
  // sound; the cap only turns a bug into a reported stall.
  const int cap = static_cast<int>(members.size()) + 2;

  for (int block = 1; block <= cap && remaining > 0; ++block) {
    std::vector<std::size_t> stopping;
    for (std::size_t k = 0; k < members.size(); ++k) {
      if (out.completion_block[k]) continue;
      std::map<int, Heard> collision_slots;
      std::map<std::pair<std::int64_t, int>, Heard> weight_slots;
      for (NodeId u : lower_neighbors(g, d, members[k].node)) {
        if (child_done[u]) continue;
        const Label& lu = labels[u];
        if (lu.collision_tag.id > 0) {
          auto& s = collision_slots[lu.collision_tag.id];
          ++s.count;
          s.tag = lu.collision_tag;
        }
        if (lu.weight_tag.id > 0) {
          auto& s = weight_slots[{weights[u], lu.weight_tag.id}];
          ++s.count;
          s.tag = lu.weight_tag;
        }
      }
      bool noise = false;
      std::map<int, int> size_bits;
      for (auto& [id, s] : collision_slots) {
        if (s.count > 1) noise = true;
        size_bits[id] = s.tag.bit;
      }
      std::map<std::int64_t, std::map<int, int>> per_weight;
      for (auto& [key, s] : weight_slots) {
        if (s.count > 1) noise = true;
        per_weight[key.first][key.second] = s.tag.bit;
      }
      if (noise) continue;
      const std::uint64_t expected = bits_by_id(size_bits);
      std::uint64_t counted = 0;
      std::int64_t weight = 1;
      for (auto& [f, by_id] : per_weight) {
        auto df = bits_by_id(by_id);
        counted += df;
        weight += f * static_cast<std::int64_t>(df);
      }
      if (expected == 0 || counted != expected) continue;
      out.completion_block[k] = block;
      out.derived_weight[k] = weight;
      stopping.push_back(k);
    }
    for (std::size_t k : stopping) {
      --remaining;
      out.blocks = block;
      for (NodeId u : g.neighbors(members[k].node))
        if (d.level[u] == level + 1) child_done[u] = true;
    }
  }
  out.stalled = remaining > 0;
  return out;
}

}  // namespace rsd
