#include "rsd/upper_set.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "rsd/generators.hpp"

namespace rsd {

std::vector<int> UpperSetMember::id_set() const {
  std::vector<int> ids = tagged_ids;
  std::sort(ids.begin(), ids.end());
  return ids;
}

int UpperSetPlan::member_index(NodeId v, int level) const {
  if (level < 0 || level >= static_cast<int>(levels.size())) return -1;
  const auto& m = levels[level].members;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i].node == v) return static_cast<int>(i);
  return -1;
}

namespace {

class LevelBuilder {
 public:
  LevelBuilder(const Graph& g, const LevelDecomposition& d, int l, int max_id, std::uint64_t variant)
      : g_(g),
        d_(d),
        l_(l),
        max_id_(max_id),
        variant_(variant),
        rng_(variant),
        covered_(g.size(), false),
        in_us_(g.size(), false) {
    for (NodeId v : d.levels[l]) lower_[v] = lower_neighbors(g, d, v);
    remaining_ = static_cast<int>(d.levels[l + 1].size());
  }

  LevelPlan build() {
    LevelPlan plan;
    while (remaining_ > 0) {
      Admission adm = next_admission(plan);
      NodeId v = pending_;
      if (v < 0) throw std::logic_error("upper set construction stalled at level " + std::to_string(l_));
      if (plan.members.empty()) adm.rule = Admission::Rule::First;
      admit(plan, v, adm);
    }
    return plan;
  }

 private:
  bool eligible(NodeId v) const {
    if (in_us_[v]) return false;
    for (NodeId u : lower_.at(v))
      if (!covered_[u]) return true;
    return false;
  }

  /// Smallest id for variant 0, otherwise a seeded draw.
  NodeId choose(const std::vector<NodeId>& candidates) {
    if (variant_ == 0) return candidates.front();
    return candidates[gen::uniform_below(rng_, candidates.size())];
  }

  Admission next_admission(const LevelPlan& plan) {
    pending_ = -1;
    // Rule 1: latest member with a tagged child shared with an eligible node.
    for (auto it = plan.members.rbegin(); it != plan.members.rend(); ++it) {
      for (std::size_t b = 0; b < it->tagged_children.size(); ++b) {
        NodeId child = it->tagged_children[b];
        std::vector<NodeId> candidates;
        for (NodeId v : g_.neighbors(child))
          if (d_.level[v] == l_ && eligible(v)) candidates.push_back(v);
        if (candidates.empty()) continue;
        pending_ = choose(candidates);
        Admission a;
        a.rule = Admission::Rule::SharedTaggedChild;
        a.via_member = it->node;
        a.via_child = child;
        a.inherited_id = it->tagged_ids[b];
        return a;
      }
    }
    // Rule 2: any eligible node.
    std::vector<NodeId> candidates;
    for (NodeId v : d_.levels[l_])
      if (eligible(v)) candidates.push_back(v);
    if (!candidates.empty()) pending_ = choose(candidates);
    return Admission{Admission::Rule::Fallback, -1, -1, 1};
  }

  void admit(LevelPlan& plan, NodeId v, const Admission& adm) {
    UpperSetMember m;
    m.node = v;
    m.admission = adm;
    for (NodeId u : lower_.at(v)) {
      if (!covered_[u]) {
        m.private_children.push_back(u);
        covered_[u] = true;
        --remaining_;
      }
    }
    in_us_[v] = true;
    const int k = bitlen(m.private_children.size());
    std::vector<NodeId> order = m.private_children;
    if (variant_ != 0)
      for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[gen::uniform_below(rng_, i)]);
    std::set<int> used;
    for (int i = 0; i < k; ++i) {
      int id = adm.inherited_id;
      if (i > 0) {
        id = 1;
        while (used.count(id)) ++id;
      }
      if (id > max_id_ || used.count(id))
        throw std::logic_error("child id assignment out of range at node " + std::to_string(v));
      used.insert(id);
      m.tagged_children.push_back(order[i]);
      m.tagged_ids.push_back(id);
    }
    plan.members.push_back(std::move(m));
  }

  const Graph& g_;
  const LevelDecomposition& d_;
  int l_;
  int max_id_;
  std::uint64_t variant_;
  gen::Rng rng_;
  std::vector<bool> covered_;
  std::vector<bool> in_us_;
  std::map<NodeId, std::vector<NodeId>> lower_;
  int remaining_ = 0;
  NodeId pending_ = -1;
};

}  // namespace

UpperSetPlan compute_upper_sets(const Graph& g, const LevelDecomposition& d,
                                const std::vector<std::uint64_t>& variants) {
  if (d.height < 1) throw std::invalid_argument("upper sets need height >= 1");
  UpperSetPlan plan;
  plan.max_id = bitlen(static_cast<std::uint64_t>(d.delta));
  plan.child_id.assign(g.size(), 0);
  plan.owner.assign(g.size(), -1);
  plan.in_upper_set.assign(g.size(), false);
  plan.variants.assign(static_cast<std::size_t>(d.height), 0);
  for (std::size_t l = 0; l < variants.size() && l < plan.variants.size(); ++l) plan.variants[l] = variants[l];
  for (int l = 0; l < d.height; ++l) {
    plan.levels.push_back(LevelBuilder(g, d, l, plan.max_id, plan.variants[l]).build());
    for (const auto& m : plan.levels.back().members) {
      plan.in_upper_set[m.node] = true;
      for (NodeId u : m.private_children) plan.owner[u] = m.node;
      for (std::size_t i = 0; i < m.tagged_children.size(); ++i)
        plan.child_id[m.tagged_children[i]] = m.tagged_ids[i];
    }
  }
  return plan;
}

WeightMap compute_weights(const Graph& g, const LevelDecomposition& d, const UpperSetPlan& plan) {
  WeightMap w(g.size(), 1);
  for (int l = d.height - 1; l >= 0; --l) {
    for (const auto& m : plan.levels[l].members) {
      std::int64_t sum = 1;
      for (NodeId u : m.private_children) sum += w[u];
      w[m.node] = sum;
    }
  }
  return w;
}

std::vector<std::string> verify_plan(const Graph& g, const LevelDecomposition& d,
                                     const UpperSetPlan& plan) {
  std::vector<std::string> bad;
  auto say = [&](int l, const std::string& s) { bad.push_back("level " + std::to_string(l) + ": " + s); };
  if (static_cast<int>(plan.levels.size()) != d.height) {
    bad.push_back("plan has wrong number of levels");
    return bad;
  }
  const int max_id = floor_log2(d.delta) + 1;
  for (int l = 0; l < d.height; ++l) {
    const auto& members = plan.levels[l].members;
    std::set<NodeId> union_seen;
    std::set<NodeId> partition_seen;
    for (std::size_t j = 0; j < members.size(); ++j) {
      const auto& m = members[j];
      if (d.level[m.node] != l) say(l, "member " + std::to_string(m.node) + " not on this level");
      // N'(v_j) = N(v_j) minus the union of N(v_i), i < j.
      std::vector<NodeId> expect;
      for (NodeId u : lower_neighbors(g, d, m.node))
        if (!union_seen.count(u)) expect.push_back(u);
      if (expect != m.private_children) say(l, "N' mismatch at member " + std::to_string(m.node));
      if (expect.empty()) say(l, "empty N' at member " + std::to_string(m.node));
      for (NodeId u : lower_neighbors(g, d, m.node)) union_seen.insert(u);
      for (NodeId u : m.private_children)
        if (!partition_seen.insert(u).second) say(l, "node " + std::to_string(u) + " in two N' sets");

      const auto k = static_cast<std::size_t>(floor_log2(std::max<std::size_t>(1, m.private_children.size())) + 1);
      if (!m.private_children.empty() && m.tagged_children.size() != k)
        say(l, "wrong tagged-child count at member " + std::to_string(m.node));
      std::set<int> ids;
      for (std::size_t i = 0; i < m.tagged_children.size(); ++i) {
        int id = m.tagged_ids[i];
        if (id < 1 || id > max_id) say(l, "id out of range at " + std::to_string(m.tagged_children[i]));
        if (!ids.insert(id).second) say(l, "repeated id in ID(" + std::to_string(m.node) + ")");
        if (std::find(m.private_children.begin(), m.private_children.end(), m.tagged_children[i]) ==
            m.private_children.end())
          say(l, "tagged child outside N' at " + std::to_string(m.node));
        if (plan.child_id[m.tagged_children[i]] != id) say(l, "child_id table disagrees");
      }
      if (!m.tagged_ids.empty()) {
        const auto& a = m.admission;
        int want = 1;
        if (a.rule == Admission::Rule::SharedTaggedChild) {
          want = plan.child_id[a.via_child];
          if (!g.adjacent(a.via_child, m.node)) say(l, "inheritance via non-neighbor");
        }
        if (m.tagged_ids.front() != want)
          say(l, "first tagged child of " + std::to_string(m.node) + " does not inherit id");
      }
    }
    std::set<NodeId> next(d.levels[l + 1].begin(), d.levels[l + 1].end());
    if (union_seen != next) say(l, "coverage fails");
    if (partition_seen != next) say(l, "N' sets do not partition the next level");
  }
  return bad;
}

std::vector<std::string> verify_weights(const Graph& g, const LevelDecomposition& d,
                                        const UpperSetPlan& plan, const WeightMap& w) {
  std::vector<std::string> bad;
  for (NodeId v = 0; v < g.size(); ++v) {
    const int l = d.level[v];
    std::int64_t want = 1;
    if (l < d.height) {
      int idx = plan.member_index(v, l);
      if (idx >= 0)
        for (NodeId u : plan.levels[l].members[idx].private_children) want += w[u];
    }
    if (w[v] != want) bad.push_back("weight recursion fails at node " + std::to_string(v));
  }
  std::int64_t below = 0;
  for (int l = d.height; l >= 0; --l) {
    below += static_cast<std::int64_t>(d.levels[l].size());
    std::int64_t sum = 0;
    for (NodeId v : d.levels[l]) sum += w[v];
    if (sum != below) bad.push_back("level " + std::to_string(l) + " weight sum " + std::to_string(sum) +
                                    " != " + std::to_string(below));
  }
  return bad;
}

}  // namespace rsd
