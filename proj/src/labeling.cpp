#include "rsd/labeling.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "rsd/generators.hpp"
#include "rsd/phase_schedule.hpp"

namespace rsd {

std::vector<int> msb_bits(std::uint64_t x) {
  std::vector<int> bits;
  if (x == 0) return {0};
  for (int i = bitlen(x) - 1; i >= 0; --i) bits.push_back(static_cast<int>((x >> i) & 1U));
  return bits;
}

std::uint64_t from_msb_bits(const std::vector<int>& bits) {
  std::uint64_t x = 0;
  for (int b : bits) x = (x << 1) | static_cast<std::uint64_t>(b & 1);
  return x;
}

namespace {

void put_tag(std::string& out, const Tag& t) {
  if (t.id < 0 || (t.bit != 0 && t.bit != 1)) throw std::invalid_argument("tag out of range");
  if (t.id > 0) {
    const auto bits = msb_bits(static_cast<std::uint64_t>(t.id));
    out.append(bits.size(), '0');
    out.push_back('1');
    for (int b : bits) out.push_back(static_cast<char>('0' + b));
  } else {
    out.push_back('1');
  }
  out.push_back(static_cast<char>('0' + t.bit));
}

class BitReader {
 public:
  explicit BitReader(std::string_view s) : s_(s) {}
  int next() {
    if (pos_ >= s_.size()) throw LabelDecodeError("label truncated at bit " + std::to_string(pos_));
    char c = s_[pos_++];
    if (c != '0' && c != '1') throw LabelDecodeError("non-binary character in label");
    return c - '0';
  }
  bool done() const { return pos_ == s_.size(); }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

Tag get_tag(BitReader& in) {
  int len = 0;
  while (in.next() == 0) {
    if (++len > 62) throw LabelDecodeError("tag id length prefix too long");
  }
  std::vector<int> bits;
  for (int i = 0; i < len; ++i) bits.push_back(in.next());
  if (len > 0 && bits.front() == 0) throw LabelDecodeError("tag id has a leading zero");
  Tag t;
  t.id = static_cast<int>(from_msb_bits(bits));
  t.bit = in.next();
  return t;
}

}  // namespace

std::string encode_label(const Label& label) {
  std::string out;
  for (bool m : label.markers) out.push_back(m ? '1' : '0');
  put_tag(out, label.delta_tag);
  put_tag(out, label.collision_tag);
  put_tag(out, label.weight_tag);
  return out;
}

Label decode_label(std::string_view bits) {
  BitReader in(bits);
  Label l;
  for (auto& m : l.markers) m = in.next() == 1;
  l.delta_tag = get_tag(in);
  l.collision_tag = get_tag(in);
  l.weight_tag = get_tag(in);
  if (!in.done()) throw LabelDecodeError("trailing bits after label");
  return l;
}

std::size_t LabelingScheme::max_bits() const {
  std::size_t best = 0;
  for (const auto& e : encoded) best = std::max(best, e.size());
  return best;
}

double LabelingScheme::mean_bits() const {
  if (encoded.empty()) return 0.0;
  std::size_t sum = 0;
  for (const auto& e : encoded) sum += e.size();
  return static_cast<double>(sum) / static_cast<double>(encoded.size());
}

int label_length_bound(int delta) { return 16 + 6 * bitlen(static_cast<std::uint64_t>(bitlen(delta))); }

namespace {

// Shortest path from r to target, smallest-id next hop at each step.
std::vector<NodeId> hop_path(const Graph& g, NodeId root, NodeId target) {
  auto to_target = g.distances_from(target);
  std::vector<NodeId> path{root};
  NodeId cur = root;
  while (cur != target) {
    for (NodeId w : g.neighbors(cur)) {
      if (to_target[w] == to_target[cur] - 1) {
        cur = w;
        break;
      }
    }
    path.push_back(cur);
  }
  return path;
}

}  // namespace

namespace {

// Everything except the phase closers.
LabelingScheme assign_tags(const Graph& g, const LevelDecomposition& d, const UpperSetPlan& plan,
                           const WeightMap& w) {
  if (d.height < 1) throw std::invalid_argument("labeling needs a graph of height >= 1");
  const NodeId n = g.size();
  const int m = floor_log2(d.delta) + 1;
  LabelingScheme s;
  s.labels.assign(n, Label{});
  auto& L = s.labels;

  const NodeId r = d.root;
  const NodeId deepest = d.levels[d.height].front();
  L[r].markers[kRoot] = true;
  L[deepest].markers[kDeepest] = true;

  // Delta-learning: first m neighbors of r by id carry the bits of Delta.
  const auto delta_bits = msb_bits(static_cast<std::uint64_t>(d.delta));
  const auto& rn = g.neighbors(r);
  for (int i = 0; i < m; ++i) {
    NodeId wi = rn[i];
    L[wi].markers[kDeltaSource] = true;
    L[wi].delta_tag = Tag{i + 1, delta_bits[i]};
  }
  L[r].delta_tag = Tag{m, 0};

  s.hop_path = hop_path(g, r, deepest);
  for (std::size_t i = 1; i + 1 < s.hop_path.size(); ++i) L[s.hop_path[i]].markers[kHopRelay] = true;

  for (int l = 0; l < d.height; ++l) {
    for (const auto& mem : plan.levels[l].members) {
      L[mem.node].markers[kUpperSet] = true;
      // Collision tags: bit at the rank of the child's id within ID(v).
      const auto ids = mem.id_set();
      const auto size_bits = msb_bits(mem.private_children.size());
      for (std::size_t i = 0; i < mem.tagged_children.size(); ++i) {
        const int id = mem.tagged_ids[i];
        const auto rank = static_cast<std::size_t>(std::find(ids.begin(), ids.end(), id) - ids.begin());
        L[mem.tagged_children[i]].collision_tag = Tag{id, size_bits.at(rank)};
      }
      // Weight tags: per weight class Q(x), the bits of |Q(x)|.
      std::map<std::int64_t, std::vector<NodeId>> by_weight;
      for (NodeId u : mem.private_children) by_weight[w[u]].push_back(u);
      gen::Rng rng(plan.variants[l] ^ static_cast<std::uint64_t>(mem.node));
      for (auto& [x, q] : by_weight) {
        if (plan.variants[l] != 0)
          for (std::size_t i = q.size(); i > 1; --i) std::swap(q[i - 1], q[gen::uniform_below(rng, i)]);
        const auto qbits = msb_bits(q.size());
        for (std::size_t j = 0; j < qbits.size(); ++j)
          L[q[j]].weight_tag = Tag{static_cast<int>(j) + 1, qbits[j]};
      }
    }
    // Heaviest node of V(l+1), smallest id among ties.
    const auto& next = d.levels[l + 1];
    NodeId heavy = next.front();
    for (NodeId v : next)
      if (w[v] > w[heavy]) heavy = v;
    L[heavy].markers[kHeaviest] = true;
  }
  return s;
}

}  // namespace

LabelingScheme assign_labels(const Graph& g, const LevelDecomposition& d, const UpperSetPlan& plan,
                             const WeightMap& w) {
  LabelingScheme s = assign_tags(g, d, plan, w);
  auto& L = s.labels;

  // The phase for level l must be closed by the member that completes
  // last; a replay of the phase finds it.
  for (int l = 0; l < d.height; ++l) {
    auto replay = replay_phase(g, d, plan, w, L, l);
    if (replay.stalled)
      throw std::logic_error("size-learning phase for level " + std::to_string(l) + " cannot complete");
    const auto& members = plan.levels[l].members;
    std::size_t closer = 0;
    for (std::size_t k = 0; k < members.size(); ++k)
      if (replay.completion_block[k] >= replay.completion_block[closer]) closer = k;
    L[members[closer].node].markers[kPhaseCloser] = true;
  }

  s.encoded.reserve(L.size());
  for (const auto& lbl : L) s.encoded.push_back(encode_label(lbl));
  return s;
}

namespace {

bool phase_completes(const Graph& g, const LevelDecomposition& d, const UpperSetPlan& plan, const WeightMap& w,
                     const std::vector<Label>& labels, int level) {
  const auto replay = replay_phase(g, d, plan, w, labels, level);
  if (replay.stalled) return false;
  const auto& members = plan.levels[level].members;
  for (std::size_t k = 0; k < members.size(); ++k)
    if (replay.derived_weight[k] != w[members[k].node]) return false;
  return true;
}

}  // namespace

Oracle build_oracle(const Graph& g, int attempts_per_level) {
  Oracle o;
  o.decomposition = decompose(g);
  const auto& d = o.decomposition;
  if (d.height < 1) throw std::invalid_argument("the oracle needs a graph with at least two nodes");
  std::vector<std::uint64_t> variants(static_cast<std::size_t>(d.height), 0);
  // A level's phase depends on its own plan and on weights from deeper
  // levels only, so levels are settled bottom-up.
  for (int l = d.height - 1; l >= 0; --l) {
    bool ok = false;
    for (int attempt = 0; attempt < attempts_per_level && !ok; ++attempt) {
      variants[l] = static_cast<std::uint64_t>(attempt);
      o.plan = compute_upper_sets(g, d, variants);
      o.weights = compute_weights(g, d, o.plan);
      ok = phase_completes(g, d, o.plan, o.weights, assign_tags(g, d, o.plan, o.weights).labels, l);
      if (attempt > 0) ++o.redrawn;
    }
    if (!ok)
      throw std::logic_error("size-learning phase for level " + std::to_string(l) + " cannot complete after " +
                             std::to_string(attempts_per_level) + " constructions");
  }
  o.labels = assign_labels(g, d, o.plan, o.weights);
  return o;
}

std::string format_labels(const LabelingScheme& s) {
  std::ostringstream out;
  for (std::size_t v = 0; v < s.labels.size(); ++v) {
    const auto& l = s.labels[v];
    out << v << ' ';
    for (bool b : l.markers) out << (b ? '1' : '0');
    out << ' ' << l.delta_tag.id << ' ' << l.delta_tag.bit << ' ' << l.collision_tag.id << ' '
        << l.collision_tag.bit << ' ' << l.weight_tag.id << ' ' << l.weight_tag.bit << ' ' << s.encoded[v]
        << '\n';
  }
  return out.str();
}

}  // namespace rsd
