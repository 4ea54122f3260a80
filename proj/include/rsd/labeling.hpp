#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rsd/graph.hpp"
#include "rsd/upper_set.hpp"

namespace rsd {

/// (id, bit) pair; id 0 means the tag is inactive.
struct Tag {
  int id = 0;
  int bit = 0;
  friend bool operator==(const Tag&, const Tag&) = default;
};

enum Marker : int {
  kRoot = 0,         // r
  kDeepest = 1,      // the node on level h that reports h
  kDeltaSource = 2,  // neighbors of r holding the bits of Delta
  kHopRelay = 3,     // internal nodes of the r -> marker-1 path
  kUpperSet = 4,     // members of some US(l)
  kPhaseCloser = 5,  // the US(l) member that announces the end of its phase
  kHeaviest = 6,     // maximum-weight node of a level
};

struct Label {
  std::array<bool, 7> markers{};
  Tag delta_tag;      // Delta-learning
  Tag collision_tag;
  Tag weight_tag;     // weight-transmission

  bool has(Marker m) const { return markers[m]; }
  friend bool operator==(const Label&, const Label&) = default;
};

class LabelDecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Self-delimiting code: 7 marker bits, then per tag a unary length
/// prefix (len zeros and a one), the id in binary, and the data bit.
std::string encode_label(const Label& label);
Label decode_label(std::string_view bits);

/// "b1 b2 ... bk" of x, most significant first.
std::vector<int> msb_bits(std::uint64_t x);
/// Inverse of msb_bits; leading zeros are allowed.
std::uint64_t from_msb_bits(const std::vector<int>& bits);

struct LabelingScheme {
  std::vector<Label> labels;
  std::vector<std::string> encoded;
  std::vector<NodeId> hop_path;  // r, ..., marker-1 node

  std::size_t max_bits() const;
  double mean_bits() const;
};

/// The repository's concrete length promise: 16 + 6 * bitlen(bitlen(Delta)).
int label_length_bound(int delta);

/// Full scheme. Requires d.height >= 1. Throws std::logic_error if the
/// size-learning phases cannot be scheduled (see phase_schedule.hpp).
LabelingScheme assign_labels(const Graph& g, const LevelDecomposition& d, const UpperSetPlan& plan,
                             const WeightMap& w);

/// Decomposition, upper sets, weights and labels for a graph. The phase
/// of each level is replayed; when it stalls or derives a wrong weight the
/// open choices of that level's construction are redrawn (variants
/// 1, 2, ...), bottom-up. Throws std::logic_error when every attempt fails.
struct Oracle {
  LevelDecomposition decomposition;
  UpperSetPlan plan;
  WeightMap weights;
  LabelingScheme labels;
  int redrawn = 0;  // constructions discarded during the search
};
Oracle build_oracle(const Graph& g, int attempts_per_level = 256);

/// One line per node: node markers l1.id l1.bit l2.id l2.bit l3.id l3.bit bits
std::string format_labels(const LabelingScheme& s);

}  // namespace rsd
