#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rsd/graph.hpp"

namespace rsd::lab {

// ---------------------------------------------------------------------------
// Tree family
// ---------------------------------------------------------------------------

/// T_i: center r with delta leaves, one of which (a) carries i more leaves.
struct FamilyTree {
  int delta = 0;
  int i = 0;
  Graph graph;
  NodeId r = 0;
  NodeId a = 1;
  std::vector<NodeId> R;  // leaves of r other than a
  std::vector<NodeId> A;  // leaves of a
};

/// All members for floor(delta/2) <= i <= delta-1. Throws on delta < 2.
std::vector<FamilyTree> build_family(int delta);

// ---------------------------------------------------------------------------
// Histories
// ---------------------------------------------------------------------------

enum class Event : std::uint8_t { Leaf, Lambda, Star, Sub };

/// Handle into a HistoryStore. Two handles from the same store are equal
/// iff the histories are structurally equal.
using HistoryId = std::uint32_t;

/// Hash-consed history values: Leaf(label), or (previous, event) where the
/// event is Lambda, Star or Sub(history heard).
class HistoryStore {
 public:
  struct Entry {
    Event event;
    HistoryId previous;  // unused for Leaf
    HistoryId heard;     // Sub only
    std::string label;   // Leaf only
    std::uint64_t digest;
    std::uint32_t depth;  // t
  };

  HistoryId leaf(const std::string& label);
  HistoryId extend(HistoryId previous, Event event, HistoryId heard = 0);

  const Entry& at(HistoryId id) const { return entries_[id]; }
  std::uint64_t digest(HistoryId id) const { return entries_[id].digest; }
  std::size_t size() const { return entries_.size(); }

  /// Structural comparison by recursion, independent of interning.
  bool structurally_equal(HistoryId x, const HistoryStore& other, HistoryId y) const;
  /// Nested text form: label, then ",L" / ",*" / ",[...]" per round.
  std::string render(HistoryId id) const;

 private:
  struct Key {
    Event event;
    HistoryId previous;
    HistoryId heard;
    std::string label;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const;
  };
  std::vector<Entry> entries_;
  std::unordered_map<Key, HistoryId, KeyHash> index_;
};

/// Deterministic algorithm: transmit iff it returns true for the history.
using Automaton = std::function<bool(const HistoryStore&, HistoryId)>;

/// Pure map from the structural digest of a history to an action.
/// The transmit probability itself is drawn from the seed.
Automaton digest_automaton(std::uint64_t seed);
Automaton all_listen();

/// histories[t][v] for t = 0..rounds.
using HistoryTable = std::vector<std::vector<HistoryId>>;

HistoryTable compute_histories(const Graph& g, const std::vector<std::string>& labels, const Automaton& automaton,
                               int rounds, HistoryStore& store);

// ---------------------------------------------------------------------------
// Patterns and counting
// ---------------------------------------------------------------------------

/// Index of a label among all strings of length <= beta, shortest first,
/// then lexicographic. Throws on longer or non-binary labels.
std::size_t label_index(const std::string& label, int beta);
/// 2^(beta+1).
std::uint64_t label_universe(int beta);

struct Pattern {
  std::string label_r;
  std::vector<std::uint8_t> occupancy_r;  // over R
  std::string label_a;
  std::vector<std::uint8_t> occupancy_a;  // over A
  friend bool operator==(const Pattern&, const Pattern&) = default;
};

Pattern pattern_of(const FamilyTree& t, const std::vector<std::string>& labels, int beta);

using BigInt = boost::multiprecision::cpp_int;

/// z^2 * 3^(2z), z = 2^(beta+1).
BigInt pattern_bound(int beta);
/// (2^(beta+1))^2 * 3^(2^(beta+2)), evaluated by repeated squaring.
BigInt pattern_bound_second_path(int beta);
/// Whether pattern_bound(beta) < delta / 2, compared as 2 * bound < delta.
bool crossover_holds(int beta, const BigInt& delta);

// ---------------------------------------------------------------------------
// Lemma checks
// ---------------------------------------------------------------------------

struct Violation {
  std::string lemma;  // "leaf-classes" or "root-pattern"
  int tree_i = 0;
  int other_i = 0;
  std::uint64_t automaton_seed = 0;
  int labeling = 0;
  int round = 0;  // first round at which it fails
  std::string detail;
};

struct LemmaConfig {
  int delta = 4;
  int automata = 50;
  int labelings = 20;
  int rounds = 200;
  int beta = 2;
  std::uint64_t seed = 1;
};

struct LemmaReport {
  int delta = 0;
  int trials = 0;  // automata x labelings
  int rounds = 0;
  std::vector<Violation> violations;
  long long leaf_pairs = 0;      // leaf pairs checked over all rounds
  long long equal_pattern_pairs = 0;
  long long root_histories_per_class_max = 0;  // distinct root histories in one pattern class, max over t
};

/// One labeling per family member. Per labeling index, patterns are built
/// to coincide across the family for most draws and to differ for the rest.
std::vector<std::vector<std::string>> sample_labelings(const std::vector<FamilyTree>& family, int beta,
                                                       std::uint64_t seed);

LemmaReport check_lemmas(const LemmaConfig& cfg);

/// {"delta", "trials", "rounds", "violations"}.
std::string lemma_report_json(const LemmaReport& r);

}  // namespace rsd::lab
