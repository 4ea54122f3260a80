#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rsd/graph.hpp"
#include "rsd/labeling.hpp"
#include "rsd/radio.hpp"
#include "rsd/upper_set.hpp"
#include "rsd/wave.hpp"

namespace rsd::protocol {

// ---------------------------------------------------------------------------
// Timeline arithmetic
// ---------------------------------------------------------------------------

/// Rounds for a wave carrying `value` to cross `levels` BFS layers.
std::int64_t wave_span(std::int64_t levels, std::int64_t value);

/// Round in which the deepest level finishes decoding Wave(Delta):
/// m + h(2m+2).
std::int64_t delta_wave_end(std::int64_t delta, std::int64_t h);

/// Slack between the deepest level decoding Wave(Delta) and the hop report
/// toward r: the deepest level still relays Wave(Delta) for 2m+2 rounds.
std::int64_t hop_report_delay(std::int64_t delta);

/// Parameter learning as a closed formula without the relay slack:
/// m + h(2m+2) + h + h(2(floor(log h)+1)+2).
std::int64_t parameter_learning_formula(std::int64_t delta, std::int64_t h);

/// Round by which every node knows Delta, h and its level:
/// parameter_learning_formula + hop_report_delay.
std::int64_t parameter_learning_end(std::int64_t delta, std::int64_t h);

/// Block length: (floor(log Delta)+1) + x(floor(log Delta)+1) + 1.
std::int64_t block_length(std::int64_t delta, std::int64_t max_weight);

struct PhaseTimes {
  std::int64_t start = 0;         // t2(i); the phase begins in the next round
  std::int64_t blocks_start = 0;  // t2'(i)
  std::int64_t max_weight = 0;    // x(i)
  std::int64_t tau = 0;           // block length
  std::int64_t stop_round = 0;    // T: round of the closing Stop
  friend bool operator==(const PhaseTimes&, const PhaseTimes&) = default;
};

struct Timeline {
  int m = 0;
  std::int64_t t1 = 0;
  std::vector<PhaseTimes> phases;  // phases[i-1] is phase i
  std::int64_t final_start = 0;    // t2(h+1)
  friend bool operator==(const Timeline&, const Timeline&) = default;
};

/// Timeline from Delta, h and the per-phase observed x(i) and block counts
/// (stop_round = t2'(i) + blocks(i) * tau(i)).
Timeline compute_timeline(std::int64_t delta, std::int64_t h, const std::vector<std::int64_t>& max_weights,
                          const std::vector<std::int64_t>& blocks);

// ---------------------------------------------------------------------------
// Node automaton
// ---------------------------------------------------------------------------

struct DesyncError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Stage { ParameterLearning, HeightLearning, SizeLearning, Final, Done };
enum class PhaseStep { MaxWeightWave, Blocks, StopWave };
enum class Role { Bystander, Child, UpperMember };
enum class Status { Complete, Incomplete };

const char* stage_name(Stage s);

/// One node's view. Everything here is derived from the label and the
/// observations; node ids never enter.
struct NodeState {
  Label label;
  std::int64_t round = 0;  // last round whose action was chosen
  Stage stage = Stage::ParameterLearning;

  std::optional<std::int64_t> delta;
  int m = 0;
  std::optional<int> level;
  std::optional<std::int64_t> height;
  std::optional<std::int64_t> t1;
  std::int64_t params_round = 0;  // round in which the last of Delta/level/h became known

  std::optional<std::int64_t> weight;
  std::int64_t weight_round = 0;
  std::optional<std::int64_t> output;
  std::int64_t output_round = 0;  // round in which n was learned
  std::int64_t finish_round = 0;  // last round in which this node acts or decodes

  std::vector<PhaseTimes> phases;  // as learned by this node

  // parameter learning
  std::map<int, int> delta_bits;
  wave::Listener listener;
  std::int64_t echo_round = 0;
  std::int64_t listen_from = 0;
  bool hop_relayed = false;

  // outgoing transmissions
  std::vector<wave::Sender> senders;
  std::map<std::int64_t, radio::Message> one_shot;

  // size learning, current phase
  int phase = 0;
  PhaseStep step = PhaseStep::MaxWeightWave;
  Role role = Role::Bystander;
  Status status = Status::Complete;
  std::int64_t completed_at = 0;
  bool block_noise = false;
  std::map<int, int> size_bits;
  std::map<std::int64_t, std::map<int, int>> weight_bits;
  std::vector<std::int8_t> since_blocks;  // 0 silence, 1 pulse or collision, 2 anything else
  std::int64_t closing_round = 0;         // set on the node that closes the phase
};

NodeState initial_state(const Label& label);

/// Absorbs the observation of the previous round, then returns the action
/// for the next one. Throws DesyncError on observations the protocol rules
/// out.
radio::RoundAction node_step(NodeState& s, const radio::Observation& previous);

/// Applies the observation of round `round` without choosing an action.
void absorb(NodeState& s, std::int64_t round, const radio::Observation& obs);

bool is_terminal(const NodeState& s);

// ---------------------------------------------------------------------------
// Orchestration
// ---------------------------------------------------------------------------

/// Round cap 64 * D * n^2 * (floor(log Delta)+1); the multiplier can be
/// overridden via RSD_ROUND_CAP_MULTIPLIER.
std::int64_t round_cap(const Graph& g, std::int64_t multiplier);
std::int64_t round_cap_multiplier_from_env();

/// Knowledge of every node at the end of a given round.
struct ParameterSnapshot {
  std::int64_t round = 0;
  std::vector<std::optional<std::int64_t>> delta;
  std::vector<std::optional<int>> level;
  std::vector<std::optional<std::int64_t>> height;
};

struct RunOptions {
  bool record_trace = false;
  std::int64_t cap_multiplier = 64;
  /// Snapshot knowledge at the end of this round (0 = the oracle's t1).
  std::int64_t snapshot_round = 0;
};

struct ProtocolResult {
  bool ok = false;
  std::string failure;
  std::vector<std::optional<std::int64_t>> outputs;
  std::int64_t rounds_used = 0;
  std::int64_t round_cap = 0;
  std::vector<radio::RoundRecord> trace;
  std::vector<NodeState> final_states;
  ParameterSnapshot snapshot;
  std::size_t max_label_bits = 0;
  double mean_label_bits = 0;
  LevelDecomposition decomposition;
  UpperSetPlan plan;
  WeightMap weights;
  LabelingScheme labels;
};

/// Oracle labeling, automata, simulation. Throws std::invalid_argument for
/// n = 1; protocol failures (desync, cap exhaustion, wrong outputs) are
/// reported through `ok` / `failure`.
ProtocolResult run_protocol(const Graph& g, const RunOptions& opt = {});

/// JSON report: n, delta, h, rounds_used, max_label_bits, outputs_ok,
/// bound_Dn2logDelta.
std::string report_json(const Graph& g, const ProtocolResult& r);

}  // namespace rsd::protocol
