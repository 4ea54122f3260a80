#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "rsd/graph.hpp"
#include "rsd/labeling.hpp"

namespace rsd::radio {

struct WavePulse {
  friend bool operator==(const WavePulse&, const WavePulse&) = default;
};
struct DeltaLearn {
  Tag tag;
  friend bool operator==(const DeltaLearn&, const DeltaLearn&) = default;
};
struct HopValue {
  std::int64_t height = 1;
  friend bool operator==(const HopValue&, const HopValue&) = default;
};
struct CollisionTagMsg {
  Tag tag;
  friend bool operator==(const CollisionTagMsg&, const CollisionTagMsg&) = default;
};
struct WeightReport {
  Tag tag;
  std::int64_t weight = 1;
  friend bool operator==(const WeightReport&, const WeightReport&) = default;
};
struct Stop {
  friend bool operator==(const Stop&, const Stop&) = default;
};
struct Opaque {
  std::string payload;
  friend bool operator==(const Opaque&, const Opaque&) = default;
};

using Message = std::variant<WavePulse, DeltaLearn, HopValue, CollisionTagMsg, WeightReport, Stop, Opaque>;

/// Short variant name used in trace files.
const char* message_kind(const Message& m);

/// Listen when empty, otherwise transmit the message.
struct RoundAction {
  std::optional<Message> transmit;

  static RoundAction listen() { return {}; }
  static RoundAction send(Message m) { return RoundAction{std::move(m)}; }
  bool transmitting() const { return transmit.has_value(); }
  friend bool operator==(const RoundAction&, const RoundAction&) = default;
};

struct Silence {
  friend bool operator==(const Silence&, const Silence&) = default;
};
struct Heard {
  Message message;
  friend bool operator==(const Heard&, const Heard&) = default;
};
struct CollisionNoise {
  friend bool operator==(const CollisionNoise&, const CollisionNoise&) = default;
};
struct NotListening {
  friend bool operator==(const NotListening&, const NotListening&) = default;
};

using Observation = std::variant<Silence, Heard, CollisionNoise, NotListening>;

/// Heard or collision.
inline bool non_silent(const Observation& o) {
  return std::holds_alternative<Heard>(o) || std::holds_alternative<CollisionNoise>(o);
}

/// Heard message of type M, if any.
template <class M>
const M* heard_as(const Observation& o) {
  if (const auto* h = std::get_if<Heard>(&o)) return std::get_if<M>(&h->message);
  return nullptr;
}

/// The radio rule: transmitters observe NotListening; a listener with no
/// transmitting neighbor observes Silence, with exactly one Heard, with
/// two or more CollisionNoise.
std::vector<Observation> resolve_round(const Graph& g, const std::vector<RoundAction>& actions);

struct RoundRecord {
  std::vector<RoundAction> actions;
  std::vector<Observation> observations;
};

struct SimulationError : std::runtime_error {
  SimulationError(int round, NodeId node, const std::string& what)
      : std::runtime_error("round " + std::to_string(round) + ", node " + std::to_string(node) + ": " + what),
        round(round),
        node(node) {}
  int round;
  NodeId node;
};

template <class State>
struct Simulation {
  std::vector<RoundRecord> trace;  // trace[t-1] is round t; empty unless recorded
  std::vector<State> states;
  int rounds = 0;
  bool all_terminal = false;
  /// Set when a node's step threw; the trace then ends before that round.
  std::optional<SimulationError> error;
};

/// Drives one synchronous execution. `step(state, obs)` receives the
/// observation of the previous round (Silence before round 1), updates
/// the state and returns this round's action; `terminal(state)` stops the
/// run once it holds for every node. `observer(round, states, obs)` runs after
/// each round's observations have been produced and receives them.
template <class State>
Simulation<State> run(const Graph& g, std::vector<State> init,
                      const std::function<RoundAction(State&, const Observation&)>& step,
                      const std::function<bool(const State&)>& terminal, int max_rounds, bool record_trace,
                      const std::function<void(int, const std::vector<State>&, const std::vector<Observation>&)>& observer = {}) {
  Simulation<State> sim;
  sim.states = std::move(init);
  const auto n = static_cast<std::size_t>(g.size());
  if (sim.states.size() != n) throw std::invalid_argument("one initial state per node required");
  std::vector<Observation> last(n, Silence{});
  std::vector<RoundAction> actions(n);
  auto everyone_done = [&] {
    for (const auto& s : sim.states)
      if (!terminal(s)) return false;
    return true;
  };
  for (int t = 1; t <= max_rounds; ++t) {
    if (everyone_done()) {
      sim.all_terminal = true;
      return sim;
    }
    for (std::size_t v = 0; v < n; ++v) {
      try {
        actions[v] = step(sim.states[v], last[v]);
      } catch (const SimulationError& e) {
        sim.error = e;
        return sim;
      } catch (const std::exception& e) {
        sim.error = SimulationError(t, static_cast<NodeId>(v), e.what());
        return sim;
      }
    }
    last = resolve_round(g, actions);
    sim.rounds = t;
    if (record_trace) sim.trace.push_back(RoundRecord{actions, last});
    if (observer) observer(t, sim.states, last);
  }
  sim.all_terminal = everyone_done();
  return sim;
}

/// Trace file: "round node action observation" with action L or T:<kind>
/// and observation -, S, C or H:<kind>.
std::string format_trace(const std::vector<RoundRecord>& trace);

/// Re-derives each round's observations from its actions.
bool trace_consistent(const Graph& g, const std::vector<RoundRecord>& trace);

}  // namespace rsd::radio
