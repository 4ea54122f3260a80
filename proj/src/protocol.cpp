#include "rsd/protocol.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

namespace rsd::protocol {

using radio::Observation;
using radio::RoundAction;

// ---------------------------------------------------------------------------
// Timeline arithmetic
// ---------------------------------------------------------------------------

std::int64_t wave_span(std::int64_t levels, std::int64_t value) {
  return levels * wave::schedule_length(static_cast<std::uint64_t>(value));
}

std::int64_t delta_wave_end(std::int64_t delta, std::int64_t h) {
  const std::int64_t m = bitlen(static_cast<std::uint64_t>(delta));
  return m + wave_span(h, delta);
}

std::int64_t hop_report_delay(std::int64_t delta) { return wave::schedule_length(delta); }

std::int64_t parameter_learning_formula(std::int64_t delta, std::int64_t h) {
  return delta_wave_end(delta, h) + h + wave_span(h, h);
}

std::int64_t parameter_learning_end(std::int64_t delta, std::int64_t h) {
  return parameter_learning_formula(delta, h) + hop_report_delay(delta);
}

std::int64_t block_length(std::int64_t delta, std::int64_t max_weight) {
  const std::int64_t m = bitlen(static_cast<std::uint64_t>(delta));
  return m + max_weight * m + 1;
}

Timeline compute_timeline(std::int64_t delta, std::int64_t h, const std::vector<std::int64_t>& max_weights,
                          const std::vector<std::int64_t>& blocks) {
  if (delta < 1 || h < 1) throw std::invalid_argument("timeline needs Delta >= 1 and h >= 1");
  Timeline tl;
  tl.m = bitlen(static_cast<std::uint64_t>(delta));
  tl.t1 = parameter_learning_end(delta, h);
  std::int64_t start = tl.t1;
  const std::size_t known = std::min(max_weights.size(), blocks.size());
  for (std::size_t i = 0; i < known; ++i) {
    PhaseTimes p;
    p.start = start;
    p.max_weight = max_weights[i];
    p.blocks_start = start + wave_span(2 * h, p.max_weight);
    p.tau = block_length(delta, p.max_weight);
    p.stop_round = p.blocks_start + blocks[i] * p.tau;
    tl.phases.push_back(p);
    start = p.stop_round + wave_span(2 * h, p.stop_round);
  }
  tl.final_start = start;
  return tl;
}

// ---------------------------------------------------------------------------
// Node automaton
// ---------------------------------------------------------------------------

const char* stage_name(Stage s) {
  switch (s) {
    case Stage::ParameterLearning: return "parameter-learning";
    case Stage::HeightLearning: return "height-learning";
    case Stage::SizeLearning: return "size-learning";
    case Stage::Final: return "final";
    case Stage::Done: return "done";
  }
  return "?";
}

namespace {

[[noreturn]] void desync(const NodeState& s, const std::string& what) {
  std::ostringstream out;
  out << "protocol desynchronized in " << stage_name(s.stage);
  if (s.stage == Stage::SizeLearning) out << " phase " << s.phase;
  out << ": " << what;
  throw DesyncError(out.str());
}

bool pulse_or_noise(const Observation& o) {
  return radio::heard_as<radio::WavePulse>(o) || std::holds_alternative<radio::CollisionNoise>(o);
}

/// Hides typed messages that belong to another stage from a wave listener.
template <class Ignored>
Observation without(const Observation& o) {
  if (radio::heard_as<Ignored>(o)) return radio::Silence{};
  return o;
}

std::int64_t levels_of_children(const NodeState& s) { return *s.height - s.phase + 1; }

void set_weight(NodeState& s, std::int64_t w, std::int64_t round) {
  if (s.weight) desync(s, "weight assigned twice");
  s.weight = w;
  s.weight_round = round;
}

void learned_parameters(NodeState& s, std::int64_t round) {
  s.params_round = round;
  s.t1 = parameter_learning_end(*s.delta, *s.height);
}

void start_phase(NodeState& s, int phase, std::int64_t start);
void start_final(NodeState& s, std::int64_t start);

void begin_size_learning(NodeState& s) {
  if (*s.level == *s.height) set_weight(s, 1, *s.t1);
  start_phase(s, 1, *s.t1);
}

void start_phase(NodeState& s, int phase, std::int64_t start) {
  if (phase > *s.height) {
    start_final(s, start);
    return;
  }
  s.stage = Stage::SizeLearning;
  s.phase = phase;
  s.step = PhaseStep::MaxWeightWave;
  s.role = Role::Bystander;
  s.status = Status::Complete;
  s.completed_at = 0;
  s.closing_round = 0;
  s.since_blocks.clear();
  s.listener.reset();
  s.listen_from = start + 1;
  PhaseTimes p;
  p.start = start;
  if (s.label.has(kHeaviest) && *s.level == levels_of_children(s)) {
    if (!s.weight) desync(s, "heaviest node does not know its weight");
    s.senders.emplace_back(static_cast<std::uint64_t>(*s.weight), start + 1);
    p.max_weight = *s.weight;
    p.blocks_start = start + wave_span(2 * *s.height, p.max_weight);
    p.tau = block_length(*s.delta, p.max_weight);
  }
  s.phases.push_back(p);
}

void start_final(NodeState& s, std::int64_t start) {
  s.stage = Stage::Final;
  s.listener.reset();
  s.listen_from = start + 1;
  if (s.label.has(kRoot)) {
    if (!s.weight) desync(s, "root reached the final stage without its weight");
    s.output = *s.weight;
    s.output_round = start;
    s.senders.emplace_back(static_cast<std::uint64_t>(*s.output), start + 1);
    s.finish_round = s.senders.back().last_round();
  }
}

void enter_blocks(NodeState& s) {
  const int children_level = static_cast<int>(levels_of_children(s));
  s.step = PhaseStep::Blocks;
  s.since_blocks.clear();
  if (*s.level == children_level) {
    s.role = Role::Child;
    s.status = Status::Incomplete;
    if (!s.weight) desync(s, "child enters a phase without its weight");
  } else if (*s.level == children_level - 1) {
    if (s.label.has(kUpperSet)) {
      s.role = Role::UpperMember;
      s.status = Status::Incomplete;
    } else {
      set_weight(s, 1, s.phases.back().blocks_start);
    }
  }
}

// Relay a decoded wave unless this node sits at the largest distance the
// wave can travel, where nobody is left to inform.
void relay(NodeState& s, std::uint64_t value, std::int64_t finish, std::int64_t distance, std::int64_t bound) {
  if (distance < bound) s.senders.emplace_back(value, finish + 1);
}

std::int64_t wave_distance(const NodeState& s, std::int64_t start, std::int64_t finish, std::int64_t value) {
  const std::int64_t len = wave::schedule_length(static_cast<std::uint64_t>(value));
  if ((finish - start) % len != 0 || finish <= start) desync(s, "wave finished off its level grid");
  return (finish - start) / len;
}

/// Value of a Wave(Delta) ending at the last recorded round, if any.
/// codes[t-1] is the observation of round t.
std::optional<std::uint64_t> match_delta_wave(const std::vector<std::int8_t>& codes) {
  const auto rr = static_cast<std::int64_t>(codes.size());
  if (rr < 2 || codes[rr - 1] != 1 || codes[rr - 2] != 1) return std::nullopt;
  for (int m = 1; m <= 62; ++m) {
    const std::int64_t len = 2 * m + 2;
    const std::int64_t sigma = rr - len + 1;
    if (sigma < m + 1) break;
    if ((sigma - m - 1) % len != 0) continue;
    bool ok = true;
    for (std::int64_t q = m + 1; q < sigma && ok; ++q) ok = codes[q - 1] == 0;
    wave::Bits pattern;
    for (std::int64_t q = sigma; q <= rr && ok; ++q) {
      ok = codes[q - 1] != 2;
      pattern.push_back(codes[q - 1]);
    }
    if (!ok || pattern[0] != 1) continue;
    try {
      const auto x = wave::decode(pattern);
      if (bitlen(x) == m) return x;
    } catch (const wave::MalformedWave&) {
    }
  }
  return std::nullopt;
}

void absorb_parameter_learning(NodeState& s, std::int64_t rr, const Observation& obs) {
  if (s.label.has(kRoot)) {
    const int m = s.label.delta_tag.id;
    if (const auto* dl = radio::heard_as<radio::DeltaLearn>(obs)) {
      if (dl->tag.id != rr) desync(s, "Delta bit arrived in the wrong round");
      s.delta_bits[dl->tag.id] = dl->tag.bit;
    }
    if (rr == m) {
      std::vector<int> bits;
      for (int i = 1; i <= m; ++i) {
        auto it = s.delta_bits.find(i);
        if (it == s.delta_bits.end()) desync(s, "missing Delta bit " + std::to_string(i));
        bits.push_back(it->second);
      }
      const auto delta = static_cast<std::int64_t>(from_msb_bits(bits));
      if (delta < 1 || bitlen(static_cast<std::uint64_t>(delta)) != m) desync(s, "malformed Delta bits");
      s.delta = delta;
      s.m = m;
      s.level = 0;
      s.senders.emplace_back(static_cast<std::uint64_t>(delta), rr + 1);
      s.stage = Stage::HeightLearning;
    }
    return;
  }
  // Rounds 1..m may carry Delta bits or their collisions, so Wave(Delta)
  // is recognised as a suffix: p*(Delta) on the level grid after m, with
  // silence between round m and its first pulse.
  s.since_blocks.push_back(pulse_or_noise(obs) ? 1 : (std::holds_alternative<radio::Silence>(obs) ? 0 : 2));
  auto got = match_delta_wave(s.since_blocks);
  if (!got) return;
  const auto delta = static_cast<std::int64_t>(*got);
  const int m = bitlen(*got);
  const std::int64_t span = wave::schedule_length(*got);
  s.since_blocks.clear();
  s.delta = delta;
  s.m = m;
  s.level = static_cast<int>((rr - m) / span);
  s.senders.emplace_back(*got, rr + 1);
  s.echo_round = rr + span + 1;
  s.stage = Stage::HeightLearning;
  if (s.label.has(kDeepest)) {
    s.height = *s.level;
    s.one_shot.emplace(rr + span + 1, radio::HopValue{*s.height});
    learned_parameters(s, rr);
  }
}

void absorb_height_learning(NodeState& s, std::int64_t rr, const Observation& obs) {
  const auto* hop = radio::heard_as<radio::HopValue>(obs);
  if (s.label.has(kRoot)) {
    if (!hop) return;
    s.height = hop->height;
    s.senders.emplace_back(static_cast<std::uint64_t>(hop->height), rr + 1);
    learned_parameters(s, rr);
    const std::int64_t wave_end = rr + wave_span(*s.height, *s.height);
    if (wave_end != *s.t1) desync(s, "hop report reached r in the wrong round");
    s.finish_round = wave_end;
    begin_size_learning(s);
    return;
  }
  if (hop && s.label.has(kHopRelay) && !s.hop_relayed) {
    s.hop_relayed = true;
    s.one_shot.emplace(rr + 1, radio::HopValue{hop->height});
  }
  if (s.label.has(kDeepest)) {
    // Already knows h; waits out Wave(h), which it would not relay.
    if (rr == *s.t1) begin_size_learning(s);
    return;
  }
  const std::int64_t span = wave::schedule_length(static_cast<std::uint64_t>(*s.delta));
  if (rr < s.echo_round) return;
  if (rr == s.echo_round) {
    // Nodes one level down relay Wave(Delta) right after this node did.
    s.listen_from = pulse_or_noise(obs) ? rr + span : rr + 1;
    return;
  }
  if (rr < s.listen_from) return;
  auto got = s.listener.feed(rr, without<radio::HopValue>(obs));
  if (!got) return;
  const auto h = static_cast<std::int64_t>(got->value);
  const std::int64_t start = delta_wave_end(*s.delta, h) + hop_report_delay(*s.delta) + h;
  const std::int64_t dist = wave_distance(s, start, rr, h);
  if (dist != *s.level) desync(s, "Wave(h) arrival contradicts the level");
  s.height = h;
  learned_parameters(s, rr);
  if (rr != *s.t1 - wave_span(h - dist, h)) desync(s, "Wave(h) timing");
  relay(s, got->value, rr, dist, h);
  begin_size_learning(s);
}

int8_t observation_code(const Observation& o) {
  if (std::holds_alternative<radio::Silence>(o)) return 0;
  if (pulse_or_noise(o)) return 1;
  return 2;
}

/// Looks for Wave(T) ending at `rr` in the observations since t2'(i):
/// T is a block-final round, the rounds between T and the first pulse are
/// silent, the gap is a whole number of wave slots within 2h, and the
/// pattern is exactly p*(T).
std::optional<std::int64_t> match_stop_wave(const NodeState& s, std::int64_t rr) {
  const auto& p = s.phases.back();
  const auto& obs = s.since_blocks;
  const std::int64_t first = p.blocks_start + 1;  // round of obs[0]
  auto at = [&](std::int64_t round) { return obs[static_cast<std::size_t>(round - first)]; };
  if (rr - first < 1 || at(rr) != 1 || at(rr - 1) != 1) return std::nullopt;
  const std::int64_t lower = std::max(s.completed_at, p.blocks_start + p.tau);
  for (std::int64_t T = p.blocks_start + ((rr - p.blocks_start) / p.tau) * p.tau; T >= lower; T -= p.tau) {
    if (T >= rr) continue;
    const auto pattern = wave::encode(static_cast<std::uint64_t>(T));
    const auto len = static_cast<std::int64_t>(pattern.size());
    const std::int64_t sigma = rr - len + 1;
    if (sigma <= T) continue;
    if ((sigma - T - 1) % len != 0) continue;
    if ((sigma - T - 1) / len + 1 > 2 * *s.height) continue;
    bool ok = true;
    for (std::int64_t q = T + 1; q < sigma && ok; ++q) ok = at(q) == 0;
    for (std::int64_t i = 0; i < len && ok; ++i) ok = at(sigma + i) == pattern[static_cast<std::size_t>(i)];
    if (ok) return T;
  }
  return std::nullopt;
}

void finish_phase(NodeState& s, std::int64_t stop_round, std::int64_t next_start) {
  auto& p = s.phases.back();
  p.stop_round = stop_round;
  s.step = PhaseStep::StopWave;
  start_phase(s, s.phase + 1, next_start);
}

// Bits ordered by tag id, most significant first.
std::optional<std::uint64_t> tagged_value(const std::map<int, int>& by_id) {
  std::vector<int> bits;
  for (auto [id, bit] : by_id) bits.push_back(bit);
  if (bits.empty()) return std::nullopt;
  return from_msb_bits(bits);
}

void evaluate_block(NodeState& s, std::int64_t rr) {
  const auto d = tagged_value(s.size_bits);
  if (!d) return;
  std::uint64_t counted = 0;
  std::int64_t w = 1;
  for (auto& [f, by_id] : s.weight_bits) {
    const auto df = tagged_value(by_id);
    if (!df) return;
    counted += *df;
    w += f * static_cast<std::int64_t>(*df);
  }
  if (s.block_noise || *d == 0 || counted != *d) return;
  const std::int64_t stop = rr + 1;
  set_weight(s, w, stop);
  s.status = Status::Complete;
  s.completed_at = stop;
  s.one_shot.emplace(stop, radio::Stop{});
  if (s.label.has(kPhaseCloser)) {
    s.senders.emplace_back(static_cast<std::uint64_t>(stop), stop + 1);
    s.closing_round = stop;
    finish_phase(s, stop, stop + wave_span(2 * *s.height, stop));
  }
}

void absorb_blocks(NodeState& s, std::int64_t rr, const Observation& obs) {
  const auto& p = s.phases.back();
  s.since_blocks.push_back(observation_code(obs));
  const std::int64_t offset = (rr - p.blocks_start - 1) % p.tau + 1;
  const int m = s.m;
  if (s.status == Status::Incomplete) {
    if (s.role == Role::Child) {
      if (offset == p.tau && (radio::heard_as<radio::Stop>(obs) || std::holds_alternative<radio::CollisionNoise>(obs))) {
        s.status = Status::Complete;
        s.completed_at = rr;
      }
      return;
    }
    // Upper-set member.
    if (offset == 1) {
      s.block_noise = false;
      s.size_bits.clear();
      s.weight_bits.clear();
    }
    if (offset == p.tau) return;
    if (std::holds_alternative<radio::CollisionNoise>(obs)) {
      s.block_noise = true;
    } else if (offset <= m) {
      if (const auto* c = radio::heard_as<radio::CollisionTagMsg>(obs)) {
        if (c->tag.id != offset) desync(s, "collision tag heard in a foreign slot");
        s.size_bits[c->tag.id] = c->tag.bit;
      } else if (std::holds_alternative<radio::Heard>(obs)) {
        desync(s, "unexpected message in a collision slot");
      }
    } else {
      if (const auto* w = radio::heard_as<radio::WeightReport>(obs)) {
        if (w->weight * m + w->tag.id != offset) desync(s, "weight report heard in a foreign slot");
        s.weight_bits[w->weight][w->tag.id] = w->tag.bit;
      } else if (std::holds_alternative<radio::Heard>(obs)) {
        desync(s, "unexpected message in a weight slot");
      }
    }
    if (offset == p.tau - 1) evaluate_block(s, rr);
    return;
  }
  if (auto T = match_stop_wave(s, rr)) {
    const std::int64_t dist = wave_distance(s, *T, rr, *T);
    relay(s, static_cast<std::uint64_t>(*T), rr, dist, 2 * *s.height);
    finish_phase(s, *T, *T + wave_span(2 * *s.height, *T));
  }
}

void absorb_size_learning(NodeState& s, std::int64_t rr, const Observation& obs) {
  if (rr < s.listen_from) return;
  auto& p = s.phases.back();
  if (s.step == PhaseStep::MaxWeightWave) {
    if (p.max_weight == 0) {
      auto got = s.listener.feed(rr, obs);
      if (got) {
        p.max_weight = static_cast<std::int64_t>(got->value);
        const std::int64_t dist = wave_distance(s, p.start, rr, p.max_weight);
        if (dist > 2 * *s.height) desync(s, "Wave(x) travelled beyond 2h");
        p.blocks_start = p.start + wave_span(2 * *s.height, p.max_weight);
        p.tau = block_length(*s.delta, p.max_weight);
        relay(s, got->value, rr, dist, 2 * *s.height);
      }
    }
    if (p.max_weight != 0 && rr == p.blocks_start) enter_blocks(s);
    return;
  }
  absorb_blocks(s, rr, obs);
}

void absorb_final(NodeState& s, std::int64_t rr, const Observation& obs) {
  if (s.output || rr < s.listen_from) return;
  auto got = s.listener.feed(rr, obs);
  if (!got) return;
  const std::int64_t dist = wave_distance(s, s.listen_from - 1, rr, static_cast<std::int64_t>(got->value));
  if (dist != *s.level) desync(s, "Wave(n) arrival contradicts the level");
  s.output = static_cast<std::int64_t>(got->value);
  s.output_round = rr;
  s.finish_round = rr;
  if (dist < *s.height) {
    s.senders.emplace_back(got->value, rr + 1);
    s.finish_round = s.senders.back().last_round();
  }
}

}  // namespace

NodeState initial_state(const Label& label) {
  NodeState s;
  s.label = label;
  return s;
}

void absorb(NodeState& s, std::int64_t rr, const Observation& obs) {
  switch (s.stage) {
    case Stage::ParameterLearning: absorb_parameter_learning(s, rr, obs); break;
    case Stage::HeightLearning: absorb_height_learning(s, rr, obs); break;
    case Stage::SizeLearning: absorb_size_learning(s, rr, obs); break;
    case Stage::Final: absorb_final(s, rr, obs); break;
    case Stage::Done: break;
  }
}

namespace {

RoundAction act(NodeState& s, std::int64_t t) {
  std::vector<radio::Message> out;
  for (const auto& snd : s.senders)
    if (auto a = snd.action(t); a.transmitting()) out.push_back(*a.transmit);
  std::erase_if(s.senders, [t](const wave::Sender& snd) { return snd.last_round() <= t; });
  if (auto it = s.one_shot.find(t); it != s.one_shot.end()) {
    out.push_back(it->second);
    s.one_shot.erase(it);
  }
  if (s.stage == Stage::ParameterLearning && s.label.has(kDeltaSource) && !s.label.has(kRoot) &&
      s.label.delta_tag.id == t)
    out.push_back(radio::DeltaLearn{s.label.delta_tag});
  if (s.stage == Stage::SizeLearning && s.step == PhaseStep::Blocks && s.role == Role::Child &&
      s.status == Status::Incomplete) {
    const auto& p = s.phases.back();
    const std::int64_t offset = (t - p.blocks_start - 1) % p.tau + 1;
    const auto& ct = s.label.collision_tag;
    const auto& wt = s.label.weight_tag;
    if (ct.id > 0 && offset == ct.id) out.push_back(radio::CollisionTagMsg{ct});
    if (wt.id > 0 && offset == *s.weight * s.m + wt.id) out.push_back(radio::WeightReport{wt, *s.weight});
  }
  if (out.size() > 1) desync(s, "two transmissions scheduled for round " + std::to_string(t));
  if (s.stage == Stage::Final && s.output && t > s.finish_round && s.senders.empty()) s.stage = Stage::Done;
  if (out.empty()) return RoundAction::listen();
  return RoundAction::send(std::move(out.front()));
}

}  // namespace

RoundAction node_step(NodeState& s, const Observation& previous) {
  const std::int64_t t = ++s.round;
  if (t > 1) absorb(s, t - 1, previous);
  return act(s, t);
}

bool is_terminal(const NodeState& s) { return s.stage == Stage::Done; }

// ---------------------------------------------------------------------------
// Orchestration
// ---------------------------------------------------------------------------

std::int64_t round_cap(const Graph& g, std::int64_t multiplier) {
  const std::int64_t n = g.size();
  const std::int64_t m = bitlen(static_cast<std::uint64_t>(std::max(1, g.max_degree())));
  return multiplier * std::max(1, g.diameter()) * n * n * m;
}

std::int64_t round_cap_multiplier_from_env() {
  if (const char* v = std::getenv("RSD_ROUND_CAP_MULTIPLIER")) {
    char* end = nullptr;
    const long long x = std::strtoll(v, &end, 10);
    if (end != v && *end == '\0' && x > 0) return x;
  }
  return 64;
}

ProtocolResult run_protocol(const Graph& g, const RunOptions& opt) {
  if (g.size() < 2) throw std::invalid_argument("size discovery needs at least two nodes");
  ProtocolResult res;
  Oracle oracle;
  try {
    oracle = build_oracle(g);
  } catch (const std::logic_error& e) {
    res.failure = std::string("labeling oracle: ") + e.what();
    return res;
  }
  res.decomposition = std::move(oracle.decomposition);
  const auto& d = res.decomposition;
  res.plan = std::move(oracle.plan);
  res.weights = std::move(oracle.weights);
  res.labels = std::move(oracle.labels);
  res.max_label_bits = res.labels.max_bits();
  res.mean_label_bits = res.labels.mean_bits();
  res.round_cap = round_cap(g, opt.cap_multiplier);

  std::vector<NodeState> init;
  init.reserve(static_cast<std::size_t>(g.size()));
  for (const auto& l : res.labels.labels) init.push_back(initial_state(l));

  const std::int64_t snap_round =
      opt.snapshot_round > 0 ? opt.snapshot_round : parameter_learning_end(d.delta, d.height);
  res.snapshot.round = snap_round;
  auto observer = [&](int t, const std::vector<NodeState>& states, const std::vector<Observation>& obs) {
    if (t != snap_round) return;
    // Knowledge at the end of round t includes round t's observations.
    for (std::size_t v = 0; v < states.size(); ++v) {
      NodeState copy = states[v];
      try {
        absorb(copy, t, obs[v]);
      } catch (const std::exception&) {
      }
      res.snapshot.delta.push_back(copy.delta);
      res.snapshot.level.push_back(copy.level);
      res.snapshot.height.push_back(copy.height);
    }
  };
  const std::function<RoundAction(NodeState&, const Observation&)> step_fn = node_step;
  const std::function<bool(const NodeState&)> terminal_fn = is_terminal;
  const int cap = static_cast<int>(std::min<std::int64_t>(res.round_cap, 2'000'000'000));
  try {
    auto sim = radio::run<NodeState>(g, std::move(init), step_fn, terminal_fn, cap, opt.record_trace, observer);
    res.trace = std::move(sim.trace);
    res.final_states = std::move(sim.states);
    if (sim.error)
      res.failure = sim.error->what();
    else if (!sim.all_terminal)
      res.failure = "round cap of " + std::to_string(res.round_cap) + " exhausted";
  } catch (const std::exception& e) {
    res.failure = e.what();
  }
  for (const auto& s : res.final_states) {
    res.outputs.push_back(s.output);
    res.rounds_used = std::max(res.rounds_used, s.finish_round);
  }
  if (res.failure.empty()) {
    bool all = !res.outputs.empty();
    for (const auto& o : res.outputs) all = all && o && *o == g.size();
    if (!all) res.failure = "outputs disagree with n";
  }
  res.ok = res.failure.empty();
  return res;
}

std::string report_json(const Graph& g, const ProtocolResult& r) {
  nlohmann::ordered_json j;
  j["n"] = g.size();
  j["delta"] = r.decomposition.delta;
  j["h"] = r.decomposition.height;
  j["rounds_used"] = r.rounds_used;
  j["max_label_bits"] = r.max_label_bits;
  j["outputs_ok"] = r.ok;
  j["bound_Dn2logDelta"] = r.round_cap;
  return j.dump();
}

}  // namespace rsd::protocol
