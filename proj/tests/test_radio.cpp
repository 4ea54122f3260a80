#include <doctest.h>

#include <string>
#include <utility>
#include <vector>

#include "rsd/generators.hpp"
#include "rsd/radio.hpp"

using namespace rsd;
using namespace rsd::radio;

namespace {

// Counts transmitting neighbors straight from an edge list.
std::vector<Observation> reference_round(NodeId n, const std::vector<std::pair<NodeId, NodeId>>& edges,
                                         const std::vector<RoundAction>& actions) {
  std::vector<int> count(static_cast<std::size_t>(n), 0);
  std::vector<NodeId> sender(static_cast<std::size_t>(n), -1);
  for (auto [u, v] : edges) {
    if (actions[u].transmitting()) ++count[v], sender[v] = u;
    if (actions[v].transmitting()) ++count[u], sender[u] = v;
  }
  std::vector<Observation> out;
  for (NodeId v = 0; v < n; ++v) {
    if (actions[v].transmitting())
      out.emplace_back(NotListening{});
    else if (count[v] == 0)
      out.emplace_back(Silence{});
    else if (count[v] == 1)
      out.emplace_back(Heard{*actions[sender[v]].transmit});
    else
      out.emplace_back(CollisionNoise{});
  }
  return out;
}

}  // namespace

TEST_CASE("resolve_round on a star") {
  const auto g = gen::star(3);
  std::vector<RoundAction> a(4);
  a[0] = RoundAction::send(Stop{});
  auto o = resolve_round(g, a);
  CHECK(o[0] == Observation{NotListening{}});
  for (int v = 1; v <= 3; ++v) CHECK(o[v] == Observation{Heard{Stop{}}});

  a.assign(4, RoundAction::listen());
  a[1] = RoundAction::send(HopValue{3});
  o = resolve_round(g, a);
  CHECK(o[0] == Observation{Heard{HopValue{3}}});
  CHECK(o[1] == Observation{NotListening{}});
  CHECK(o[2] == Observation{Silence{}});

  a[2] = RoundAction::send(WavePulse{});
  o = resolve_round(g, a);
  CHECK(o[0] == Observation{CollisionNoise{}});
  CHECK(o[3] == Observation{Silence{}});

  a.assign(4, RoundAction::listen());
  o = resolve_round(g, a);
  for (const auto& x : o) CHECK(x == Observation{Silence{}});
}

TEST_CASE("resolve_round agrees with an edge-list count") {
  gen::Rng rng(5);
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const auto g = gen::random_graph(30, 6, seed, 20);
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId u = 0; u < g.size(); ++u)
      for (NodeId v : g.neighbors(u))
        if (u < v) edges.emplace_back(u, v);
    for (int round = 0; round < 20; ++round) {
      std::vector<RoundAction> a(static_cast<std::size_t>(g.size()));
      for (NodeId v = 0; v < g.size(); ++v)
        if (gen::uniform_below(rng, 4) == 0) a[v] = RoundAction::send(Opaque{std::to_string(v)});
      CHECK(resolve_round(g, a) == reference_round(g.size(), edges, a));
    }
  }
}

TEST_CASE("run with zero rounds") {
  const auto g = gen::path(3);
  auto step = [](int&, const Observation&) { return RoundAction::listen(); };
  auto never = [](const int&) { return false; };
  const auto sim = run<int>(g, {0, 0, 0}, step, never, 0, true);
  CHECK(sim.rounds == 0);
  CHECK(sim.trace.empty());
  CHECK_FALSE(sim.all_terminal);
  CHECK_FALSE(sim.error);
}

TEST_CASE("run delivers observations in the next round") {
  const auto g = gen::path(2);
  struct S {
    bool sender = false;
    int round = 0;
    std::vector<Observation> seen;
  };
  std::vector<S> init(2);
  init[0].sender = true;
  auto step = [](S& s, const Observation& prev) {
    s.seen.push_back(prev);
    ++s.round;
    return s.sender && s.round == 1 ? RoundAction::send(Stop{}) : RoundAction::listen();
  };
  auto at3 = [](const S& s) { return s.round >= 3; };
  const auto sim = run<S>(g, init, step, at3, 10, true);
  CHECK(sim.all_terminal);
  CHECK(sim.rounds == 3);
  CHECK(sim.states[1].seen[0] == Observation{Silence{}});
  CHECK(sim.states[1].seen[1] == Observation{Heard{Stop{}}});
  CHECK(sim.states[0].seen[1] == Observation{NotListening{}});
}

TEST_CASE("a throwing step ends the run with the error recorded") {
  const auto g = gen::path(2);
  auto step = [](int& s, const Observation&) {
    if (++s == 3) throw std::runtime_error("boom");
    return RoundAction::send(WavePulse{});
  };
  auto never = [](const int&) { return false; };
  const auto sim = run<int>(g, {0, 5}, step, never, 10, true);
  REQUIRE(sim.error);
  CHECK(sim.error->round == 3);
  CHECK(sim.error->node == 0);
  CHECK(sim.trace.size() == 2);
}

TEST_CASE("trace file and consistency") {
  const auto g = gen::path(2);
  std::vector<RoundAction> a{RoundAction::send(WeightReport{{1, 1}, 4}), RoundAction::listen()};
  std::vector<RoundRecord> trace{{a, resolve_round(g, a)}};
  CHECK(format_trace(trace) == "1 0 T:Weight -\n1 1 L H:Weight\n");
  CHECK(trace_consistent(g, trace));
  trace[0].observations[1] = CollisionNoise{};
  CHECK_FALSE(trace_consistent(g, trace));
}
