#include "rsd/radio.hpp"

#include <sstream>

namespace rsd::radio {

namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

}  // namespace

const char* message_kind(const Message& m) {
  return std::visit(Overloaded{
                        [](const WavePulse&) { return "Wave"; },
                        [](const DeltaLearn&) { return "Delta"; },
                        [](const HopValue&) { return "Hop"; },
                        [](const CollisionTagMsg&) { return "Coll"; },
                        [](const WeightReport&) { return "Weight"; },
                        [](const Stop&) { return "Stop"; },
                        [](const Opaque&) { return "Opaque"; },
                    },
                    m);
}

std::vector<Observation> resolve_round(const Graph& g, const std::vector<RoundAction>& actions) {
  const auto n = static_cast<std::size_t>(g.size());
  std::vector<Observation> obs(n, Silence{});
  for (std::size_t v = 0; v < n; ++v) {
    if (actions[v].transmitting()) {
      obs[v] = NotListening{};
      continue;
    }
    int count = 0;
    const Message* heard = nullptr;
    for (NodeId w : g.neighbors(static_cast<NodeId>(v))) {
      if (actions[w].transmitting()) {
        ++count;
        heard = &*actions[w].transmit;
        if (count > 1) break;
      }
    }
    if (count == 1)
      obs[v] = Heard{*heard};
    else if (count > 1)
      obs[v] = CollisionNoise{};
  }
  return obs;
}

std::string format_trace(const std::vector<RoundRecord>& trace) {
  std::ostringstream out;
  for (std::size_t t = 0; t < trace.size(); ++t) {
    const auto& rec = trace[t];
    for (std::size_t v = 0; v < rec.actions.size(); ++v) {
      out << t + 1 << ' ' << v << ' ';
      if (rec.actions[v].transmitting())
        out << "T:" << message_kind(*rec.actions[v].transmit);
      else
        out << 'L';
      out << ' ';
      std::visit(Overloaded{
                     [&](const Silence&) { out << 'S'; },
                     [&](const Heard& h) { out << "H:" << message_kind(h.message); },
                     [&](const CollisionNoise&) { out << 'C'; },
                     [&](const NotListening&) { out << '-'; },
                 },
                 rec.observations[v]);
      out << '\n';
    }
  }
  return out.str();
}

bool trace_consistent(const Graph& g, const std::vector<RoundRecord>& trace) {
  for (const auto& rec : trace)
    if (resolve_round(g, rec.actions) != rec.observations) return false;
  return true;
}

}  // namespace rsd::radio
