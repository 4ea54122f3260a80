#include <doctest.h>

#include <optional>
#include <string>

#include "rsd/generators.hpp"
#include "rsd/radio.hpp"
#include "rsd/wave.hpp"

using namespace rsd;

namespace {

wave::Bits bits(const std::string& s) {
  wave::Bits b;
  for (char c : s) b.push_back(c - '0');
  return b;
}

// p* computed digit by digit from the value, without the module.
std::string reference_pattern(std::uint64_t x) {
  std::string digits;
  for (; x > 0; x /= 2) digits.insert(digits.begin(), static_cast<char>('0' + x % 2));
  std::string p;
  for (char c : digits) p += c == '1' ? "10" : "00";
  return p + "11";
}

struct RelayState {
  std::int64_t round = 0;
  bool source = false;
  std::uint64_t value = 0;
  wave::Listener listener;
  wave::Sender sender;
  std::optional<wave::Listener::Result> got;
};

}  // namespace

TEST_CASE("wave encoding examples") {
  CHECK(wave::encode(13) == bits("1010001011"));
  CHECK(wave::encode(1) == bits("1011"));
  CHECK(wave::encode(5) == bits("10001011"));
  CHECK(wave::decode(bits("001011")) == 1);
  CHECK(wave::schedule_length(13) == 10);
}

TEST_CASE("wave identity") {
  for (std::uint64_t x = 1; x <= 4096; ++x) {
    const auto p = wave::encode(x);
    CHECK(p == bits(reference_pattern(x)));
    CHECK(wave::decode(p) == x);
    CHECK(static_cast<int>(p.size()) == wave::schedule_length(x));
  }
}

TEST_CASE("malformed waves") {
  CHECK_THROWS_AS(wave::decode(bits("")), wave::MalformedWave);
  CHECK_THROWS_AS(wave::decode(bits("11")), wave::MalformedWave);
  CHECK_THROWS_AS(wave::decode(bits("0111")), wave::MalformedWave);
  CHECK_THROWS_AS(wave::decode(bits("1010")), wave::MalformedWave);
  CHECK_THROWS_AS(wave::decode(bits("101100")), wave::MalformedWave);
  CHECK_THROWS_AS(wave::decode(bits("101")), wave::MalformedWave);
  CHECK_THROWS_AS(wave::decode(bits("0011")), wave::MalformedWave);
}

TEST_CASE("listener decodes from observations") {
  wave::Listener l;
  const auto p = wave::encode(13);
  std::optional<wave::Listener::Result> r;
  CHECK_FALSE(l.feed(1, radio::Silence{}));
  for (std::size_t i = 0; i < p.size(); ++i) {
    const std::int64_t round = 2 + static_cast<std::int64_t>(i);
    radio::Observation o = radio::Silence{};
    if (p[i]) o = i % 3 == 0 ? radio::Observation{radio::CollisionNoise{}} : radio::Observation{radio::Heard{radio::WavePulse{}}};
    r = l.feed(round, o);
    if (i + 1 < p.size()) CHECK_FALSE(r);
  }
  REQUIRE(r);
  CHECK(r->value == 13);
  CHECK(r->finish_round == 11);
}

TEST_CASE("Wave(13) crosses a path one hop per 2k+2 rounds") {
  const NodeId n = 6;
  const auto g = gen::path(n);
  std::vector<RelayState> init(static_cast<std::size_t>(n));
  init[0].source = true;
  init[0].sender = wave::Sender(13, 1);
  auto step = [](RelayState& s, const radio::Observation& prev) {
    if (s.round > 0 && !s.source && !s.got) {
      s.got = s.listener.feed(s.round, prev);
      if (s.got) s.sender = wave::Sender(s.got->value, s.round + 1);
    }
    ++s.round;
    return s.sender.action(s.round);
  };
  auto done = [](const RelayState& s) { return s.source ? s.round > 10 : s.got.has_value(); };
  const auto sim = radio::run<RelayState>(g, init, step, done, 200, true);
  REQUIRE(sim.all_terminal);
  CHECK(radio::trace_consistent(g, sim.trace));
  for (NodeId j = 1; j < n; ++j) {
    REQUIRE(sim.states[j].got);
    CHECK(sim.states[j].got->value == 13);
    CHECK(sim.states[j].got->finish_round == j * wave::schedule_length(13));
  }
}
