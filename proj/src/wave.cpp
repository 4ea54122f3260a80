#include "rsd/wave.hpp"

#include "rsd/labeling.hpp"

namespace rsd::wave {

Bits encode(std::uint64_t x) {
  if (x == 0) throw std::invalid_argument("Wave carries positive integers only");
  Bits out;
  for (int b : msb_bits(x)) {
    out.push_back(b);
    out.push_back(0);
  }
  out.push_back(1);
  out.push_back(1);
  return out;
}

std::uint64_t decode(const Bits& pattern) {
  Bits value_bits;
  std::size_t i = 0;
  for (; i + 1 < pattern.size(); i += 2) {
    const int a = pattern[i], b = pattern[i + 1];
    if (a == 1 && b == 1) break;
    if (b == 1) throw MalformedWave("01 pair at position " + std::to_string(i));
    value_bits.push_back(a);
  }
  if (i + 1 >= pattern.size()) throw MalformedWave("missing 11 terminator");
  if (i + 2 != pattern.size()) throw MalformedWave("bits after terminator");
  if (value_bits.size() > 64) throw MalformedWave("value wider than 64 bits");
  const auto x = from_msb_bits(value_bits);
  if (x == 0) throw MalformedWave("zero value");
  return x;
}

int schedule_length(std::uint64_t x) { return 2 * bitlen(x) + 2; }

radio::RoundAction Sender::action(std::int64_t round) const {
  if (active(round) && bits_[static_cast<std::size_t>(round - first_)] == 1)
    return radio::RoundAction::send(radio::WavePulse{});
  return radio::RoundAction::listen();
}

std::optional<Listener::Result> Listener::feed(std::int64_t round, const radio::Observation& obs) {
  const bool on = radio::non_silent(obs);
  if (bits_.empty() && !on) return std::nullopt;
  bits_.push_back(on ? 1 : 0);
  const auto k = bits_.size();
  if (k >= 2 && bits_[k - 1] == 1 && bits_[k - 2] == 1) {
    Result r{decode(bits_), round};
    bits_.clear();
    return r;
  }
  return std::nullopt;
}

}  // namespace rsd::wave
