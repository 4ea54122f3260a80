#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rsd/radio.hpp"

namespace rsd::wave {

using Bits = std::vector<int>;

struct MalformedWave : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// p*: each bit of x (MSB first) becomes 10 or 00, then 11 is appended.
Bits encode(std::uint64_t x);

/// Inverse of encode over the non-silence pattern. Leading 00 pairs are
/// accepted as leading zero bits. Throws MalformedWave on a 01 pair, a
/// missing terminator, trailing bits, or a zero value.
std::uint64_t decode(const Bits& pattern);

/// Rounds a node needs to pass on Wave(x): 2 * bitlen(x) + 2.
int schedule_length(std::uint64_t x);

/// Bit-serial transmitter: transmits a pulse in rounds start+i where
/// p*[i] = 1 (i = 0-based).
class Sender {
 public:
  Sender() = default;
  Sender(std::uint64_t value, std::int64_t first_round) : bits_(encode(value)), first_(first_round) {}

  bool active(std::int64_t round) const {
    return !bits_.empty() && round >= first_ && round < first_ + static_cast<std::int64_t>(bits_.size());
  }
  /// Action for `round`; listen outside the schedule or on 0 bits.
  radio::RoundAction action(std::int64_t round) const;
  std::int64_t last_round() const { return first_ + static_cast<std::int64_t>(bits_.size()) - 1; }
  bool empty() const { return bits_.empty(); }

 private:
  Bits bits_;
  std::int64_t first_ = 0;
};

/// Receiver side: idle until the first non-silent round, then records
/// until two consecutive non-silent rounds.
class Listener {
 public:
  struct Result {
    std::uint64_t value;
    std::int64_t finish_round;  // round of the terminating 1
  };

  /// Feed the observation of `round`. Returns the decoded value on the
  /// round that terminates the pattern.
  std::optional<Result> feed(std::int64_t round, const radio::Observation& obs);
  bool recording() const { return !bits_.empty(); }
  void reset() { bits_.clear(); }

 private:
  Bits bits_;
};

}  // namespace rsd::wave
