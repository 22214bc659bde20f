#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace repgame {

// Deterministic, platform-independent randomness. std:: distributions are not
// reproducible across standard library implementations, so everything here is
// specified down to the bit.
//
// A stream is identified by a 64-bit key. Child streams are derived from the
// parent key and an explicit label, never from the parent's consumed position,
// so derivation commutes with draws and replays are bit-identical.
uint64_t splitmix64_next(uint64_t& state);

class RandomStream {
 public:
  explicit RandomStream(uint64_t key);

  // child key = absorb(parent key, label words); independent of draw position
  RandomStream derive(std::initializer_list<uint64_t> label) const;

  uint64_t key() const { return key_; }

  uint64_t next_u64();             // xoshiro256** output
  uint64_t bits(unsigned k);       // top k bits of next_u64, k in [1,64]
  std::vector<uint8_t> bit_vector(unsigned k);  // k single bits, MSB first
  uint64_t below(uint64_t n);      // uniform in [0,n), rejection sampling
  double unit_double();            // 53-bit mantissa in [0,1)

 private:
  uint64_t key_;
  uint64_t s_[4];
};

// stable label words for stream derivation (values are part of the replay
// contract; renumbering breaks recorded seeds)
namespace stream_label {
constexpr uint64_t kPlayer = 1;
constexpr uint64_t kKeygen = 2;
constexpr uint64_t kSeed = 3;
constexpr uint64_t kEncrypt = 4;
constexpr uint64_t kRun = 5;
constexpr uint64_t kOracle = 6;
constexpr uint64_t kAdversary = 7;
constexpr uint64_t kTrial = 8;
constexpr uint64_t kFuzz = 9;
}  // namespace stream_label

}  // namespace repgame
