#include "repgame/rng.hpp"

#include "repgame/errors.hpp"

namespace repgame {

uint64_t splitmix64_next(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {
inline uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
}  // namespace

RandomStream::RandomStream(uint64_t key) : key_(key) {
  uint64_t sm = key;
  for (auto& w : s_) w = splitmix64_next(sm);
  // xoshiro's all-zero state is invalid; splitmix output of any seed avoids it
  // except with probability ~2^-256, but keep the guard explicit
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

RandomStream RandomStream::derive(std::initializer_list<uint64_t> label) const {
  uint64_t k = key_;
  for (uint64_t w : label) {
    uint64_t st = k ^ (w + 0x6a09e667f3bcc909ULL);
    k = splitmix64_next(st);
  }
  return RandomStream(k);
}

uint64_t RandomStream::next_u64() {
  const uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

uint64_t RandomStream::bits(unsigned k) {
  if (k < 1 || k > 64) throw DomainError("bits(k): k out of range");
  return next_u64() >> (64 - k);
}

std::vector<uint8_t> RandomStream::bit_vector(unsigned k) {
  std::vector<uint8_t> out(k);
  for (unsigned i = 0; i < k; ++i) out[i] = static_cast<uint8_t>(bits(1));
  return out;
}

uint64_t RandomStream::below(uint64_t n) {
  if (n == 0) throw DomainError("below(0)");
  // accept below the largest multiple of n representable, reject the tail
  const uint64_t limit = ~uint64_t{0} - (~uint64_t{0} % n);
  for (;;) {
    uint64_t v = next_u64();
    if (v < limit) return v % n;
  }
}

double RandomStream::unit_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

}  // namespace repgame
