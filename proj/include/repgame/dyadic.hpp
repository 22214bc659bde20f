#ifndef REPGAME_DYADIC_HPP
#define REPGAME_DYADIC_HPP

#include <cstdint>
#include <vector>

#include "repgame/rational.hpp"

namespace repgame {

// distribution whose probabilities are numer[k] / 2^n over outcome indices k
struct DyadicDistribution {
  unsigned n = 0;
  std::vector<long long> numer;
  std::vector<long long> cumulative;  // running sums; back() == 2^n

  // inverse-CDF lookup; v must lie in [0, 2^n)
  long long sample(long long v) const;

  Rat prob(long long k) const {
    return Rat(static_cast<long>(numer[k])) / Rat(Int(1) << n);
  }
  long long support_size() const;
  void rebuild_cumulative();
};

// rounds d to multiples of 2^-n: floor first, then largest-remainder
// correction with ties to the lowest index; preserves total mass exactly
DyadicDistribution discretize_dyadic(const std::vector<Rat>& d, unsigned n);

// big-endian bit vector -> integer in [0, 2^bits)
long long bits_to_value(const std::vector<uint8_t>& bits);
std::vector<uint8_t> value_to_bits(long long v, unsigned nbits);

}  // namespace repgame

#endif
