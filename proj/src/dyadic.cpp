#include "repgame/dyadic.hpp"

#include <algorithm>
#include <numeric>

#include "repgame/errors.hpp"

namespace repgame {

long long DyadicDistribution::sample(long long v) const {
  if (v < 0 || v >= (1LL << n)) throw DomainError("sample value out of range");
  // cumulative is nondecreasing with back() == 2^n, so the bound exists
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), v);
  return static_cast<long long>(it - cumulative.begin());
}

long long DyadicDistribution::support_size() const {
  long long s = 0;
  for (long long m : numer)
    if (m > 0) ++s;
  return s;
}

void DyadicDistribution::rebuild_cumulative() {
  cumulative.resize(numer.size());
  long long acc = 0;
  for (size_t k = 0; k < numer.size(); ++k) {
    acc += numer[k];
    cumulative[k] = acc;
  }
}

DyadicDistribution discretize_dyadic(const std::vector<Rat>& d, unsigned n) {
  if (n < 1 || n > 62) throw DomainError("dyadic precision out of range");
  const long long scale = 1LL << n;

  long long support = 0;
  for (const Rat& p : d) {
    if (p < 0) throw DomainError("negative probability");
    if (p > 0) ++support;
  }
  Rat total = std::accumulate(d.begin(), d.end(), Rat(0));
  if (total != 1) throw DomainError("probabilities do not sum to 1");
  if (support > scale)
    throw DomainError("support larger than 2^n outcomes; raise the precision");

  DyadicDistribution out;
  out.n = n;
  out.numer.assign(d.size(), 0);
  std::vector<Rat> rem(d.size(), Rat(0));
  long long assigned = 0;
  for (size_t k = 0; k < d.size(); ++k) {
    Rat scaled = d[k] * static_cast<long>(scale);
    Int fl = rfloor(scaled);
    out.numer[k] = fl.get_si();
    rem[k] = scaled - Rat(fl);
    assigned += out.numer[k];
  }

  // the deficit equals the number of +1 corrections; every recipient has a
  // strictly positive remainder, so zero-probability outcomes stay at zero
  long long deficit = scale - assigned;
  std::vector<size_t> order(d.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t x, size_t y) {
    if (rem[x] != rem[y]) return rem[x] > rem[y];
    return x < y;
  });
  for (long long b = 0; b < deficit; ++b) out.numer[order[b]] += 1;

  out.rebuild_cumulative();
  return out;
}

long long bits_to_value(const std::vector<uint8_t>& bits) {
  long long v = 0;
  for (uint8_t b : bits) v = (v << 1) | (b & 1);
  return v;
}

std::vector<uint8_t> value_to_bits(long long v, unsigned nbits) {
  std::vector<uint8_t> bits(nbits);
  for (unsigned k = 0; k < nbits; ++k)
    bits[k] = static_cast<uint8_t>((v >> (nbits - 1 - k)) & 1);
  return bits;
}

}  // namespace repgame
