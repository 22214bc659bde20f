#include "repgame/prf.hpp"

#include "repgame/dyadic.hpp"
#include "repgame/errors.hpp"
#include "repgame/rng.hpp"

namespace repgame {

namespace {

void check_lengths(const std::vector<uint8_t>& seed,
                   const std::vector<uint8_t>& x) {
  if (seed.size() != x.size())
    throw DomainError("PRF input length must equal seed length");
  if (seed.empty() || seed.size() > 62)
    throw DomainError("PRF width out of range");
}

class RefPrf : public Prf {
 public:
  std::string id() const override { return "ref"; }
  std::vector<uint8_t> eval(const std::vector<uint8_t>& seed,
                            const std::vector<uint8_t>& x) const override {
    check_lengths(seed, x);
    const unsigned n = static_cast<unsigned>(seed.size());
    // absorb width, seed, input into a splitmix chain, then squeeze n bits
    uint64_t h = 0x5bf0363546e24f1full;
    for (uint64_t w : {static_cast<uint64_t>(n),
                       static_cast<uint64_t>(bits_to_value(seed)),
                       static_cast<uint64_t>(bits_to_value(x))}) {
      h ^= w + 0x9e3779b97f4a7c15ull;
      splitmix64_next(h);
    }
    uint64_t out = splitmix64_next(h);
    return value_to_bits(static_cast<long long>(out >> (64 - n)), n);
  }
};

class ConstPrf : public Prf {
 public:
  std::string id() const override { return "const"; }
  std::vector<uint8_t> eval(const std::vector<uint8_t>& seed,
                            const std::vector<uint8_t>& x) const override {
    check_lengths(seed, x);
    return std::vector<uint8_t>(seed.size(), 0);
  }
};

class CounterPrf : public Prf {
 public:
  std::string id() const override { return "counter"; }
  std::vector<uint8_t> eval(const std::vector<uint8_t>& seed,
                            const std::vector<uint8_t>& x) const override {
    check_lengths(seed, x);
    const unsigned n = static_cast<unsigned>(seed.size());
    long long mask = (1LL << n) - 1;
    return value_to_bits((bits_to_value(x) + 1) & mask, n);
  }
};

const RefPrf kRef;
const ConstPrf kConst;
const CounterPrf kCounter;

}  // namespace

const Prf& prf_by_id(const std::string& id) {
  if (id == "ref") return kRef;
  if (id == "const") return kConst;
  if (id == "counter") return kCounter;
  throw DomainError("unknown PRF id: " + id);
}

std::vector<std::string> prf_ids() { return {"ref", "const", "counter"}; }

}  // namespace repgame
