#ifndef REPGAME_MEASURE_HPP
#define REPGAME_MEASURE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "repgame/adversary.hpp"
#include "repgame/bundle.hpp"

namespace repgame {

struct GainReport {
  std::string spec;
  int deviator = 0;
  long long runs = 0;  // paired runs actually performed
  Rat honest;          // mean honest continuation payoff
  Rat mean;            // mean deviator payoff
  Rat gain;            // mean - honest
  Rat tail;            // truncation slack included in the check; 0 when exact
  double radius = 0.0;
  Rat bound;  // 1/q + radius
  bool pass = false;  // gain + tail <= bound
};

// Empirical deviation gain with paired common random numbers: run r of the
// deviator match and run r of the all-honest baseline share one derived seed.
// One-shot bundles from the empty history are scored exactly against the
// infinite game (play is eventually periodic); otherwise payoffs are
// truncated at `horizon` (0 picks ceil(n/delta)) and the check charges the
// worst-case tail of both runs to the gain.
GainReport measure_gain(const StrategyBundle& b, const AdversarySpec& spec,
                        int deviator, long long runs, double beta,
                        uint64_t seed,
                        const std::vector<Profile>* history = nullptr,
                        const std::vector<std::string>* memories = nullptr,
                        long long horizon = 0);

struct VerifyResult {
  std::vector<GainReport> rows;  // sorted by spec string
  bool pass = false;
};

// canonical adversary battery for a bundle; deviator is player 0.
// workers > 1 fans the battery out across threads; rows stay canonical
// (sorted by spec) and every row is seed-deterministic either way.
VerifyResult verify_bundle(const StrategyBundle& b, long long runs,
                           double beta, uint64_t seed, int workers = 1);

}  // namespace repgame

#endif
