#ifndef REPGAME_SEQUENCE_HPP
#define REPGAME_SEQUENCE_HPP

#include <vector>

#include "repgame/equilibrium.hpp"
#include "repgame/game.hpp"

namespace repgame {

// deterministic finite play sequence approximating a target distribution
struct PlaySequence {
  std::vector<long long> profiles;  // profile indices into the game
  std::vector<Rat> average;         // exact per-player average payoff
};

// w = ((a-b)q + 1) n^c
long long sequence_budget(long long a, long long b, long long q, int c, long long n);

// each profile appears floor(w * sigma(profile)) times, in profile-index order
PlaySequence build_sequence(const StageGame& g, const JointDistribution& sigma,
                            long long w);

struct CalibrationParams {
  long long q = 0;       // accuracy parameter: payoff within 1/q of target
  long long w = 0;       // sequence budget
  long long fprime = 0;  // discount bound from the sequence alone
  long long f = 0;       // final discount bound; delta <= 1/f
  long long m = 0;       // phase-2 length in rounds
  long long ell = 0;     // phase-3 length in rounds; 0 in the one-shot variant
  Rat delta;             // exactly 1/f unless the caller lowered it
  bool subgame_perfect = false;
};

// w = (3rnq+1)n^c, f' = 3rwq, f = max(3q(ma+1), f'), with r = a-b
CalibrationParams calibrate_ne(const StageGame& g, long long q, long long m);

// w = 4(rnq+1)n^c, f' = 4rwq, ell = nq(ma+1), f = max(3rq(ell+m), f')
CalibrationParams calibrate_sp(const StageGame& g, long long q, long long m);

}  // namespace repgame

#endif
