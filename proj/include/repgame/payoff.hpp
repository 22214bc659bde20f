#ifndef REPGAME_PAYOFF_HPP
#define REPGAME_PAYOFF_HPP

#include <vector>

#include "repgame/game.hpp"

namespace repgame {

// discounted payoff p_i = delta * sum_t (1-delta)^t u_i(t); the leading delta
// normalizes constant streams to their per-round value

// play = prefix then cycle repeated forever; exact closed form
std::vector<Rat> payoff_eventually_periodic(const StageGame& g,
                                            const std::vector<long long>& prefix,
                                            const std::vector<long long>& cycle,
                                            const Rat& delta);

// first rounds.size() terms only
std::vector<Rat> payoff_truncated(const StageGame& g,
                                  const std::vector<long long>& rounds,
                                  const Rat& delta);

struct TruncationInfo {
  long long horizon = 0;  // ceil(n / delta)
  Rat bound;              // nominal max(a,|b|) * (2584/7025)^n, 1/e approximated
  Rat exact_tail;         // max(a,|b|) * (1-delta)^horizon; always >= true gap
};

TruncationInfo truncation_horizon(const StageGame& g, const Rat& delta);

}  // namespace repgame

#endif
