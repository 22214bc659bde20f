#ifndef REPGAME_EQUILIBRIUM_HPP
#define REPGAME_EQUILIBRIUM_HPP

#include <string>
#include <utility>
#include <vector>

#include "repgame/game.hpp"

namespace repgame {

// distribution over full action profiles, indexed by StageGame profile index
struct JointDistribution {
  std::vector<Rat> p;

  // text form: one `<a_1> ... <a_c> : <num>/<den>` line per nonzero outcome
  std::string str(const StageGame& g) const;
  static JointDistribution parse(const std::string& text, const StageGame& g);
};

// distribution over sub-profiles of everyone but `target`, indexed by
// StageGame::opponent_index(target, .)
struct OpponentDistribution {
  int target = 0;
  std::vector<Rat> p;
};

// max-total-utility correlated equilibrium; deterministic for a fixed game
JointDistribution correlated_equilibrium(const StageGame& g);

// exact CE constraint check (used by validators and tests)
bool is_correlated_equilibrium(const StageGame& g, const JointDistribution& d);

// correlated minimax punishment of player j and its value mm_j;
// ties broken toward the lexicographically smallest optimal distribution
std::pair<OpponentDistribution, Rat> punishment_strategy(const StageGame& g, int j);

std::vector<Rat> minimax_values(const StageGame& g);

// argmax_{a in A_j} E_d[u_j(a, .)], lowest index on ties
std::pair<Action, Rat> best_response(const StageGame& g, int j,
                                     const OpponentDistribution& d);

Rat expected_utility(const StageGame& g, const JointDistribution& d, int i);

}  // namespace repgame

#endif
