#pragma once

#include <string>
#include <vector>

#include "repgame/rational.hpp"

namespace repgame {

using Action = int;
using Profile = std::vector<Action>;  // one action per player, 0-indexed

// One-shot stage game: players, finite action sets, utility tensor.
// Immutable after construction; safe to share read-only across threads.
//
// Input files carry integer utilities. Internally utilities are exact
// rationals because minimax normalization shifts by a rational value.
class StageGame {
 public:
  StageGame(std::string name, std::vector<int> actions_per_player,
            std::vector<std::vector<Rat>> utilities);

  // line grammar: game/players/actions/payoff.../end, integer payoffs only
  static StageGame parse(const std::string& text);
  std::string serialize() const;

  const std::string& name() const { return name_; }
  int players() const { return static_cast<int>(n_actions_.size()); }
  int actions(int player) const { return n_actions_[player]; }
  const std::vector<int>& action_counts() const { return n_actions_; }
  int size_n() const;  // max actions per player (the size measure n)
  long long num_profiles() const { return num_profiles_; }

  long long index_of(const Profile& p) const;       // player 0 most significant
  Profile profile_at(long long index) const;
  const Rat& utility(long long profile_index, int player) const;
  const Rat& utility(const Profile& p, int player) const;

  Rat max_util() const;            // a
  Rat min_util() const;            // b
  long long a_int() const;         // ceil(a), integral bound for schedules
  long long b_int() const;         // floor(b)
  bool integral() const;

  bool operator==(const StageGame& o) const;

  // opponent sub-profile indexing for distributions over A_{-j}
  long long num_opponent_profiles(int j) const;
  long long opponent_index(int j, const Profile& full) const;
  // expands an opponent index to a full profile with player j playing a_j
  Profile opponent_profile(int j, long long opp_index, Action a_j) const;

 private:
  friend StageGame parse_stage_game_text(const std::string&, bool);
  std::string name_;
  std::vector<int> n_actions_;
  std::vector<std::vector<Rat>> util_;  // [profile_index][player]
  long long num_profiles_ = 0;
};

// internal entry point: bundle embeddings store normalized (rational) games
StageGame parse_stage_game_text(const std::string& text, bool allow_rational);

// Utilities shifted so each player's minimax value is exactly 0. The caller
// supplies the minimax values (computed by the punishment LP); the shift is
// constant per player, so best-response sets are unchanged.
StageGame normalize_to_zero_minimax(const StageGame& g,
                                    const std::vector<Rat>& minimax);

// Succinct game on a graph: each player's utility depends on his own action
// and his neighbors' actions only.
class GraphicalGame {
 public:
  GraphicalGame(std::string name, int degree_bound,
                std::vector<int> actions_per_player,
                std::vector<std::vector<int>> neighbors,
                std::vector<std::vector<Rat>> local_tables);

  static GraphicalGame parse(const std::string& text);
  std::string serialize() const;

  const std::string& name() const { return name_; }
  int players() const { return static_cast<int>(n_actions_.size()); }
  int degree_bound() const { return d_; }
  int actions(int player) const { return n_actions_[player]; }
  const std::vector<int>& neighbors(int player) const { return nbrs_[player]; }

  // local table index: own action most significant, then neighbors in list
  // order; table size = n_i * prod(n_k for k in neighbors(i))
  const Rat& local_utility(int player, Action own,
                           const std::vector<Action>& nbr_actions) const;

  // explicit StageGame over the full product space; rejects > 10^6 profiles
  StageGame expand() const;

 private:
  std::string name_;
  int d_;
  std::vector<int> n_actions_;
  std::vector<std::vector<int>> nbrs_;
  std::vector<std::vector<Rat>> local_;
};

}  // namespace repgame
