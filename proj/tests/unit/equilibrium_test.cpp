// Correlated equilibrium and punishment LPs. The brute-force checkers here
// are written against the definitions, not the solver, so they stay valid
// if the simplex internals change.
#include <doctest.h>

#include "helpers.hpp"
#include "repgame/equilibrium.hpp"
#include "repgame/game.hpp"

using namespace repgame;
using testutil::load_game;
using testutil::random_game;

namespace {

// every CE incentive constraint, enumerated directly from the definition:
// for each player i and recommended/replacement action pair (a, a'),
// sum over profiles with p_i = a of d(p) * (u_i(p) - u_i(a' substituted))
bool check_ce_constraints(const StageGame& g, const JointDistribution& d) {
  for (int i = 0; i < g.players(); ++i) {
    for (Action a = 0; a < g.actions(i); ++a) {
      for (Action rep = 0; rep < g.actions(i); ++rep) {
        if (rep == a) continue;
        Rat slack(0);
        for (long long idx = 0; idx < g.num_profiles(); ++idx) {
          Profile p = g.profile_at(idx);
          if (p[i] != a) continue;
          Profile swapped = p;
          swapped[i] = rep;
          slack += d.p[idx] * (g.utility(idx, i) - g.utility(swapped, i));
        }
        if (slack < Rat(0)) return false;
      }
    }
  }
  Rat mass(0);
  for (const Rat& v : d.p) {
    if (v < Rat(0)) return false;
    mass += v;
  }
  return mass == Rat(1);
}

// minimax by brute force: grid over punisher distributions is replaced by an
// exact inner best response under every vertex distribution being dominated;
// for 2x2 opponent spaces the LP value can be cross-checked by enumerating
// the deviator's actions under the returned distribution
Rat value_under(const StageGame& g, int j, const OpponentDistribution& d) {
  Rat best;
  bool first = true;
  for (Action a = 0; a < g.actions(j); ++a) {
    Rat v(0);
    for (long long oi = 0; oi < g.num_opponent_profiles(j); ++oi)
      v += d.p[oi] * g.utility(g.opponent_profile(j, oi, a), j);
    if (first || v > best) best = v;
    first = false;
  }
  return best;
}

}  // namespace

TEST_CASE("dominant-action game: point mass on the dominant profile") {
  StageGame g = load_game("pubgoods.game");
  JointDistribution sigma = correlated_equilibrium(g);
  // defection is strictly dominant; all-defect is profile 0
  CHECK(sigma.p[0] == Rat(1));
  CHECK(check_ce_constraints(g, sigma));
  CHECK(is_correlated_equilibrium(g, sigma));
}

TEST_CASE("matching pennies: uniform play satisfies every constraint") {
  StageGame g = load_game("pennies2.game");
  JointDistribution uniform;
  uniform.p.assign(4, Rat(1, 4));
  CHECK(check_ce_constraints(g, uniform));
  CHECK(is_correlated_equilibrium(g, uniform));
  // and the solver's choice is a CE with total utility 0
  JointDistribution sigma = correlated_equilibrium(g);
  CHECK(check_ce_constraints(g, sigma));
  CHECK(expected_utility(g, sigma, 0) + expected_utility(g, sigma, 1) ==
        Rat(0));
}

TEST_CASE("xor3g: even-parity coordination with value 1") {
  StageGame g = load_game("xor3g.game");
  JointDistribution sigma = correlated_equilibrium(g);
  CHECK(check_ce_constraints(g, sigma));
  for (int i = 0; i < 3; ++i) CHECK(expected_utility(g, sigma, i) == Rat(1));
}

TEST_CASE("every correlated equilibrium of xorpennies pays zero") {
  StageGame g = load_game("xorpennies.game");
  JointDistribution sigma = correlated_equilibrium(g);
  CHECK(check_ce_constraints(g, sigma));
  for (int i = 0; i < 3; ++i) CHECK(expected_utility(g, sigma, i) == Rat(0));
}

TEST_CASE("100 random games pass the constraint-enumeration oracle") {
  RandomStream rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    StageGame g = random_game(rng, 2, -3, 3);
    JointDistribution sigma = correlated_equilibrium(g);
    CHECK(check_ce_constraints(g, sigma));
    CHECK(is_correlated_equilibrium(g, sigma));
  }
}

TEST_CASE("identically-zero player has minimax 0") {
  StageGame g = load_game("allzero.game");
  auto [dist, mm] = punishment_strategy(g, 1);
  CHECK(mm == Rat(0));
  Rat mass(0);
  for (const Rat& v : dist.p) mass += v;
  CHECK(mass == Rat(1));
}

TEST_CASE("matching pennies punishment is the uniform coin") {
  StageGame g = load_game("pennies2.game");
  for (int j = 0; j < 2; ++j) {
    auto [dist, mm] = punishment_strategy(g, j);
    CHECK(mm == Rat(0));
    CHECK(dist.p[0] == Rat(1, 2));
    CHECK(dist.p[1] == Rat(1, 2));
  }
}

TEST_CASE("xor punishment: correlated punishers hold the bit-matcher to 1/2") {
  // player j earns 1 iff his bit equals the XOR of the punishers' bits
  StageGame g = load_game("xor3g.game");
  for (int j = 0; j < 3; ++j) {
    auto [dist, mm] = punishment_strategy(g, j);
    CHECK(mm == Rat(1, 2));
    CHECK(value_under(g, j, dist) == Rat(1, 2));
  }
  std::vector<Rat> mms = minimax_values(g);
  for (const Rat& v : mms) CHECK(v == Rat(1, 2));
}

TEST_CASE("punishment value is a true minimax on random games") {
  RandomStream rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    StageGame g = random_game(rng, 3, -2, 2);
    for (int j = 0; j < 3; ++j) {
      auto [dist, mm] = punishment_strategy(g, j);
      // achievability: the returned distribution holds j to exactly mm
      CHECK(value_under(g, j, dist) == mm);
      // no single pure counter-strategy of the punishers does better than
      // letting j best-respond, so mm is at most every vertex value
      for (long long oi = 0; oi < g.num_opponent_profiles(j); ++oi) {
        OpponentDistribution point;
        point.target = j;
        point.p.assign(g.num_opponent_profiles(j), Rat(0));
        point.p[oi] = Rat(1);
        CHECK(mm <= value_under(g, j, point));
      }
    }
  }
}

TEST_CASE("punishment ties break to the lexicographically smallest vector") {
  // player 3 of the all-zero game is indifferent to everything: the smallest
  // distribution vector is the point mass on the last opponent profile
  StageGame g = load_game("allzero.game");
  auto [dist, mm] = punishment_strategy(g, 2);
  CHECK(mm == Rat(0));
  CHECK(dist.p.back() == Rat(1));
  // deterministic: solving twice gives identical vectors
  auto again = punishment_strategy(g, 2);
  CHECK(again.first.p == dist.p);
}

TEST_CASE("best_response enumerates exactly") {
  StageGame g = load_game("xorpennies.game");
  // punishers of player 1 play (1,0) for sure: the best response is bit 1
  OpponentDistribution point;
  point.target = 0;
  point.p.assign(4, Rat(0));
  Profile others{0, 1, 0};
  point.p[g.opponent_index(0, others)] = Rat(1);
  auto [act, val] = best_response(g, 0, point);
  CHECK(act == 1);
  CHECK(val == Rat(1));

  // against the real punishment table both actions tie at 0; lowest wins
  auto [dist, mm] = punishment_strategy(g, 0);
  auto [act2, val2] = best_response(g, 0, dist);
  CHECK(act2 == 0);
  CHECK(val2 == Rat(0));
  CHECK(val2 == mm);

  // random distributions match exhaustive enumeration
  RandomStream rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    StageGame r = random_game(rng, 3, -4, 4);
    for (int j = 0; j < 3; ++j) {
      long long nop = r.num_opponent_profiles(j);
      OpponentDistribution d;
      d.target = j;
      d.p.assign(nop, Rat(0));
      long long total = 0;
      std::vector<long long> weights(nop);
      for (long long k = 0; k < nop; ++k) {
        weights[k] = static_cast<long long>(rng.below(5));
        total += weights[k];
      }
      if (total == 0) {
        weights[0] = 1;
        total = 1;
      }
      for (long long k = 0; k < nop; ++k)
        d.p[k] = Rat(static_cast<long>(weights[k])) /
                 Rat(static_cast<long>(total));
      auto [act3, val3] = best_response(r, j, d);
      CHECK(val3 == value_under(r, j, d));
      // the reported action achieves the reported value
      Rat direct(0);
      for (long long oi = 0; oi < nop; ++oi)
        direct += d.p[oi] * r.utility(r.opponent_profile(j, oi, act3), j);
      CHECK(direct == val3);
    }
  }
}
