// Stage-game and graphical-game file handling against the committed corpus.
#include <doctest.h>

#include "helpers.hpp"
#include "repgame/equilibrium.hpp"
#include "repgame/errors.hpp"
#include "repgame/game.hpp"

using namespace repgame;
using testutil::load_game;
using testutil::load_graphical;

TEST_CASE("matching pennies transcribes directly") {
  StageGame g = load_game("pennies2.game");
  CHECK(g.players() == 2);
  CHECK(g.size_n() == 2);
  CHECK(g.max_util() == Rat(1));
  CHECK(g.min_util() == Rat(-1));
  CHECK(g.a_int() == 1);
  CHECK(g.b_int() == -1);
  // profile (0,0) pays (1,-1)
  Profile p{0, 0};
  CHECK(g.utility(g.index_of(p), 0) == Rat(1));
  CHECK(g.utility(g.index_of(p), 1) == Rat(-1));
}

TEST_CASE("all-zero game is the a=b=0 degenerate case") {
  StageGame g = load_game("allzero.game");
  CHECK(g.max_util() == Rat(0));
  CHECK(g.min_util() == Rat(0));
  CHECK(g.num_profiles() == 8);
}

TEST_CASE("missing profile is rejected") {
  std::string text =
      "game broken\nplayers 3\nactions 2 2 2\n"
      "payoff 0 0 0 : 1 1 1\n"
      "end\n";
  CHECK_THROWS_AS(StageGame::parse(text), ParseError);
}

TEST_CASE("duplicate profile and junk directives are rejected") {
  std::string dup =
      "game d\nplayers 2\nactions 2 2\n"
      "payoff 0 0 : 1 1\npayoff 0 0 : 2 2\n"
      "payoff 0 1 : 0 0\npayoff 1 0 : 0 0\npayoff 1 1 : 0 0\nend\n";
  CHECK_THROWS_AS(StageGame::parse(dup), ParseError);
  CHECK_THROWS_AS(StageGame::parse("game g\nplayers 2\nwat\nend\n"), ParseError);
  // non-integer payoffs only pass through the internal rational gate
  std::string rat =
      "game r\nplayers 2\nactions 2 2\n"
      "payoff 0 0 : 1/2 0\npayoff 0 1 : 0 0\n"
      "payoff 1 0 : 0 0\npayoff 1 1 : 0 0\nend\n";
  CHECK_THROWS_AS(StageGame::parse(rat), ParseError);
  CHECK(parse_stage_game_text(rat, true).utility(0, 0) == Rat(1, 2));
}

TEST_CASE("serialize round-trips byte for byte") {
  for (const char* name :
       {"pennies2.game", "xorpennies.game", "xor3g.game", "pubgoods.game"}) {
    StageGame g = load_game(name);
    std::string once = g.serialize();
    CHECK(StageGame::parse(once).serialize() == once);
  }
}

TEST_CASE("normalization shifts every minimax to zero") {
  // constant-utility-5 player: all entries become 0
  std::string text =
      "game c5\nplayers 3\nactions 2 2 2\n";
  for (int k = 0; k < 8; ++k) {
    text += "payoff " + std::to_string((k >> 2) & 1) + " " +
            std::to_string((k >> 1) & 1) + " " + std::to_string(k & 1) +
            " : 5 " + std::to_string(k % 3) + " 0\n";
  }
  text += "end\n";
  StageGame g = StageGame::parse(text);
  StageGame norm = normalize_to_zero_minimax(g, minimax_values(g));
  for (long long idx = 0; idx < norm.num_profiles(); ++idx)
    CHECK(norm.utility(idx, 0) == Rat(0));
  // re-solving on the shifted game yields zero per player
  for (const Rat& v : minimax_values(norm)) CHECK(v == Rat(0));

  // a game already at minimax 0 is untouched
  StageGame xp = load_game("xorpennies.game");
  CHECK(normalize_to_zero_minimax(xp, minimax_values(xp)).serialize() ==
        xp.serialize());
}

TEST_CASE("opponent indexing is a bijection") {
  StageGame g = load_game("xor3g.game");
  for (int j = 0; j < g.players(); ++j) {
    for (long long idx = 0; idx < g.num_profiles(); ++idx) {
      Profile p = g.profile_at(idx);
      long long oi = g.opponent_index(j, p);
      Profile q = g.opponent_profile(j, oi, p[j]);
      CHECK(q == p);
    }
  }
}

TEST_CASE("3-node path graph under degree 2 is valid") {
  GraphicalGame gg = load_graphical("path3.graph");
  CHECK(gg.players() == 3);
  CHECK(gg.degree_bound() == 2);
  // middle player matching both ends scores 2
  CHECK(gg.local_utility(1, 0, {0, 0}) == Rat(2));
  CHECK(gg.local_utility(1, 1, {0, 0}) == Rat(0));
}

TEST_CASE("degree bound violations are rejected") {
  std::string text =
      "graphical bad\nplayers 4\ndegree 2\nactions 2 2 2 2\n"
      "neighbors 1 : 2 3 4\n";
  CHECK_THROWS_AS(GraphicalGame::parse(text), ParseError);
}

TEST_CASE("5-node cycle expands to the correct explicit form") {
  GraphicalGame gg = load_graphical("cycle5.graph");
  CHECK(gg.players() == 5);
  StageGame g = gg.expand();
  CHECK(g.players() == 5);
  CHECK(g.num_profiles() == 32);
  // alternating coloring 01010: the inner players differ from both
  // neighbors, the wrap-around pair 1-5 collides
  Profile p{0, 1, 0, 1, 0};
  long long idx = g.index_of(p);
  CHECK(g.utility(idx, 0) == Rat(1));
  CHECK(g.utility(idx, 1) == Rat(2));
  CHECK(g.utility(idx, 3) == Rat(2));
  CHECK(g.utility(idx, 4) == Rat(1));
}

TEST_CASE("isolated player has a single-column local table") {
  GraphicalGame gg = load_graphical("edge3.graph");
  CHECK(gg.neighbors(2).empty());
  StageGame g = gg.expand();
  // player 3's utility depends on its own action only
  for (long long idx = 0; idx < g.num_profiles(); ++idx) {
    Profile p = g.profile_at(idx);
    CHECK(g.utility(idx, 2) == Rat(p[2]));
  }
}
