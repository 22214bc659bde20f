#ifndef REPGAME_TESTS_HELPERS_HPP
#define REPGAME_TESTS_HELPERS_HPP

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "repgame/game.hpp"
#include "repgame/rational.hpp"
#include "repgame/rng.hpp"

namespace testutil {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), ("cannot open " + path));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::string game_path(const std::string& name) {
  return std::string(REPGAME_GAMES_DIR) + "/" + name;
}

inline repgame::StageGame load_game(const std::string& name) {
  return repgame::StageGame::parse(read_file(game_path(name)));
}

inline repgame::GraphicalGame load_graphical(const std::string& name) {
  return repgame::GraphicalGame::parse(read_file(game_path(name)));
}

// uniform random 3-player game with 2..max_actions actions per player and
// integer utilities in [lo, hi]
inline repgame::StageGame random_game(repgame::RandomStream& rng,
                                      int max_actions, long long lo,
                                      long long hi) {
  std::vector<int> counts(3);
  for (int i = 0; i < 3; ++i)
    counts[i] = 2 + static_cast<int>(rng.below(max_actions - 1));
  long long total = 1;
  for (int c : counts) total *= c;
  std::vector<std::vector<repgame::Rat>> util(total);
  for (long long k = 0; k < total; ++k) {
    util[k].resize(3);
    for (int i = 0; i < 3; ++i) {
      long long u = lo + static_cast<long long>(rng.below(hi - lo + 1));
      util[k][i] = repgame::Rat(static_cast<long>(u));
    }
  }
  return repgame::StageGame("random", counts, std::move(util));
}

}  // namespace testutil

#endif
