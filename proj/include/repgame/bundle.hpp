#ifndef REPGAME_BUNDLE_HPP
#define REPGAME_BUNDLE_HPP

#include <string>
#include <vector>

#include "repgame/channel.hpp"
#include "repgame/dyadic.hpp"
#include "repgame/equilibrium.hpp"
#include "repgame/game.hpp"
#include "repgame/sequence.hpp"

namespace repgame {

enum class Variant { NE, SP };

// everything a table of honest machines needs to play the compiled strategy
struct StrategyBundle {
  Variant variant = Variant::NE;
  StageGame game;  // normalized: every minimax value is exactly 0
  CalibrationParams params;
  PlaySequence sq;
  std::vector<DyadicDistribution> punishment;  // [j] over opponent profiles of j
  ChannelSplit split;
  std::string prf_id = "ref";
  std::string pke_id = "elgamal107";
  std::vector<Action> defaults;

  explicit StrategyBundle(StageGame g) : game(std::move(g)) {}

  unsigned n_bits() const { return static_cast<unsigned>(game.size_n()); }
  unsigned keylen() const;
  unsigned zlen() const;
  Phase2Schedule schedule(int punished) const;
  // the fixed action realizing mm against the dyadic table (lowest index)
  Action punished_response(int j) const;

  std::string serialize() const;
  static StrategyBundle parse(const std::string& text);

  // structural checks plus re-derivation of w, f', f, ell, m from game and q
  void validate() const;
};

}  // namespace repgame

#endif
