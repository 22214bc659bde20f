#ifndef REPGAME_COMPILER_HPP
#define REPGAME_COMPILER_HPP

#include <utility>

#include "repgame/bundle.hpp"
#include "repgame/polynomial.hpp"

namespace repgame {

// crypto instance selection; ids are resolved through prf_by_id / pke_by_id
struct CompileOptions {
  std::string prf_id = "ref";
  std::string pke_id = "elgamal107";
};

// Game in, strategy bundle out. Pipeline: punishment LPs on the input game,
// normalize so every minimax value is 0, correlated-equilibrium LP, play
// sequence at the calibrated w, dyadic punishment tables at precision n.
// Deterministic: identical inputs produce byte-identical bundles.
//
// Requires at least 3 players (phase 2 needs a third party) and at least 2
// actions per player; violations throw DomainError.
StrategyBundle compile_ne(const StageGame& g, const Polynomial& q,
                          const CompileOptions& opts = {});
StrategyBundle compile_sp(const StageGame& g, const Polynomial& q,
                          const CompileOptions& opts = {});

// Graphical pipeline: the punishment LP for j has one variable per joint
// action of N(j) and reads utilities straight from j's local table; players
// outside N(j) hold action 0. Everything downstream runs on the expanded
// game, so the expansion guard bounds the usable scale.
StrategyBundle compile_graphical(const GraphicalGame& gg, const Polynomial& q,
                                 bool subgame_perfect = false,
                                 const CompileOptions& opts = {});

// neighborhood-restricted punishment solve for one player, embedded back
// into a full-width opponent distribution of the expanded game; the value is
// exactly mm_j of the expanded game
std::pair<OpponentDistribution, Rat> graphical_punishment(
    const GraphicalGame& gg, const StageGame& expanded, int j);

}  // namespace repgame

#endif
