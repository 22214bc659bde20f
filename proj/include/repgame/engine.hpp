#ifndef REPGAME_ENGINE_HPP
#define REPGAME_ENGINE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "repgame/bundle.hpp"
#include "repgame/machines.hpp"

namespace repgame {

// memory injection applied just before the given round is played
struct TamperEvent {
  int target = 0;
  long long round = 0;
  std::string payload;  // handed to Machine::set_memory verbatim
};

struct MatchConfig {
  long long horizon = 0;  // rounds to play from the starting point
  uint64_t master_seed = 0;
  // whitebox hook: while the first punishment block is active, machines see
  // this value as the dealer seed instead of drawing one
  bool whitebox = false;
  std::vector<uint8_t> whitebox_seed;
  std::vector<TamperEvent> tampers;
};

struct RoundRecord {
  long long t = 0;
  int phase = 1;
  Profile actions;
  bool flagged = false;  // some machine returned an out-of-range action
};

struct Transcript {
  uint64_t master_seed = 0;
  long long start = 0;  // index of the first recorded round
  Rat delta;
  std::vector<RoundRecord> rounds;
  std::vector<Rat> payoff;  // discounted continuation value per player
  Rat truncation_bound;     // exact cap on what the unrecorded tail can add
  std::vector<std::string> final_memories;  // machine state after the match

  std::string serialize(const StrategyBundle& b) const;
  // actions and structure only; utils lines are checked against the game
  static Transcript parse(const std::string& text, const StrategyBundle& b);
};

// fresh match from the empty history
Transcript run_match(const StrategyBundle& b,
                     const std::vector<Machine*>& machines, MatchConfig cfg);

// continue from a recorded public history and per-machine memories; with
// equal seeds the continuation is bit-identical to the uninterrupted match
Transcript resume_match(const StrategyBundle& b,
                        const std::vector<Machine*>& machines,
                        const std::vector<Profile>& history,
                        const std::vector<std::string>& memories,
                        MatchConfig cfg);

}  // namespace repgame

#endif
