#ifndef REPGAME_PHASE_HPP
#define REPGAME_PHASE_HPP

#include <vector>

#include "repgame/bundle.hpp"

namespace repgame {

// protocol position before round t is played, as a fold over public history
struct PhaseState {
  int phase = 1;
  long long t = 0;
  long long sq_offset = 0;      // phase 1: index into sq for round t
  long long block_start = -1;   // deviation round t0 of the active block
  int punished = -1;
  long long resume_offset = 0;  // sq index replayed when the block ends
  long long blocks_seen = 0;

  // 1-based offsets matching the protocol description: phase 2 covers
  // (t0, t0+m] with offset t-t0, phase 3 covers (t0+m, t0+m+ell] with
  // offset t-t0-m
  long long offset_1based() const;
  // 0-based offset into the phase-2 schedule; valid only in phase 2
  long long phase2_off() const { return t - block_start - 1; }
  // 0-based round count into phase 3; valid only in phase 3
  long long phase3_off() const { return t - block_start - params_m() - 1; }

  long long m = 0;    // copied from the bundle so offsets are self-contained
  long long ell = 0;  // 0 means phase 3 never ends

 private:
  long long params_m() const { return m; }
};

class PhaseTracker {
 public:
  explicit PhaseTracker(const StrategyBundle& b);
  const PhaseState& state() const { return st_; }
  // consume the observed profile of round state().t
  void advance(const Profile& observed);

 private:
  const StrategyBundle* b_;
  PhaseState st_;
};

// state before round |history| given the full public history
PhaseState phase_of(const StrategyBundle& b, const std::vector<Profile>& history);

}  // namespace repgame

#endif
