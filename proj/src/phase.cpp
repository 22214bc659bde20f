#include "repgame/phase.hpp"

#include "repgame/errors.hpp"

namespace repgame {

long long PhaseState::offset_1based() const {
  if (phase == 2) return t - block_start;
  if (phase == 3) return t - block_start - m;
  return sq_offset;
}

PhaseTracker::PhaseTracker(const StrategyBundle& b) : b_(&b) {
  st_.m = b.params.m;
  st_.ell = b.params.ell;
}

void PhaseTracker::advance(const Profile& observed) {
  if (static_cast<int>(observed.size()) != b_->game.players())
    throw DomainError("phase tracker: profile size mismatch");

  if (st_.phase == 1) {
    const Profile expected =
        b_->game.profile_at(b_->sq.profiles[static_cast<size_t>(st_.sq_offset)]);
    int deviator = -1;
    for (int i = 0; i < b_->game.players(); ++i) {
      if (observed[i] != expected[i]) {
        deviator = i;
        break;  // smallest index is punished when several deviate at once
      }
    }
    if (deviator < 0) {
      st_.sq_offset =
          (st_.sq_offset + 1) % static_cast<long long>(b_->sq.profiles.size());
    } else {
      st_.phase = 2;
      st_.block_start = st_.t;
      st_.punished = deviator;
      st_.resume_offset = st_.sq_offset;  // the spoiled round is replayed
      ++st_.blocks_seen;
    }
    ++st_.t;
    return;
  }

  // deviations inside a block are never punished; only time moves the state
  ++st_.t;
  if (st_.phase == 2 && st_.t - st_.block_start > st_.m) st_.phase = 3;
  if (st_.phase == 3 && st_.ell > 0 &&
      st_.t - st_.block_start > st_.m + st_.ell) {
    st_.phase = 1;
    st_.sq_offset = st_.resume_offset;
    st_.block_start = -1;
    st_.punished = -1;
  }
}

PhaseState phase_of(const StrategyBundle& b,
                    const std::vector<Profile>& history) {
  PhaseTracker tr(b);
  for (const Profile& p : history) tr.advance(p);
  return tr.state();
}

}  // namespace repgame
