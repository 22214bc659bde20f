#ifndef REPGAME_CHANNEL_HPP
#define REPGAME_CHANNEL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "repgame/game.hpp"

namespace repgame {

// per player: actions in zero_set carry bit 0, the rest carry bit 1
struct ChannelSplit {
  std::vector<std::vector<Action>> zero_set;  // sorted, nonempty per player

  static ChannelSplit defaults(const StageGame& g);  // A_i^0 = {0}
  bool is_zero(int player, Action a) const;
  // lowest-index action carrying the requested bit
  Action action_for_bit(const StageGame& g, int player, int bit) const;
};

std::vector<Action> encode_bits(const ChannelSplit& split, const StageGame& g,
                                int player, const std::vector<uint8_t>& bits);
std::vector<uint8_t> decode_bits(const ChannelSplit& split, int player,
                                 const std::vector<Action>& actions);

// phase-2 timetable for one punishment block
struct Phase2Schedule {
  int players = 0;
  int punished = 0;
  int dealer = 0;       // punished + 1 (mod players)
  unsigned keylen = 0;  // simultaneous key-broadcast rounds
  unsigned z = 0;       // ciphertext rounds per recipient
  long long m = 0;      // keylen + (players-2) * z
  std::vector<int> recipients;  // increasing from punished+2, wrapping, skip j and dealer

  enum class Role { KeyBit, CiphertextBit, Idle, Punished };

  // slot r covers offsets [keylen + r*z, keylen + (r+1)*z)
  long long slot_begin(int r) const { return keylen + static_cast<long long>(r) * z; }
  long long slot_end(int r) const { return slot_begin(r) + z; }

  // off is the 0-based offset within phase 2
  Role role(int player, long long off) const;

  static Phase2Schedule build(int players, int punished, unsigned keylen,
                              unsigned z);
  std::string dump() const;  // "round <t>: player <i> <role>" lines
};

}  // namespace repgame

#endif
