#include "repgame/channel.hpp"

#include <algorithm>
#include <sstream>

#include "repgame/errors.hpp"

namespace repgame {

ChannelSplit ChannelSplit::defaults(const StageGame& g) {
  ChannelSplit s;
  s.zero_set.assign(g.players(), {0});
  for (int i = 0; i < g.players(); ++i)
    if (g.action_counts()[i] < 2)
      throw DomainError("player " + std::to_string(i + 1) +
                        " needs at least 2 actions for the bit channel");
  return s;
}

bool ChannelSplit::is_zero(int player, Action a) const {
  const auto& zs = zero_set[player];
  return std::binary_search(zs.begin(), zs.end(), a);
}

Action ChannelSplit::action_for_bit(const StageGame& g, int player, int bit) const {
  if (bit == 0) return zero_set[player].front();
  for (Action a = 0; a < g.action_counts()[player]; ++a)
    if (!is_zero(player, a)) return a;
  throw DomainError("channel split leaves no action for bit 1");
}

std::vector<Action> encode_bits(const ChannelSplit& split, const StageGame& g,
                                int player, const std::vector<uint8_t>& bits) {
  if (bits.empty()) throw DomainError("cannot encode an empty bit string");
  std::vector<Action> out;
  out.reserve(bits.size());
  for (uint8_t b : bits) out.push_back(split.action_for_bit(g, player, b & 1));
  return out;
}

std::vector<uint8_t> decode_bits(const ChannelSplit& split, int player,
                                 const std::vector<Action>& actions) {
  std::vector<uint8_t> out;
  out.reserve(actions.size());
  for (Action a : actions) out.push_back(split.is_zero(player, a) ? 0 : 1);
  return out;
}

Phase2Schedule Phase2Schedule::build(int players, int punished, unsigned keylen,
                                     unsigned z) {
  if (players < 3)
    throw DomainError("key exchange needs at least 3 players");
  if (punished < 0 || punished >= players)
    throw DomainError("punished player out of range");
  if (keylen == 0 || z == 0) throw DomainError("degenerate crypto widths");
  Phase2Schedule s;
  s.players = players;
  s.punished = punished;
  s.dealer = (punished + 1) % players;
  s.keylen = keylen;
  s.z = z;
  s.m = static_cast<long long>(keylen) +
        static_cast<long long>(players - 2) * static_cast<long long>(z);
  for (int step = 2; step < players + 2; ++step) {
    int cand = (punished + step) % players;
    if (cand == punished || cand == s.dealer) continue;
    s.recipients.push_back(cand);
  }
  return s;
}

Phase2Schedule::Role Phase2Schedule::role(int player, long long off) const {
  if (off < 0 || off >= m) throw DomainError("phase-2 offset out of range");
  if (player == punished) return Role::Punished;
  if (off < static_cast<long long>(keylen)) return Role::KeyBit;
  return player == dealer ? Role::CiphertextBit : Role::Idle;
}

std::string Phase2Schedule::dump() const {
  std::ostringstream out;
  for (long long off = 0; off < m; ++off) {
    for (int i = 0; i < players; ++i) {
      const char* name = "";
      switch (role(i, off)) {
        case Role::KeyBit: name = "key"; break;
        case Role::CiphertextBit: name = "ciphertext"; break;
        case Role::Idle: name = "idle"; break;
        case Role::Punished: name = "punished"; break;
      }
      out << "round " << off << ": player " << (i + 1) << " " << name << "\n";
    }
  }
  return out.str();
}

}  // namespace repgame
