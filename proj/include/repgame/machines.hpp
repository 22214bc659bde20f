#ifndef REPGAME_MACHINES_HPP
#define REPGAME_MACHINES_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "repgame/bundle.hpp"
#include "repgame/phase.hpp"
#include "repgame/prf.hpp"
#include "repgame/rng.hpp"

namespace repgame {

// Private machine state between rounds. Serialization is total in both
// directions: any text deserializes to something, so injected garbage can
// never crash a machine, only make it incoherent.
struct MachineMemory {
  enum class Kind { Clean, Block, Defaulted, Corrupt };
  Kind kind = Kind::Clean;
  long long block = -1;  // deviation round t0 the secrets belong to
  int punished = -1;
  std::vector<uint8_t> pk;
  std::vector<uint8_t> sk;
  std::vector<uint8_t> seed;

  std::string serialize() const;
  static MachineMemory deserialize(const std::string& text);
};

// everything a machine may look at when choosing an action
struct StepContext {
  const StrategyBundle& bundle;
  const std::vector<Profile>& history;  // rounds 0 .. t-1
  const PhaseState& phase;              // tracker state before round t
  long long t = 0;
  int self = 0;
  // per-player derivation root; machines only derive children, never draw
  // from it directly, so behavior is independent of call order
  const RandomStream* rng = nullptr;
  // non-null only under the whitebox hook (first block of a whitebox match)
  const std::vector<uint8_t>* whitebox_seed = nullptr;
  // pass-2 only: everyone else's action this round (own slot is meaningless)
  const Profile* others = nullptr;
};

class Machine {
 public:
  virtual ~Machine() = default;
  virtual std::string describe() const = 0;
  // a reactive machine steps after all non-reactive machines; at most one
  // machine per round may be reactive
  virtual bool reactive(const StepContext& ctx) const = 0;
  virtual Action step(const StepContext& ctx) = 0;
  virtual std::string memory() const = 0;
  virtual void set_memory(const std::string& text) = 0;
};

std::unique_ptr<Machine> make_honest_machine(int player);

// argmax_a u_self(a, others), lowest index on ties; others[self] is ignored
Action myopic_best_response(const StageGame& g, int self, const Profile& others);

// coordinated punisher profile at 0-based phase-3 offset off: PRF output on
// input off mod 2^n selects an opponent sub-profile from the dyadic table;
// the punished player's own slot is a placeholder 0
Profile punishment_profile(const StrategyBundle& b, int punished,
                           const Prf& prf, const std::vector<uint8_t>& seed,
                           long long off);

// public-history readbacks of the key exchange for block t0
std::vector<uint8_t> read_public_key(const StrategyBundle& b,
                                     const std::vector<Profile>& history,
                                     long long t0, int player);
std::vector<uint8_t> read_ciphertext(const StrategyBundle& b,
                                     const std::vector<Profile>& history,
                                     long long t0, int dealer, int slot);

}  // namespace repgame

#endif
