#ifndef REPGAME_ADVERSARY_HPP
#define REPGAME_ADVERSARY_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "repgame/bundle.hpp"
#include "repgame/engine.hpp"
#include "repgame/machines.hpp"

namespace repgame {

// grammar: never | once:<t> | phase1:<t> | tamper:<player>:<round>:<hex>
//          | keythief | predictor:<prf-id> | eavesdrop
// tamper's player is 1-based, matching every other user-facing format
struct AdversarySpec {
  enum class Kind { Never, Once, Phase1, Tamper, KeyThief, Predictor, Eavesdrop };
  Kind kind = Kind::Never;
  long long t = 0;           // once / phase1
  int tamper_target = 0;     // 0-based internally
  long long tamper_round = 0;
  std::string tamper_payload;  // raw bytes fed to set_memory
  std::string prf_id;          // predictor's model of the bundle's PRF

  std::string str() const;
  static AdversarySpec parse(const std::string& text);
  // engine event realizing a tamper spec; empty for the other kinds
  std::vector<TamperEvent> tamper_events() const;
};

// deviator machine for the given player; key-thief demands a subgame-perfect
// bundle and throws at step time if the whitebox hook is not live
std::unique_ptr<Machine> build_adversary(const AdversarySpec& spec,
                                         const StrategyBundle& b, int player);

// punishment-block oracle experiments: H1 = true random function and no real
// key material on the wire, H2 = PRF on an oracle-shared seed but ciphertexts
// of 0^n, H3 = oracle seed properly encrypted, deployed = the real protocol
enum class HybridVariant { H1, H2, H3, Deployed };

struct HybridReport {
  Rat mean;       // punished player's mean per-round phase-3 payoff
  double radius;  // Hoeffding radius over runs at beta = 0.01
  long long runs = 0;
};

// one punishment block against `punished` under the chosen oracle wiring;
// the deviator policy comes from spec (tamper and keythief are rejected)
HybridReport hybrid_punishment_payoff(const StrategyBundle& b,
                                      HybridVariant variant,
                                      const AdversarySpec& spec, int punished,
                                      long long runs, uint64_t seed);

// round-by-round actions of a single lab block, for byte-identity checks
std::vector<Profile> hybrid_block_rounds(const StrategyBundle& b,
                                         HybridVariant variant,
                                         const AdversarySpec& spec,
                                         int punished, uint64_t run_seed);

}  // namespace repgame

#endif
