#ifndef REPGAME_HYBRID_HPP
#define REPGAME_HYBRID_HPP

#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "repgame/pke.hpp"
#include "repgame/prf.hpp"
#include "repgame/rng.hpp"

namespace repgame {

struct AdvantageEstimate {
  double acceptance_lo = 0;  // endpoint closest to the deployed configuration
  double acceptance_hi = 0;  // fully random / fully m_0 endpoint
  double advantage = 0;      // |acceptance_lo - acceptance_hi|
  double radius = 0;         // Hoeffding radius for the difference
  long long trials = 0;
};

// Bank of q oracles for hybrid index i (1-based): oracles 1..i-1 answer with
// lazily sampled random functions, oracles i..q with independently seeded PRF
// instances. i = 1 is the all-PRF experiment, i = q+1 the all-random one.
// Per-oracle randomness is derived by oracle index only, so endpoints match
// pure experiments byte-for-byte on a shared base stream.
class OracleBank {
 public:
  OracleBank(const Prf& prf, unsigned n, int q, int i, const RandomStream& base);
  std::vector<uint8_t> query(int which, const std::vector<uint8_t>& x);  // 1-based
  // log of (oracle, input value, output value) in query order
  const std::vector<std::array<long long, 3>>& log() const { return log_; }

 private:
  const Prf& prf_;
  unsigned n_;
  int i_;
  std::vector<std::vector<uint8_t>> seeds_;         // PRF seeds per oracle
  std::vector<RandomStream> streams_;               // per-oracle random functions
  std::vector<std::map<long long, long long>> memo_;
  std::vector<std::array<long long, 3>> log_;
};

// distinguisher outputs 0/1 given oracle access
using PrfDistinguisher =
    std::function<int(unsigned n, int q, OracleBank&, RandomStream&)>;

double prf_hybrid_acceptance(const Prf& prf, unsigned n, int q, int i,
                             const PrfDistinguisher& d, long long runs,
                             const RandomStream& base);

// advantage between T^1 (all PRF) and T^{q+1} (all random)
AdvantageEstimate prf_multi_instance_game(const Prf& prf, unsigned n, int q,
                                          const PrfDistinguisher& d,
                                          long long runs, double beta,
                                          const RandomStream& base);

// ---- Appendix B style multi-message multi-key PKE game ----

using BitString = std::vector<uint8_t>;
// ct[msg][key]: message index major, key index minor
using CiphertextMatrix = std::vector<std::vector<BitString>>;

struct PkeHybridSetup {
  std::vector<KeyPair> keys;  // g key pairs
  CiphertextMatrix matrix;    // f x g
};

// hybrid (i, j), 1-based: cell (msg j', key i') encrypts m0[j'] when
// j' < j or (j' == j and i' < i), else m1[j']. (i,j)=(1,1) is all-m1;
// (i,j)=(g+1,f) is all-m0. Throws on wrong message lengths.
PkeHybridSetup make_pke_hybrid_setup(const Pke& scheme, unsigned n, int f, int g,
                                     int i, int j,
                                     const std::vector<BitString>& m0,
                                     const std::vector<BitString>& m1,
                                     const RandomStream& base);

// independent straight-line implementation of IND-MULT_b for endpoint checks
PkeHybridSetup make_pke_pure_setup(const Pke& scheme, unsigned n, int f, int g,
                                   int b, const std::vector<BitString>& m0,
                                   const std::vector<BitString>& m1,
                                   const RandomStream& base);

struct PkeAdversary {
  // emit f message pairs of n bits each
  std::function<std::pair<std::vector<BitString>, std::vector<BitString>>(
      unsigned n, int f, int g, RandomStream&)>
      choose;
  // guess 0/1 from the public keys and ciphertext matrix
  std::function<int(unsigned n, const std::vector<KeyPair>& keys,
                    const CiphertextMatrix& ct, RandomStream&)>
      guess;
};

double pke_hybrid_acceptance(const Pke& scheme, unsigned n, int f, int g, int i,
                             int j, const PkeAdversary& adv, long long runs,
                             const RandomStream& base);

// advantage between IND-MULT_1 (hybrid (1,1)) and IND-MULT_0 ((g+1,f))
AdvantageEstimate pke_multi_hybrid_game(const Pke& scheme, unsigned n, int f,
                                        int g, const PkeAdversary& adv,
                                        long long runs, double beta,
                                        const RandomStream& base);

}  // namespace repgame

#endif
