#include "repgame/hybrid.hpp"

#include <cmath>

#include "repgame/dyadic.hpp"
#include "repgame/errors.hpp"
#include "repgame/stats.hpp"

namespace repgame {

OracleBank::OracleBank(const Prf& prf, unsigned n, int q, int i,
                       const RandomStream& base)
    : prf_(prf), n_(n), i_(i) {
  if (q < 1 || i < 1 || i > q + 1) throw DomainError("hybrid index out of range");
  seeds_.resize(q + 1);
  memo_.resize(q + 1);
  for (int k = 1; k <= q; ++k) {
    RandomStream s = base.derive({stream_label::kOracle, static_cast<uint64_t>(k)});
    // both branches consume the same derivation so the configurations of the
    // other oracles never shift this one's randomness
    if (k >= i) {
      seeds_[k] = s.bit_vector(n);
    } else {
      streams_.push_back(s);
    }
  }
  // rebuild per-oracle stream index: streams_ holds oracles 1..i-1 in order
}

std::vector<uint8_t> OracleBank::query(int which, const std::vector<uint8_t>& x) {
  if (which < 1 || which >= static_cast<int>(seeds_.size()))
    throw DomainError("oracle index out of range");
  if (x.size() != n_) throw DomainError("oracle input width mismatch");
  std::vector<uint8_t> out;
  if (which >= i_) {
    out = prf_.eval(seeds_[which], x);
  } else {
    long long key = bits_to_value(x);
    auto& table = memo_[which];
    auto it = table.find(key);
    if (it == table.end()) {
      long long v = static_cast<long long>(streams_[which - 1].bits(n_));
      it = table.emplace(key, v).first;
    }
    out = value_to_bits(it->second, n_);
  }
  log_.push_back({static_cast<long long>(which), bits_to_value(x),
                  bits_to_value(out)});
  return out;
}

double prf_hybrid_acceptance(const Prf& prf, unsigned n, int q, int i,
                             const PrfDistinguisher& d, long long runs,
                             const RandomStream& base) {
  long long accepted = 0;
  for (long long r = 0; r < runs; ++r) {
    RandomStream trial =
        base.derive({stream_label::kTrial, static_cast<uint64_t>(r)});
    OracleBank bank(prf, n, q, i, trial);
    RandomStream dcoins = trial.derive({stream_label::kAdversary});
    if (d(n, q, bank, dcoins) != 0) ++accepted;
  }
  return static_cast<double>(accepted) / static_cast<double>(runs);
}

AdvantageEstimate prf_multi_instance_game(const Prf& prf, unsigned n, int q,
                                          const PrfDistinguisher& d,
                                          long long runs, double beta,
                                          const RandomStream& base) {
  AdvantageEstimate e;
  e.trials = runs;
  e.acceptance_lo = prf_hybrid_acceptance(prf, n, q, 1, d, runs, base);
  e.acceptance_hi = prf_hybrid_acceptance(prf, n, q, q + 1, d, runs, base);
  e.advantage = std::fabs(e.acceptance_lo - e.acceptance_hi);
  e.radius = 2.0 * hoeffding_radius(1.0, beta, runs);
  return e;
}

namespace {

void check_messages(unsigned n, int f, const std::vector<BitString>& m,
                    const char* which) {
  if (static_cast<int>(m.size()) != f)
    throw DomainError(std::string(which) + ": wrong message count");
  for (const auto& s : m)
    if (s.size() != n)
      throw DomainError(std::string(which) + ": message length must be n");
}

std::vector<KeyPair> derive_keys(const Pke& scheme, unsigned n, int g,
                                 const RandomStream& base) {
  std::vector<KeyPair> keys;
  keys.reserve(g);
  for (int k = 1; k <= g; ++k) {
    RandomStream s = base.derive({stream_label::kKeygen, static_cast<uint64_t>(k)});
    keys.push_back(scheme.keygen(n, s));
  }
  return keys;
}

BitString encrypt_cell(const Pke& scheme, unsigned n, const BitString& pk,
                       const BitString& msg, int mi, int ki,
                       const RandomStream& base) {
  RandomStream s = base.derive({stream_label::kEncrypt, static_cast<uint64_t>(mi),
                                static_cast<uint64_t>(ki)});
  return scheme.encrypt(n, pk, msg, s);
}

}  // namespace

PkeHybridSetup make_pke_hybrid_setup(const Pke& scheme, unsigned n, int f, int g,
                                     int i, int j,
                                     const std::vector<BitString>& m0,
                                     const std::vector<BitString>& m1,
                                     const RandomStream& base) {
  if (f < 1 || g < 1) throw DomainError("need at least one message and key");
  if (j < 1 || j > f || i < 1 || i > g + 1)
    throw DomainError("hybrid pair out of range");
  check_messages(n, f, m0, "m0");
  check_messages(n, f, m1, "m1");
  PkeHybridSetup setup;
  setup.keys = derive_keys(scheme, n, g, base);
  setup.matrix.assign(f, std::vector<BitString>(g));
  for (int mj = 1; mj <= f; ++mj) {
    for (int ki = 1; ki <= g; ++ki) {
      bool zero = (mj < j) || (mj == j && ki < i);
      const BitString& msg = zero ? m0[mj - 1] : m1[mj - 1];
      setup.matrix[mj - 1][ki - 1] =
          encrypt_cell(scheme, n, setup.keys[ki - 1].pk, msg, mj, ki, base);
    }
  }
  return setup;
}

PkeHybridSetup make_pke_pure_setup(const Pke& scheme, unsigned n, int f, int g,
                                   int b, const std::vector<BitString>& m0,
                                   const std::vector<BitString>& m1,
                                   const RandomStream& base) {
  if (b != 0 && b != 1) throw DomainError("experiment bit must be 0 or 1");
  check_messages(n, f, m0, "m0");
  check_messages(n, f, m1, "m1");
  const std::vector<BitString>& m = (b == 0) ? m0 : m1;
  PkeHybridSetup setup;
  setup.keys = derive_keys(scheme, n, g, base);
  setup.matrix.assign(f, std::vector<BitString>(g));
  for (int mj = 1; mj <= f; ++mj)
    for (int ki = 1; ki <= g; ++ki)
      setup.matrix[mj - 1][ki - 1] =
          encrypt_cell(scheme, n, setup.keys[ki - 1].pk, m[mj - 1], mj, ki, base);
  return setup;
}

double pke_hybrid_acceptance(const Pke& scheme, unsigned n, int f, int g, int i,
                             int j, const PkeAdversary& adv, long long runs,
                             const RandomStream& base) {
  long long accepted = 0;
  for (long long r = 0; r < runs; ++r) {
    RandomStream trial =
        base.derive({stream_label::kTrial, static_cast<uint64_t>(r)});
    RandomStream acoins = trial.derive({stream_label::kAdversary});
    auto msgs = adv.choose(n, f, g, acoins);
    PkeHybridSetup setup =
        make_pke_hybrid_setup(scheme, n, f, g, i, j, msgs.first, msgs.second, trial);
    if (adv.guess(n, setup.keys, setup.matrix, acoins) != 0) ++accepted;
  }
  return static_cast<double>(accepted) / static_cast<double>(runs);
}

AdvantageEstimate pke_multi_hybrid_game(const Pke& scheme, unsigned n, int f,
                                        int g, const PkeAdversary& adv,
                                        long long runs, double beta,
                                        const RandomStream& base) {
  AdvantageEstimate e;
  e.trials = runs;
  e.acceptance_lo = pke_hybrid_acceptance(scheme, n, f, g, 1, 1, adv, runs, base);
  e.acceptance_hi =
      pke_hybrid_acceptance(scheme, n, f, g, g + 1, f, adv, runs, base);
  e.advantage = std::fabs(e.acceptance_lo - e.acceptance_hi);
  e.radius = 2.0 * hoeffding_radius(1.0, beta, runs);
  return e;
}

}  // namespace repgame
