#include "repgame/machines.hpp"

#include <sstream>

#include "repgame/dyadic.hpp"
#include "repgame/errors.hpp"
#include "repgame/pke.hpp"

namespace repgame {

namespace {

std::string bits_str(const std::vector<uint8_t>& v) {
  if (v.empty()) return "-";
  std::string s;
  s.reserve(v.size());
  for (uint8_t b : v) s += (b & 1) ? '1' : '0';
  return s;
}

bool parse_bits(const std::string& s, std::vector<uint8_t>& out) {
  out.clear();
  if (s == "-") return true;
  for (char ch : s) {
    if (ch == '0')
      out.push_back(0);
    else if (ch == '1')
      out.push_back(1);
    else
      return false;
  }
  return !out.empty();
}

}  // namespace

std::string MachineMemory::serialize() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::Clean:
      out << "mem v1 clean";
      break;
    case Kind::Defaulted:
      out << "mem v1 defaulted " << block;
      break;
    case Kind::Corrupt:
      out << "mem v1 corrupt";
      break;
    case Kind::Block:
      out << "mem v1 block " << block << " punished " << punished << " pk "
          << bits_str(pk) << " sk " << bits_str(sk) << " seed "
          << bits_str(seed);
      break;
  }
  return out.str();
}

MachineMemory MachineMemory::deserialize(const std::string& text) {
  MachineMemory m;
  m.kind = Kind::Corrupt;
  std::istringstream in(text);
  std::string w1, w2, w3, tail;
  if (!(in >> w1 >> w2 >> w3) || w1 != "mem" || w2 != "v1") return m;
  if (w3 == "clean") {
    if (in >> tail) return m;
    return MachineMemory{};
  }
  if (w3 == "corrupt") return m;  // round-trips, with or without trailing junk
  if (w3 == "defaulted") {
    long long t0 = 0;
    if (!(in >> t0) || t0 < 0 || (in >> tail)) return m;
    MachineMemory d;
    d.kind = Kind::Defaulted;
    d.block = t0;
    return d;
  }
  if (w3 != "block") return m;
  MachineMemory b;
  b.kind = Kind::Block;
  std::string kp, kpk, ksk, kseed, pk_s, sk_s, seed_s;
  if (!(in >> b.block >> kp >> b.punished >> kpk >> pk_s >> ksk >> sk_s >>
        kseed >> seed_s))
    return m;
  if (kp != "punished" || kpk != "pk" || ksk != "sk" || kseed != "seed")
    return m;
  if (b.block < 0 || b.punished < 0) return m;
  if (!parse_bits(pk_s, b.pk) || !parse_bits(sk_s, b.sk) ||
      !parse_bits(seed_s, b.seed))
    return m;
  if (in >> tail) return m;
  return b;
}

Action myopic_best_response(const StageGame& g, int self,
                            const Profile& others) {
  Profile p = others;
  Action best = 0;
  Rat best_u;
  for (Action a = 0; a < g.actions(self); ++a) {
    p[self] = a;
    const Rat& u = g.utility(p, self);
    if (a == 0 || u > best_u) {
      best_u = u;
      best = a;
    }
  }
  return best;
}

Profile punishment_profile(const StrategyBundle& b, int punished,
                           const Prf& prf, const std::vector<uint8_t>& seed,
                           long long off) {
  const unsigned n = b.n_bits();
  long long x = off % (1LL << n);
  std::vector<uint8_t> out = prf.eval(seed, value_to_bits(x, n));
  long long o = b.punishment[punished].sample(bits_to_value(out));
  return b.game.opponent_profile(punished, o, 0);
}

std::vector<uint8_t> read_public_key(const StrategyBundle& b,
                                     const std::vector<Profile>& history,
                                     long long t0, int player) {
  const unsigned keylen = b.keylen();
  if (static_cast<long long>(history.size()) < t0 + 1 + keylen)
    throw DomainError("history too short to read a public key");
  std::vector<Action> acts;
  acts.reserve(keylen);
  for (unsigned k = 0; k < keylen; ++k)
    acts.push_back(history[static_cast<size_t>(t0 + 1 + k)][player]);
  return decode_bits(b.split, player, acts);
}

std::vector<uint8_t> read_ciphertext(const StrategyBundle& b,
                                     const std::vector<Profile>& history,
                                     long long t0, int dealer, int slot) {
  const unsigned keylen = b.keylen();
  const unsigned z = b.zlen();
  const long long begin = t0 + 1 + keylen + static_cast<long long>(slot) * z;
  if (static_cast<long long>(history.size()) < begin + z)
    throw DomainError("history too short to read a ciphertext");
  std::vector<Action> acts;
  acts.reserve(z);
  for (unsigned k = 0; k < z; ++k)
    acts.push_back(history[static_cast<size_t>(begin + k)][dealer]);
  return decode_bits(b.split, dealer, acts);
}

namespace {

class HonestMachine : public Machine {
 public:
  explicit HonestMachine(int player) : self_(player) {}

  std::string describe() const override { return "honest"; }

  bool reactive(const StepContext& ctx) const override {
    // the punished player best-responds to what the others are playing now
    return ctx.phase.phase == 2 && ctx.phase.punished == self_;
  }

  Action step(const StepContext& ctx) override;

  std::string memory() const override { return mem_.serialize(); }
  void set_memory(const std::string& text) override {
    mem_ = MachineMemory::deserialize(text);
  }

 private:
  Action bit_action(const StepContext& ctx, uint8_t bit) const {
    return ctx.bundle.split.action_for_bit(ctx.bundle.game, self_, bit);
  }

  int self_;
  MachineMemory mem_;
};

Action HonestMachine::step(const StepContext& ctx) {
  const StrategyBundle& b = ctx.bundle;
  const PhaseState& ph = ctx.phase;
  const StageGame& g = b.game;

  if (ph.phase == 1) {
    mem_ = MachineMemory{};  // stale block state heals to clean
    long long idx = b.sq.profiles[static_cast<size_t>(ph.sq_offset)];
    return g.profile_at(idx)[self_];
  }

  const int j = ph.punished;
  const long long t0 = ph.block_start;

  if (self_ == j) {
    // being punished: myopic best response while the key exchange runs,
    // then the fixed best response to the published punishment table
    if (ph.phase == 2) {
      if (!ctx.others)
        throw DomainError("punished machine stepped without pass-2 context");
      return myopic_best_response(g, self_, *ctx.others);
    }
    return b.punished_response(j);
  }

  const Phase2Schedule sched = b.schedule(j);
  const Pke& pke = pke_by_id(b.pke_id);
  const unsigned n = b.n_bits();

  // incoherent memory forfeits the block: default action until it ends
  auto give_up = [&]() {
    mem_ = MachineMemory{};
    mem_.kind = MachineMemory::Kind::Defaulted;
    mem_.block = t0;
    return b.defaults[self_];
  };

  if (ph.phase == 2) {
    const long long off = ph.phase2_off();
    if (off == 0) {
      // block start: whatever was in memory belongs to the past
      RandomStream ks = ctx.rng->derive(
          {stream_label::kKeygen, static_cast<uint64_t>(t0)});
      KeyPair kp = pke.keygen(n, ks);
      mem_ = MachineMemory{};
      mem_.kind = MachineMemory::Kind::Block;
      mem_.block = t0;
      mem_.punished = j;
      mem_.pk = std::move(kp.pk);
      mem_.sk = std::move(kp.sk);
    }
    if (mem_.kind != MachineMemory::Kind::Block || mem_.block != t0 ||
        mem_.punished != j || mem_.pk.size() != sched.keylen ||
        mem_.sk.empty()) {
      if (mem_.kind == MachineMemory::Kind::Defaulted && mem_.block == t0)
        return b.defaults[self_];
      return give_up();
    }

    switch (sched.role(self_, off)) {
      case Phase2Schedule::Role::KeyBit:
        return bit_action(ctx, mem_.pk[static_cast<size_t>(off)]);
      case Phase2Schedule::Role::Idle:
        return bit_action(ctx, 0);
      case Phase2Schedule::Role::CiphertextBit: {
        if (off == sched.keylen && mem_.seed.empty()) {
          if (ctx.whitebox_seed) {
            mem_.seed = *ctx.whitebox_seed;
          } else {
            RandomStream ss = ctx.rng->derive(
                {stream_label::kSeed, static_cast<uint64_t>(t0)});
            mem_.seed = ss.bit_vector(n);
          }
        }
        if (mem_.seed.size() != n) return give_up();
        const long long r = (off - sched.keylen) / sched.z;
        const long long pos = (off - sched.keylen) % sched.z;
        const int recipient = sched.recipients[static_cast<size_t>(r)];
        try {
          std::vector<uint8_t> pk_r =
              read_public_key(b, ctx.history, t0, recipient);
          RandomStream es =
              ctx.rng->derive({stream_label::kEncrypt,
                               static_cast<uint64_t>(t0),
                               static_cast<uint64_t>(r)});
          // the whole slot is re-encrypted each round; the stream is
          // re-derived from scratch, so every round agrees bit for bit
          std::vector<uint8_t> ct = pke.encrypt(n, pk_r, mem_.seed, es);
          return bit_action(ctx, ct[static_cast<size_t>(pos)]);
        } catch (const DecodeError&) {
          return bit_action(ctx, 0);  // unusable key kills this slot only
        }
      }
      case Phase2Schedule::Role::Punished:
        break;
    }
    throw DomainError("honest machine asked to fill the punished slot");
  }

  // phase 3
  if (mem_.kind == MachineMemory::Kind::Defaulted && mem_.block == t0)
    return b.defaults[self_];
  if (mem_.kind != MachineMemory::Kind::Block || mem_.block != t0 ||
      mem_.punished != j)
    return give_up();

  if (mem_.seed.size() != n) {
    // non-dealers learn the seed exactly once, on the first phase-3 round;
    // a seed lost after that point cannot be recovered from memory alone
    const long long off3 = ph.phase3_off();
    if (self_ == sched.dealer || off3 != 0 || !mem_.seed.empty())
      return give_up();
    int slot = -1;
    for (size_t k = 0; k < sched.recipients.size(); ++k)
      if (sched.recipients[k] == self_) slot = static_cast<int>(k);
    if (slot < 0) return give_up();
    try {
      std::vector<uint8_t> ct =
          read_ciphertext(b, ctx.history, t0, sched.dealer, slot);
      mem_.seed = pke.decrypt(n, mem_.sk, ct);
    } catch (const DecodeError&) {
      return give_up();
    }
    if (mem_.seed.size() != n) return give_up();
  }

  const Prf& prf = prf_by_id(b.prf_id);
  Profile p = punishment_profile(b, j, prf, mem_.seed, ph.phase3_off());
  return p[self_];
}

}  // namespace

std::unique_ptr<Machine> make_honest_machine(int player) {
  return std::make_unique<HonestMachine>(player);
}

}  // namespace repgame
