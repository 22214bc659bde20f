#include "repgame/adversary.hpp"

#include <sstream>

#include "repgame/dyadic.hpp"
#include "repgame/errors.hpp"
#include "repgame/pke.hpp"
#include "repgame/prf.hpp"
#include "repgame/stats.hpp"

namespace repgame {

namespace {

std::vector<std::string> split_colon(const std::string& s) {
  std::vector<std::string> parts;
  size_t start = 0;
  while (true) {
    size_t p = s.find(':', start);
    if (p == std::string::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, p - start));
    start = p + 1;
  }
}

int hex_val(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::string decode_hex(const std::string& s) {
  if (s.size() % 2 != 0)
    throw ParseError("adversary: hex payload needs an even digit count");
  std::string out;
  out.reserve(s.size() / 2);
  for (size_t i = 0; i < s.size(); i += 2) {
    int hi = hex_val(s[i]), lo = hex_val(s[i + 1]);
    if (hi < 0 || lo < 0) throw ParseError("adversary: bad hex digit");
    out.push_back(static_cast<char>(hi * 16 + lo));
  }
  return out;
}

std::string encode_hex(const std::string& s) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(s.size() * 2);
  for (unsigned char c : s) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 15]);
  }
  return out;
}

long long parse_ll(const std::string& s, const std::string& what) {
  try {
    size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used != s.size() || v < 0)
      throw ParseError("adversary: bad " + what + ": '" + s + "'");
    return v;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("adversary: bad " + what + ": '" + s + "'");
  }
}

}  // namespace

std::string AdversarySpec::str() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::Never:
      out << "never";
      break;
    case Kind::Once:
      out << "once:" << t;
      break;
    case Kind::Phase1:
      out << "phase1:" << t;
      break;
    case Kind::Tamper:
      out << "tamper:" << tamper_target + 1 << ":" << tamper_round << ":"
          << encode_hex(tamper_payload);
      break;
    case Kind::KeyThief:
      out << "keythief";
      break;
    case Kind::Predictor:
      out << "predictor:" << prf_id;
      break;
    case Kind::Eavesdrop:
      out << "eavesdrop";
      break;
  }
  return out.str();
}

AdversarySpec AdversarySpec::parse(const std::string& text) {
  std::vector<std::string> p = split_colon(text);
  AdversarySpec s;
  if (p[0] == "never" && p.size() == 1) {
    s.kind = Kind::Never;
  } else if (p[0] == "once" && p.size() == 2) {
    s.kind = Kind::Once;
    s.t = parse_ll(p[1], "deviation round");
  } else if (p[0] == "phase1" && p.size() == 2) {
    s.kind = Kind::Phase1;
    s.t = parse_ll(p[1], "start round");
  } else if (p[0] == "tamper" && p.size() == 4) {
    s.kind = Kind::Tamper;
    long long who = parse_ll(p[1], "tamper target");
    if (who < 1) throw ParseError("adversary: tamper target is 1-based");
    s.tamper_target = static_cast<int>(who - 1);
    s.tamper_round = parse_ll(p[2], "tamper round");
    s.tamper_payload = decode_hex(p[3]);
  } else if (p[0] == "keythief" && p.size() == 1) {
    s.kind = Kind::KeyThief;
  } else if (p[0] == "predictor" && p.size() == 2 && !p[1].empty()) {
    s.kind = Kind::Predictor;
    s.prf_id = p[1];
  } else if (p[0] == "eavesdrop" && p.size() == 1) {
    s.kind = Kind::Eavesdrop;
  } else {
    throw ParseError("adversary: unrecognized spec '" + text + "'");
  }
  return s;
}

std::vector<TamperEvent> AdversarySpec::tamper_events() const {
  if (kind != Kind::Tamper) return {};
  return {TamperEvent{tamper_target, tamper_round, tamper_payload}};
}

namespace {

// All deviators delegate to an inner honest machine except on the rounds
// their attack touches, so punisher duty, the phase-2 best response of a
// punished player, and memory handling stay byte-identical to honest play.
class AdversaryBase : public Machine {
 public:
  AdversaryBase(int player, std::string name)
      : self_(player), name_(std::move(name)),
        inner_(make_honest_machine(player)) {}

  std::string describe() const override { return name_; }
  bool reactive(const StepContext& ctx) const override {
    return inner_->reactive(ctx);
  }
  std::string memory() const override { return inner_->memory(); }
  void set_memory(const std::string& text) override {
    inner_->set_memory(text);
  }

 protected:
  Action honest(const StepContext& ctx) { return inner_->step(ctx); }

  Action sq_action(const StepContext& ctx) const {
    long long idx =
        ctx.bundle.sq.profiles[static_cast<size_t>(ctx.phase.sq_offset)];
    return ctx.bundle.game.profile_at(idx)[self_];
  }
  Action lowest_differing(const StepContext& ctx) const {
    return sq_action(ctx) == 0 ? 1 : 0;
  }

  int self_;

 private:
  std::string name_;
  std::unique_ptr<Machine> inner_;
};

// never / tamper: play honestly; tampering is an engine event, not behavior
class PassiveAdversary : public AdversaryBase {
 public:
  using AdversaryBase::AdversaryBase;
  Action step(const StepContext& ctx) override { return honest(ctx); }
};

class SqDeviator : public AdversaryBase {
 public:
  SqDeviator(int player, std::string name, long long t, bool every)
      : AdversaryBase(player, std::move(name)), t_(t), every_(every) {}

  Action step(const StepContext& ctx) override {
    const PhaseState& ph = ctx.phase;
    if (ph.phase != 1) return honest(ctx);
    if (every_) {
      if (ctx.t >= t_) return lowest_differing(ctx);
      return honest(ctx);
    }
    if (ph.blocks_seen == 0) {
      if (ctx.t >= t_) return lowest_differing(ctx);
      return honest(ctx);
    }
    // after serving its punishment: greedy play against the public sequence
    long long idx =
        ctx.bundle.sq.profiles[static_cast<size_t>(ph.sq_offset)];
    Profile expect = ctx.bundle.game.profile_at(idx);
    return myopic_best_response(ctx.bundle.game, self_, expect);
  }

 private:
  long long t_;
  bool every_;
};

class Predictor : public AdversaryBase {
 public:
  Predictor(int player, std::string name, const Prf& model)
      : AdversaryBase(player, std::move(name)), model_(&model) {}

  Action step(const StepContext& ctx) override {
    const PhaseState& ph = ctx.phase;
    if (ph.phase == 1) return lowest_differing(ctx);
    if (ph.phase == 3 && ph.punished == self_) {
      // a seed-independent PRF makes the coordination fully predictable
      std::vector<uint8_t> zero(ctx.bundle.n_bits(), 0);
      Profile predicted = punishment_profile(ctx.bundle, self_, *model_, zero,
                                             ph.phase3_off());
      return myopic_best_response(ctx.bundle.game, self_, predicted);
    }
    return honest(ctx);
  }

 private:
  const Prf* model_;
};

class Eavesdropper : public AdversaryBase {
 public:
  using AdversaryBase::AdversaryBase;

  Action step(const StepContext& ctx) override {
    const PhaseState& ph = ctx.phase;
    if (ph.phase == 1) return lowest_differing(ctx);
    if (ph.phase != 3 || ph.punished != self_) return honest(ctx);

    const StrategyBundle& b = ctx.bundle;
    const unsigned n = b.n_bits();
    const long long window = 1LL << n;
    const long long off3 = ph.phase3_off();
    if (off3 < window) return honest(ctx);  // still collecting evidence

    // guess: the first ciphertext slot carries the seed in its first n bits
    // (true exactly when encryption is the identity)
    const Phase2Schedule sched = b.schedule(self_);
    std::vector<uint8_t> ct =
        read_ciphertext(b, ctx.history, ph.block_start, sched.dealer, 0);
    std::vector<uint8_t> candidate(ct.begin(), ct.begin() + n);

    const Prf& prf = prf_by_id(b.prf_id);
    const long long p3_start = ph.block_start + b.params.m + 1;
    for (long long k = 0; k < window; ++k) {
      Profile predicted = punishment_profile(b, self_, prf, candidate, k);
      const Profile& seen = ctx.history[static_cast<size_t>(p3_start + k)];
      for (int i = 0; i < b.game.players(); ++i)
        if (i != self_ && predicted[i] != seen[i]) return honest(ctx);
    }
    Profile predicted = punishment_profile(b, self_, prf, candidate, off3);
    return myopic_best_response(b.game, self_, predicted);
  }
};

class KeyThief : public AdversaryBase {
 public:
  using AdversaryBase::AdversaryBase;

  Action step(const StepContext& ctx) override {
    const PhaseState& ph = ctx.phase;
    if (ph.phase == 1) {
      if (ph.blocks_seen == 0) return lowest_differing(ctx);
      return honest(ctx);  // one exploited block, then honest forever
    }
    if (ph.phase == 3 && ph.punished == self_ && ph.blocks_seen == 1) {
      if (!ctx.whitebox_seed)
        throw DomainError("key-thief requires the whitebox engine hook");
      const Prf& prf = prf_by_id(ctx.bundle.prf_id);
      Profile known = punishment_profile(ctx.bundle, self_, prf,
                                         *ctx.whitebox_seed, ph.phase3_off());
      return myopic_best_response(ctx.bundle.game, self_, known);
    }
    return honest(ctx);
  }
};

}  // namespace

std::unique_ptr<Machine> build_adversary(const AdversarySpec& spec,
                                         const StrategyBundle& b, int player) {
  if (player < 0 || player >= b.game.players())
    throw DomainError("adversary: player index out of range");
  switch (spec.kind) {
    case AdversarySpec::Kind::Never:
    case AdversarySpec::Kind::Tamper:
      return std::make_unique<PassiveAdversary>(player, spec.str());
    case AdversarySpec::Kind::Once:
      return std::make_unique<SqDeviator>(player, spec.str(), spec.t, false);
    case AdversarySpec::Kind::Phase1:
      return std::make_unique<SqDeviator>(player, spec.str(), spec.t, true);
    case AdversarySpec::Kind::Predictor:
      return std::make_unique<Predictor>(player, spec.str(),
                                         prf_by_id(spec.prf_id));
    case AdversarySpec::Kind::Eavesdrop:
      return std::make_unique<Eavesdropper>(player, spec.str());
    case AdversarySpec::Kind::KeyThief:
      if (b.variant != Variant::SP)
        throw DomainError(
            "adversary: key-thief needs a subgame-perfect bundle");
      return std::make_unique<KeyThief>(player, spec.str());
  }
  throw DomainError("adversary: unknown kind");
}

namespace {

struct LabRun {
  std::vector<Profile> rounds;  // deviation round, phase 2, phase 3
  Rat phase3_mean;
};

// One punishment block, simulated directly from the protocol arithmetic
// rather than through the engine. The deployed variant must match the
// engine's rounds bit for bit; tests hold the two implementations together.
LabRun lab_run(const StrategyBundle& b, HybridVariant v,
               const AdversarySpec& spec, int j, uint64_t run_key) {
  const StageGame& g = b.game;
  const int cp = g.players();
  const unsigned n = b.n_bits();
  const Pke& pke = pke_by_id(b.pke_id);
  const Prf& prf = prf_by_id(b.prf_id);
  const Phase2Schedule sched = b.schedule(j);
  const long long ell_eff =
      b.params.ell > 0 ? b.params.ell : (1LL << n) * 8;

  RandomStream master(run_key);
  std::vector<RandomStream> roots;
  roots.reserve(cp);
  for (int i = 0; i < cp; ++i)
    roots.push_back(
        master.derive({stream_label::kPlayer, static_cast<uint64_t>(i)}));

  LabRun out;
  // round 0: the deviation that starts the block, as deviate-once(0) plays it
  {
    Profile p = g.profile_at(b.sq.profiles[0]);
    p[j] = (p[j] == 0) ? 1 : 0;
    out.rounds.push_back(std::move(p));
  }

  std::vector<KeyPair> keys(cp);
  for (int i = 0; i < cp; ++i) {
    if (i == j) continue;
    RandomStream ks = roots[i].derive({stream_label::kKeygen, 0});
    keys[i] = pke.keygen(n, ks);
  }

  // H3's oracle hands out exactly the seed the deployed dealer would draw,
  // which is why those two variants coincide round for round
  std::vector<uint8_t> seed =
      roots[sched.dealer].derive({stream_label::kSeed, 0}).bit_vector(n);
  const bool blank_wire = (v == HybridVariant::H1 || v == HybridVariant::H2);
  std::vector<uint8_t> plain =
      blank_wire ? std::vector<uint8_t>(n, 0) : seed;

  for (long long off = 0; off < b.params.m; ++off) {
    Profile p(cp, 0);
    for (int i = 0; i < cp; ++i) {
      if (i == j) continue;
      uint8_t bit = 0;
      switch (sched.role(i, off)) {
        case Phase2Schedule::Role::KeyBit:
          bit = keys[i].pk[static_cast<size_t>(off)];
          break;
        case Phase2Schedule::Role::Idle:
          break;
        case Phase2Schedule::Role::CiphertextBit: {
          const long long r = (off - sched.keylen) / sched.z;
          const long long pos = (off - sched.keylen) % sched.z;
          RandomStream es = roots[i].derive({stream_label::kEncrypt, 0,
                                             static_cast<uint64_t>(r)});
          std::vector<uint8_t> ct = pke.encrypt(
              n, keys[sched.recipients[static_cast<size_t>(r)]].pk, plain, es);
          bit = ct[static_cast<size_t>(pos)];
          break;
        }
        case Phase2Schedule::Role::Punished:
          throw DomainError("lab: punisher classified as punished");
      }
      p[i] = b.split.action_for_bit(g, i, bit);
    }
    p[j] = myopic_best_response(g, j, p);
    out.rounds.push_back(std::move(p));
  }

  const Action fallback = b.punished_response(j);
  std::vector<uint8_t> zero(n, 0);
  Rat total(0);
  for (long long off3 = 0; off3 < ell_eff; ++off3) {
    long long x = off3 % (1LL << n);
    long long val;
    if (v == HybridVariant::H1) {
      // true random function of the round index, shared by all punishers
      RandomStream fx = master.derive({stream_label::kOracle,
                                       static_cast<uint64_t>(x)});
      val = static_cast<long long>(fx.bits(n));
    } else {
      val = bits_to_value(prf.eval(seed, value_to_bits(x, n)));
    }
    long long o = b.punishment[j].sample(val);
    Profile p = g.opponent_profile(j, o, 0);

    switch (spec.kind) {
      case AdversarySpec::Kind::Predictor: {
        Profile predicted = punishment_profile(
            b, j, prf_by_id(spec.prf_id), zero, off3);
        p[j] = myopic_best_response(g, j, predicted);
        break;
      }
      case AdversarySpec::Kind::Eavesdrop: {
        const long long window = 1LL << n;
        p[j] = fallback;
        if (off3 >= window) {
          std::vector<uint8_t> ct =
              read_ciphertext(b, out.rounds, 0, sched.dealer, 0);
          std::vector<uint8_t> cand(ct.begin(), ct.begin() + n);
          bool match = true;
          for (long long k = 0; k < window && match; ++k) {
            Profile pr = punishment_profile(b, j, prf, cand, k);
            const Profile& seen =
                out.rounds[static_cast<size_t>(b.params.m + 1 + k)];
            for (int i = 0; i < cp; ++i)
              if (i != j && pr[i] != seen[i]) match = false;
          }
          if (match) {
            Profile pr = punishment_profile(b, j, prf, cand, off3);
            p[j] = myopic_best_response(g, j, pr);
          }
        }
        break;
      }
      default:
        p[j] = fallback;  // the honest punished response to the table
        break;
    }
    total += g.utility(p, j);
    out.rounds.push_back(std::move(p));
  }
  out.phase3_mean = total / Rat(static_cast<long>(ell_eff));
  return out;
}

}  // namespace

HybridReport hybrid_punishment_payoff(const StrategyBundle& b,
                                      HybridVariant variant,
                                      const AdversarySpec& spec, int punished,
                                      long long runs, uint64_t seed) {
  if (runs < 100) throw DomainError("hybrid: at least 100 runs required");
  if (punished < 0 || punished >= b.game.players())
    throw DomainError("hybrid: punished player out of range");
  if (spec.kind == AdversarySpec::Kind::Tamper ||
      spec.kind == AdversarySpec::Kind::KeyThief)
    throw DomainError("hybrid: tamper and key-thief have no lab policy");

  RandomStream master(seed);
  Rat total(0);
  for (long long r = 0; r < runs; ++r) {
    uint64_t rk =
        master.derive({stream_label::kRun, static_cast<uint64_t>(r)}).key();
    total += lab_run(b, variant, spec, punished, rk).phase3_mean;
  }
  HybridReport rep;
  rep.runs = runs;
  rep.mean = total / Rat(static_cast<long>(runs));
  double range = Rat(b.game.max_util() - b.game.min_util()).get_d();
  rep.radius = hoeffding_radius(range, 0.01, runs);
  return rep;
}

std::vector<Profile> hybrid_block_rounds(const StrategyBundle& b,
                                         HybridVariant variant,
                                         const AdversarySpec& spec,
                                         int punished, uint64_t run_seed) {
  return lab_run(b, variant, spec, punished, run_seed).rounds;
}

}  // namespace repgame
