// Honest machines, the phase tracker, and the match engine. The protocol
// arithmetic here is exact: block boundaries, sequence offsets, and memory
// effects are asserted round by round, not statistically.
#include <doctest.h>

#include <memory>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "repgame/adversary.hpp"
#include "repgame/bundle.hpp"
#include "repgame/compiler.hpp"
#include "repgame/engine.hpp"
#include "repgame/errors.hpp"
#include "repgame/machines.hpp"
#include "repgame/payoff.hpp"
#include "repgame/phase.hpp"
#include "repgame/prf.hpp"

using namespace repgame;
using testutil::load_game;

namespace {

StrategyBundle xp_sp() {
  return compile_sp(load_game("xorpennies.game"), Polynomial::parse("2"));
}

std::vector<Profile> profiles_of(const Transcript& tr) {
  std::vector<Profile> h;
  h.reserve(tr.rounds.size());
  for (const RoundRecord& r : tr.rounds) h.push_back(r.actions);
  return h;
}

// machines for one match: a deviator in seat 0, honest play elsewhere
struct Table {
  std::vector<std::unique_ptr<Machine>> own;
  std::vector<Machine*> ptrs;

  Table(const StrategyBundle& b, const std::string& spec0) {
    for (int i = 0; i < b.game.players(); ++i) {
      if (i == 0 && !spec0.empty())
        own.push_back(build_adversary(AdversarySpec::parse(spec0), b, i));
      else
        own.push_back(make_honest_machine(i));
      ptrs.push_back(own.back().get());
    }
  }
};

}  // namespace

TEST_CASE("machine memory serialization is total") {
  MachineMemory clean;
  CHECK(clean.serialize() == "mem v1 clean");
  CHECK(MachineMemory::deserialize("mem v1 clean").kind ==
        MachineMemory::Kind::Clean);

  MachineMemory def;
  def.kind = MachineMemory::Kind::Defaulted;
  def.block = 7;
  CHECK(def.serialize() == "mem v1 defaulted 7");
  MachineMemory def2 = MachineMemory::deserialize(def.serialize());
  CHECK(def2.kind == MachineMemory::Kind::Defaulted);
  CHECK(def2.block == 7);

  MachineMemory blk;
  blk.kind = MachineMemory::Kind::Block;
  blk.block = 12;
  blk.punished = 2;
  blk.pk = {1, 0, 1};
  blk.sk = {0, 0, 1, 1};
  blk.seed = {1, 1};
  MachineMemory blk2 = MachineMemory::deserialize(blk.serialize());
  CHECK(blk2.kind == MachineMemory::Kind::Block);
  CHECK(blk2.block == 12);
  CHECK(blk2.punished == 2);
  CHECK(blk2.pk == blk.pk);
  CHECK(blk2.sk == blk.sk);
  CHECK(blk2.seed == blk.seed);
  CHECK(blk2.serialize() == blk.serialize());

  // anything that does not parse lands on Corrupt instead of throwing
  for (const char* bad :
       {"", "mem", "mem v1", "mem v1 bogus", "mem v2 clean",
        "mem v1 clean extra", "mem v1 defaulted", "mem v1 defaulted -3",
        "mem v1 defaulted 3 junk", "mem v1 block 3 punished 1 pk 01x sk - seed -",
        "mem v1 block -1 punished 0 pk - sk - seed -",
        "mem v1 block 3 punished 1 pk 01", "total garbage \x01\x02"}) {
    CHECK(MachineMemory::deserialize(bad).kind == MachineMemory::Kind::Corrupt);
  }
  CHECK(MachineMemory::deserialize("mem v1 corrupt").serialize() ==
        "mem v1 corrupt");
}

TEST_CASE("machine memory deserialization survives fuzz and is idempotent") {
  RandomStream rng(881);
  const char alphabet[] = "mem v1 block punished pk sk seed 013-\n\t\x7f";
  for (int trial = 0; trial < 300; ++trial) {
    std::string s;
    unsigned len = static_cast<unsigned>(rng.below(40));
    for (unsigned k = 0; k < len; ++k)
      s += alphabet[rng.below(sizeof(alphabet) - 1)];
    std::string s1 = MachineMemory::deserialize(s).serialize();
    std::string s2 = MachineMemory::deserialize(s1).serialize();
    CHECK(s1 == s2);
  }
}

TEST_CASE("phase tracker walks sequence, block, and resume offsets") {
  StageGame g = load_game("allzero.game");
  StrategyBundle b(g);
  b.sq.profiles = {0, 3, 5};
  b.params.m = 4;
  b.params.ell = 6;

  PhaseTracker tr(b);
  CHECK(tr.state().phase == 1);
  CHECK(tr.state().t == 0);
  CHECK(tr.state().sq_offset == 0);

  // five honest rounds wrap the three-profile sequence
  for (int k = 0; k < 5; ++k)
    tr.advance(g.profile_at(b.sq.profiles[static_cast<size_t>(k % 3)]));
  CHECK(tr.state().phase == 1);
  CHECK(tr.state().t == 5);
  CHECK(tr.state().sq_offset == 2);

  // player 1 deviates at round 5; the spoiled offset is remembered
  Profile dev = g.profile_at(b.sq.profiles[2]);
  dev[1] = 1 - dev[1];
  tr.advance(dev);
  CHECK(tr.state().phase == 2);
  CHECK(tr.state().t == 6);
  CHECK(tr.state().block_start == 5);
  CHECK(tr.state().punished == 1);
  CHECK(tr.state().resume_offset == 2);
  CHECK(tr.state().blocks_seen == 1);
  CHECK(tr.state().offset_1based() == 1);
  CHECK(tr.state().phase2_off() == 0);

  // rounds 6..9 are phase 2, rounds 10..15 phase 3; content is irrelevant
  Profile zeros(3, 0);
  for (long long t = 6; t <= 15; ++t) {
    CHECK(tr.state().phase == (t <= 9 ? 2 : 3));
    CHECK(tr.state().offset_1based() == (t <= 9 ? t - 5 : t - 9));
    tr.advance(zeros);
  }
  CHECK(tr.state().phase == 1);
  CHECK(tr.state().t == 16);
  CHECK(tr.state().sq_offset == 2);
  CHECK(tr.state().block_start == -1);
  CHECK(tr.state().punished == -1);

  CHECK_THROWS_AS(tr.advance(Profile(2, 0)), DomainError);
}

TEST_CASE("phase tracker punishes the lowest index on a joint deviation") {
  StageGame g = load_game("allzero.game");
  StrategyBundle b(g);
  b.sq.profiles = {0};
  b.params.m = 2;
  b.params.ell = 2;

  PhaseTracker tr(b);
  Profile dev = g.profile_at(0);
  dev[0] = 1;
  dev[2] = 1;
  tr.advance(dev);
  CHECK(tr.state().punished == 0);
}

TEST_CASE("zero ell keeps phase 3 open forever") {
  StageGame g = load_game("allzero.game");
  StrategyBundle b(g);
  b.sq.profiles = {0};
  b.params.m = 3;
  b.params.ell = 0;

  PhaseTracker tr(b);
  Profile dev(3, 0);
  dev[2] = 1;
  tr.advance(dev);
  Profile zeros(3, 0);
  for (int k = 0; k < 50; ++k) tr.advance(zeros);
  CHECK(tr.state().phase == 3);
  CHECK(tr.state().punished == 2);

  // phase_of folds histories to the same state as a live tracker
  std::vector<Profile> h(1, dev);
  h.insert(h.end(), 50, zeros);
  PhaseState folded = phase_of(b, h);
  CHECK(folded.phase == 3);
  CHECK(folded.t == 51);
  CHECK(folded.block_start == 0);
}

TEST_CASE("honest machines replay the public sequence cyclically") {
  StrategyBundle b =
      compile_ne(load_game("xorpennies.game"), Polynomial::parse("2"));
  const long long L = static_cast<long long>(b.sq.profiles.size());

  Table tbl(b, "");
  MatchConfig cfg;
  cfg.horizon = 2 * L + 5;
  cfg.master_seed = 11;
  Transcript tr = run_match(b, tbl.ptrs, cfg);

  REQUIRE(static_cast<long long>(tr.rounds.size()) == cfg.horizon);
  for (long long t = 0; t < cfg.horizon; ++t) {
    const RoundRecord& r = tr.rounds[static_cast<size_t>(t)];
    CHECK(r.phase == 1);
    CHECK(!r.flagged);
    CHECK(r.actions == b.game.profile_at(b.sq.profiles[static_cast<size_t>(t % L)]));
  }

  // the truncated payoff sits within the declared tail of the exact value
  std::vector<Rat> exact =
      payoff_eventually_periodic(b.game, {}, b.sq.profiles, b.params.delta);
  for (int i = 0; i < 3; ++i) {
    Rat gap = exact[static_cast<size_t>(i)] - tr.payoff[static_cast<size_t>(i)];
    if (gap < 0) gap = -gap;
    CHECK(gap <= tr.truncation_bound);
  }
}

TEST_CASE("matches with equal seeds are byte-identical") {
  StrategyBundle b = xp_sp();
  MatchConfig cfg;
  cfg.horizon = 60;  // covers the key exchange of the first block
  cfg.master_seed = 99;

  Table t1(b, "once:3");
  Table t2(b, "once:3");
  Transcript a = run_match(b, t1.ptrs, cfg);
  Transcript c = run_match(b, t2.ptrs, cfg);
  CHECK(a.serialize(b) == c.serialize(b));
  CHECK(a.final_memories == c.final_memories);

  Table t3(b, "once:3");
  cfg.master_seed = 100;
  Transcript d = run_match(b, t3.ptrs, cfg);
  CHECK(a.serialize(b) != d.serialize(b));
}

TEST_CASE("a deviation drives the full block schedule on a compiled bundle") {
  StrategyBundle b = xp_sp();
  REQUIRE(b.params.m == 35);
  REQUIRE(b.params.ell == 144);
  const long long L = static_cast<long long>(b.sq.profiles.size());

  Table tbl(b, "once:3");
  MatchConfig cfg;
  cfg.horizon = 185;
  cfg.master_seed = 5;
  Transcript tr = run_match(b, tbl.ptrs, cfg);

  // deviation in round 3 opens a block of exactly m + ell rounds
  for (long long t = 0; t <= 3; ++t)
    CHECK(tr.rounds[static_cast<size_t>(t)].phase == 1);
  for (long long t = 4; t <= 38; ++t)
    CHECK(tr.rounds[static_cast<size_t>(t)].phase == 2);
  for (long long t = 39; t <= 182; ++t)
    CHECK(tr.rounds[static_cast<size_t>(t)].phase == 3);
  CHECK(tr.rounds[183].phase == 1);

  // play resumes at the spoiled sequence offset; honest seats prove it
  Profile resumed = b.game.profile_at(b.sq.profiles[static_cast<size_t>(3 % L)]);
  CHECK(tr.rounds[183].actions[1] == resumed[1]);
  CHECK(tr.rounds[183].actions[2] == resumed[2]);

  // the punished seat answers the published table with its fixed response
  for (long long t = 39; t <= 182; ++t)
    CHECK(tr.rounds[static_cast<size_t>(t)].actions[0] == b.punished_response(0));
}

TEST_CASE("whitebox hook pins the dealer seed and the coordination") {
  StrategyBundle b = xp_sp();
  Table tbl(b, "once:3");
  MatchConfig cfg;
  cfg.horizon = 185;
  cfg.master_seed = 21;
  cfg.whitebox = true;
  cfg.whitebox_seed = {1, 0};
  Transcript tr = run_match(b, tbl.ptrs, cfg);

  // with the seed fixed, every phase-3 round is predictable in closed form;
  // the recipient must recover the same seed through the action channel
  const Prf& prf = prf_by_id(b.prf_id);
  for (long long t = 39; t <= 182; ++t) {
    Profile want = punishment_profile(b, 0, prf, cfg.whitebox_seed, t - 39);
    CHECK(tr.rounds[static_cast<size_t>(t)].actions[1] == want[1]);
    CHECK(tr.rounds[static_cast<size_t>(t)].actions[2] == want[2]);
  }

  // the dealer's ciphertext slot is readable back from public history
  std::vector<Profile> hist = profiles_of(tr);
  CHECK(read_public_key(b, hist, 3, 2).size() == b.keylen());
  CHECK(read_ciphertext(b, hist, 3, 1, 0).size() == b.zlen());
  CHECK_THROWS_AS(read_public_key(b, {}, 0, 1), DomainError);
  CHECK_THROWS_AS(read_ciphertext(b, {}, 0, 1, 0), DomainError);
}

TEST_CASE("resume continues bit for bit from a mid-block cut") {
  StrategyBundle b = xp_sp();
  MatchConfig full_cfg;
  full_cfg.horizon = 240;
  full_cfg.master_seed = 77;

  Table tf(b, "once:3");
  Transcript full = run_match(b, tf.ptrs, full_cfg);

  // cut at round 140, inside phase 3 of the block
  MatchConfig head_cfg;
  head_cfg.horizon = 140;
  head_cfg.master_seed = 77;
  Table th(b, "once:3");
  Transcript head = run_match(b, th.ptrs, head_cfg);

  MatchConfig tail_cfg;
  tail_cfg.horizon = 100;
  tail_cfg.master_seed = 77;
  Table tt(b, "once:3");
  Transcript tail = resume_match(b, tt.ptrs, profiles_of(head),
                                 head.final_memories, tail_cfg);

  CHECK(tail.start == 140);
  REQUIRE(tail.rounds.size() == 100);
  for (size_t k = 0; k < tail.rounds.size(); ++k) {
    CHECK(tail.rounds[k].t == full.rounds[140 + k].t);
    CHECK(tail.rounds[k].phase == full.rounds[140 + k].phase);
    CHECK(tail.rounds[k].actions == full.rounds[140 + k].actions);
  }
  CHECK(tail.final_memories == full.final_memories);
}

TEST_CASE("a tampered punisher defaults until the block ends") {
  StrategyBundle b = xp_sp();
  MatchConfig cfg;
  cfg.horizon = 190;
  cfg.master_seed = 31;

  Table plain_tbl(b, "once:3");
  Transcript plain = run_match(b, plain_tbl.ptrs, cfg);

  cfg.tampers = {TamperEvent{2, 60, "scrambled"}};
  Table tam_tbl(b, "once:3");
  Transcript tam = run_match(b, tam_tbl.ptrs, cfg);

  bool diverged = false;
  for (long long t = 0; t < cfg.horizon; ++t) {
    const Profile& pa = plain.rounds[static_cast<size_t>(t)].actions;
    const Profile& pt = tam.rounds[static_cast<size_t>(t)].actions;
    // seats 0 and 1 never read seat 2's state, so they match throughout
    CHECK(pa[0] == pt[0]);
    CHECK(pa[1] == pt[1]);
    if (t < 60) CHECK(pa == pt);
    if (t >= 60 && t <= 182) {
      CHECK(pt[2] == b.defaults[2]);
      if (pa[2] != pt[2]) diverged = true;
    }
    if (t >= 183) CHECK(pa == pt);  // the next phase 1 heals the machine
  }
  CHECK(diverged);
}

TEST_CASE("transcripts round trip and reject inconsistent text") {
  StrategyBundle b = xp_sp();
  Table tbl(b, "once:3");
  MatchConfig cfg;
  cfg.horizon = 50;
  cfg.master_seed = 8;
  Transcript tr = run_match(b, tbl.ptrs, cfg);

  std::string text = tr.serialize(b);
  Transcript back = Transcript::parse(text, b);
  CHECK(back.serialize(b) == text);

  // the recorded payoff is re-derivable from the recorded rounds alone
  std::vector<long long> idx;
  for (const RoundRecord& r : back.rounds) idx.push_back(b.game.index_of(r.actions));
  CHECK(back.payoff == payoff_truncated(b.game, idx, back.delta));

  auto corrupt = [&](const std::string& from, const std::string& to) {
    std::string c = text;
    size_t at = c.find(from);
    REQUIRE(at != std::string::npos);
    c.replace(at, from.size(), to);
    return c;
  };
  CHECK_THROWS_AS(Transcript::parse(corrupt("utils 1", "utils 7"), b),
                  ParseError);
  CHECK_THROWS_AS(Transcript::parse(corrupt("horizon 50", "horizon 49"), b),
                  ParseError);
  CHECK_THROWS_AS(Transcript::parse(corrupt("end", "# end"), b), ParseError);
  CHECK_THROWS_AS(Transcript::parse(corrupt("truncation_bound", "junk_line"), b),
                  ParseError);
}

TEST_CASE("engine rejects malformed configurations") {
  StrategyBundle b = xp_sp();
  Table tbl(b, "");
  MatchConfig cfg;
  cfg.horizon = -1;
  CHECK_THROWS_AS(run_match(b, tbl.ptrs, cfg), DomainError);

  cfg.horizon = 1;
  std::vector<Machine*> two(tbl.ptrs.begin(), tbl.ptrs.end() - 1);
  CHECK_THROWS_AS(run_match(b, two, cfg), DomainError);

  cfg.whitebox = true;
  cfg.whitebox_seed = {1};  // needs n bits
  CHECK_THROWS_AS(run_match(b, tbl.ptrs, cfg), DomainError);
  cfg.whitebox = false;

  cfg.tampers = {TamperEvent{9, 0, "x"}};
  CHECK_THROWS_AS(run_match(b, tbl.ptrs, cfg), DomainError);
  cfg.tampers.clear();

  CHECK_THROWS_AS(
      resume_match(b, tbl.ptrs, {Profile{0, 9, 0}}, {}, cfg), DomainError);
  CHECK_THROWS_AS(resume_match(b, tbl.ptrs, {Profile{0, 0}}, {}, cfg),
                  DomainError);
}
