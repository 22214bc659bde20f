// PRF family, desk-scale PKE, and the covert action channel. The schemes are
// deliberately tiny; these tests pin their contracts, not their strength.
#include <doctest.h>

#include <cmath>
#include <set>

#include "helpers.hpp"
#include "repgame/channel.hpp"
#include "repgame/dyadic.hpp"
#include "repgame/errors.hpp"
#include "repgame/pke.hpp"
#include "repgame/prf.hpp"
#include "repgame/rng.hpp"

using namespace repgame;
using testutil::load_game;

TEST_CASE("prf registry") {
  CHECK(prf_ids() == std::vector<std::string>{"ref", "const", "counter"});
  CHECK(prf_by_id("ref").id() == "ref");
  CHECK_THROWS_AS(prf_by_id("nope"), DomainError);
}

TEST_CASE("prf evaluation is deterministic") {
  const Prf& ref = prf_by_id("ref");
  RandomStream rng(50);
  for (int trial = 0; trial < 50; ++trial) {
    unsigned n = 2 + static_cast<unsigned>(rng.below(9));
    auto seed = rng.bit_vector(n);
    auto x = rng.bit_vector(n);
    auto once = ref.eval(seed, x);
    CHECK(once == ref.eval(seed, x));
    CHECK(once.size() == n);
  }
}

TEST_CASE("reference prf output bits are unbiased within 3 sigma") {
  const Prf& ref = prf_by_id("ref");
  RandomStream rng(51);
  const unsigned n = 10;
  auto seed = rng.bit_vector(n);
  long long ones = 0, total = 0;
  for (long long k = 0; k < 1000; ++k) {
    auto out = ref.eval(seed, value_to_bits(k % (1 << n), n));
    for (uint8_t b : out) {
      ones += b;
      ++total;
    }
  }
  double mean = static_cast<double>(ones) / total;
  double sigma3 = 3.0 * std::sqrt(0.25 / total);
  CHECK(std::abs(mean - 0.5) < sigma3);
}

TEST_CASE("broken prf variants behave as labeled") {
  const Prf& c = prf_by_id("const");
  auto seed = value_to_bits(5, 4);
  CHECK(c.eval(seed, value_to_bits(3, 4)) == c.eval(seed, value_to_bits(9, 4)));

  // counter: F(x) = x+1 mod 2^n, independent of the seed
  const Prf& ctr = prf_by_id("counter");
  CHECK(bits_to_value(ctr.eval(seed, value_to_bits(3, 4))) == 4);
  CHECK(bits_to_value(ctr.eval(seed, value_to_bits(15, 4))) == 0);
  auto seed2 = value_to_bits(11, 4);
  CHECK(ctr.eval(seed, value_to_bits(6, 4)) ==
        ctr.eval(seed2, value_to_bits(6, 4)));
}

TEST_CASE("pke registry and shapes") {
  CHECK(pke_ids() == std::vector<std::string>{"elgamal107", "identity"});
  const Pke& eg = pke_by_id("elgamal107");
  CHECK(eg.keylen(2) == 7);
  CHECK(eg.zlen(2) == 28);
  CHECK(eg.zlen(3) == 42);
  const Pke& id = pke_by_id("identity");
  CHECK(id.keylen(5) == 1);
  CHECK(id.zlen(5) == 5);
}

TEST_CASE("encrypt-decrypt round trip over 1000 random messages") {
  for (const char* pid : {"elgamal107", "identity"}) {
    const Pke& scheme = pke_by_id(pid);
    RandomStream rng(60);
    for (int trial = 0; trial < 1000; ++trial) {
      unsigned n = 2 + static_cast<unsigned>(rng.below(7));
      KeyPair kp = scheme.keygen(n, rng);
      auto msg = rng.bit_vector(n);
      auto ct = scheme.encrypt(n, kp.pk, msg, rng);
      CHECK(ct.size() == scheme.zlen(n));
      CHECK(scheme.decrypt(n, kp.sk, ct) == msg);
    }
  }
}

TEST_CASE("elgamal encryption is randomized") {
  const Pke& eg = pke_by_id("elgamal107");
  RandomStream rng(61);
  KeyPair kp = eg.keygen(4, rng);
  auto msg = value_to_bits(9, 4);
  std::set<std::vector<uint8_t>> seen;
  for (int trial = 0; trial < 1000; ++trial)
    seen.insert(eg.encrypt(4, kp.pk, msg, rng));
  CHECK(seen.size() > 1);
}

TEST_CASE("mismatched secret key fails to decrypt") {
  const Pke& eg = pke_by_id("elgamal107");
  RandomStream rng(62);
  KeyPair kp1 = eg.keygen(6, rng);
  KeyPair kp2 = eg.keygen(6, rng);
  REQUIRE(kp1.sk != kp2.sk);
  auto msg = value_to_bits(33, 6);
  auto ct = eg.encrypt(6, kp1.pk, msg, rng);
  bool wrong = false;
  try {
    wrong = eg.decrypt(6, kp2.sk, ct) != msg;
  } catch (const DecodeError&) {
    wrong = true;
  }
  CHECK(wrong);
}

TEST_CASE("channel encoding: bits 101 map to actions (1,0,1)") {
  StageGame g = load_game("xorpennies.game");
  ChannelSplit split = ChannelSplit::defaults(g);
  std::vector<uint8_t> bits{1, 0, 1};
  std::vector<Action> acts = encode_bits(split, g, 0, bits);
  CHECK(acts == std::vector<Action>{1, 0, 1});
  CHECK(decode_bits(split, 0, acts) == bits);
}

TEST_CASE("channel round trip over all short bit strings") {
  StageGame g = load_game("xorpennies.game");
  ChannelSplit split = ChannelSplit::defaults(g);
  for (unsigned len = 1; len <= 16; ++len) {
    // sample the corners and a stride through the space
    for (long long v : {0LL, 1LL, (1LL << len) - 1, (1LL << len) / 3}) {
      auto bits = value_to_bits(v, len);
      CHECK(decode_bits(split, 1, encode_bits(split, g, 1, bits)) == bits);
    }
  }
}

TEST_CASE("multi-action sets treat every non-zero-set action as bit 1") {
  std::string text =
      "game tri\nplayers 3\nactions 3 2 2\n";
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        text += "payoff " + std::to_string(a) + " " + std::to_string(b) + " " +
                std::to_string(c) + " : 0 0 0\n";
  text += "end\n";
  StageGame g = StageGame::parse(text);
  ChannelSplit split = ChannelSplit::defaults(g);
  CHECK(decode_bits(split, 0, {0, 1, 2}) == std::vector<uint8_t>{0, 1, 1});
  // encoding picks the lowest-index carrier for each bit
  CHECK(encode_bits(split, g, 0, {1, 1, 0}) == std::vector<Action>{1, 1, 0});
}

TEST_CASE("three-player schedule has a single ciphertext slot") {
  // c=3: m = keylen + z
  Phase2Schedule s = Phase2Schedule::build(3, 0, 7, 28);
  CHECK(s.m == 35);
  CHECK(s.dealer == 1);
  CHECK(s.recipients == std::vector<int>{2});
  CHECK(s.slot_begin(0) == 7);
  CHECK(s.slot_end(0) == 35);
  // everyone broadcasts key bits during the first keylen rounds
  CHECK(s.role(1, 0) == Phase2Schedule::Role::KeyBit);
  CHECK(s.role(2, 6) == Phase2Schedule::Role::KeyBit);
  CHECK(s.role(0, 3) == Phase2Schedule::Role::Punished);
  // during the slot the dealer talks and the recipient listens
  CHECK(s.role(1, 7) == Phase2Schedule::Role::CiphertextBit);
  CHECK(s.role(2, 7) == Phase2Schedule::Role::Idle);
}

TEST_CASE("four-player schedule slots: keylen 8, z 6") {
  Phase2Schedule s = Phase2Schedule::build(4, 1, 8, 6);
  CHECK(s.m == 20);
  CHECK(s.dealer == 2);
  // recipients wrap around the table, skipping punished and dealer
  CHECK(s.recipients == std::vector<int>{3, 0});
  CHECK(s.slot_begin(0) == 8);
  CHECK(s.slot_end(0) == 14);
  CHECK(s.slot_begin(1) == 14);
  CHECK(s.slot_end(1) == 20);
  CHECK(s.role(2, 9) == Phase2Schedule::Role::CiphertextBit);
  CHECK(s.role(3, 9) == Phase2Schedule::Role::Idle);
  CHECK(s.role(0, 15) == Phase2Schedule::Role::Idle);
  CHECK(s.role(1, 15) == Phase2Schedule::Role::Punished);
}
