// Dyadic discretization, bit sampling, sequence construction, and parameter
// calibration. The closed-form expectations are worked by hand from the
// stated rules before being frozen here.
#include <doctest.h>

#include "helpers.hpp"
#include "repgame/dyadic.hpp"
#include "repgame/equilibrium.hpp"
#include "repgame/errors.hpp"
#include "repgame/payoff.hpp"
#include "repgame/sequence.hpp"

using namespace repgame;
using testutil::load_game;
using testutil::random_game;

TEST_CASE("already-dyadic distributions are fixed points") {
  std::vector<Rat> d{Rat(1, 2), Rat(1, 4), Rat(1, 4)};
  DyadicDistribution dd = discretize_dyadic(d, 2);
  CHECK(dd.numer == std::vector<long long>{2, 1, 1});
}

TEST_CASE("thirds round under largest remainder with low-index ties") {
  // floor(4/3) = 1 each, remainder 1 unit; all fractional parts tie at 1/3,
  // the lowest index takes the correction
  std::vector<Rat> d{Rat(1, 3), Rat(1, 3), Rat(1, 3)};
  DyadicDistribution dd = discretize_dyadic(d, 2);
  CHECK(dd.numer == std::vector<long long>{2, 1, 1});
  CHECK(dd.prob(0) == Rat(1, 2));
  CHECK(dd.prob(1) == Rat(1, 4));
}

TEST_CASE("mass is preserved exactly at any resolution") {
  RandomStream rng(31);
  for (unsigned n : {3u, 5u, 30u}) {
    std::vector<Rat> d;
    long long total = 0;
    std::vector<long long> w(7);
    for (auto& x : w) {
      x = 1 + static_cast<long long>(rng.below(100));
      total += x;
    }
    for (long long x : w)
      d.push_back(Rat(static_cast<long>(x)) / Rat(static_cast<long>(total)));
    DyadicDistribution dd = discretize_dyadic(d, n);
    long long mass = 0;
    for (long long v : dd.numer) mass += v;
    CHECK(mass == (1LL << n));
    // total variation distance <= support * 2^-n
    Rat tv(0);
    for (size_t k = 0; k < d.size(); ++k) {
      Rat diff = dd.prob(static_cast<long long>(k)) - d[k];
      if (diff < Rat(0)) diff = -diff;
      tv += diff;
    }
    CHECK(tv <= Rat(static_cast<long>(d.size())) / Rat(Int(1) << n));
  }
  // a support that cannot fit in 2^n outcomes is rejected outright
  std::vector<Rat> five(5, Rat(1, 5));
  CHECK_THROWS_AS(discretize_dyadic(five, 2), DomainError);
}

TEST_CASE("inverse-CDF sampling hand-run") {
  std::vector<Rat> d{Rat(1, 2), Rat(1, 4), Rat(1, 4)};
  DyadicDistribution dd = discretize_dyadic(d, 2);
  CHECK(dd.sample(0) == 0);
  CHECK(dd.sample(1) == 0);
  CHECK(dd.sample(2) == 1);
  CHECK(dd.sample(3) == 2);
}

TEST_CASE("exhaustive sampling counts are exactly proportional") {
  RandomStream rng(8);
  std::vector<Rat> d;
  long long total = 0;
  std::vector<long long> w{3, 1, 9, 2, 5};
  for (long long x : w) total += x;
  for (long long x : w)
    d.push_back(Rat(static_cast<long>(x)) / Rat(static_cast<long>(total)));
  DyadicDistribution dd = discretize_dyadic(d, 6);
  std::vector<long long> counts(w.size(), 0);
  for (long long v = 0; v < (1LL << 6); ++v) counts[dd.sample(v)]++;
  CHECK(counts == dd.numer);
}

TEST_CASE("point mass gives the same outcome for every bit string") {
  std::vector<Rat> d{Rat(0), Rat(1), Rat(0)};
  DyadicDistribution dd = discretize_dyadic(d, 3);
  for (long long v = 0; v < 8; ++v) CHECK(dd.sample(v) == 1);
}

TEST_CASE("bit vector round trip") {
  for (long long v = 0; v < (1LL << 10); ++v)
    CHECK(bits_to_value(value_to_bits(v, 10)) == v);
  CHECK(value_to_bits(5, 4) == std::vector<uint8_t>{0, 1, 0, 1});
}

TEST_CASE("sequence budget formula") {
  // a=1, b=-1, q=2, c=3, n=2: ((a-b)q + 1) n^c = 5 * 8 = 40
  CHECK(sequence_budget(1, -1, 2, 3, 2) == 40);
}

TEST_CASE("point-mass sigma at the full budget hits the target exactly") {
  StageGame g = load_game("xor3g.game");
  JointDistribution sigma;
  sigma.p.assign(8, Rat(0));
  sigma.p[0] = Rat(1);  // (0,0,0), pays 1 to everyone
  PlaySequence sq = build_sequence(g, sigma, 40);
  CHECK(sq.profiles.size() == 40);
  for (long long idx : sq.profiles) CHECK(idx == 0);
  for (const Rat& avg : sq.average) CHECK(avg == Rat(1));
}

TEST_CASE("uniform sigma divides w evenly in profile order") {
  StageGame g = load_game("xor3g.game");
  JointDistribution sigma;
  sigma.p.assign(8, Rat(1, 8));
  PlaySequence sq = build_sequence(g, sigma, 40);
  REQUIRE(sq.profiles.size() == 40);
  for (int k = 0; k < 8; ++k)
    for (int rep = 0; rep < 5; ++rep) CHECK(sq.profiles[k * 5 + rep] == k);
}

TEST_CASE("sequence averages land within 1/q on random pairs") {
  RandomStream rng(404);
  for (int trial = 0; trial < 100; ++trial) {
    StageGame g = random_game(rng, 3, -2, 2);
    JointDistribution sigma = correlated_equilibrium(g);
    long long n = g.size_n();
    long long q = n;  // q(n) = n
    long long w = sequence_budget(g.a_int(), g.b_int(), q, g.players(), n);
    PlaySequence sq = build_sequence(g, sigma, w);
    CHECK(static_cast<long long>(sq.profiles.size()) <= w);
    for (int i = 0; i < g.players(); ++i) {
      Rat target = expected_utility(g, sigma, i);
      CHECK(sq.average[i] >= target - Rat(1, static_cast<long>(q)));
    }
  }
}

TEST_CASE("one-shot calibration echoes the closed forms") {
  // r=2, c=3, n=2, q(n)=n: w=(3*2*2*2+1)*8=200, f'=3*2*200*2=2400
  StageGame g = load_game("xorpennies.game");
  CalibrationParams p = calibrate_ne(g, 2, 3);
  CHECK(p.w == 200);
  CHECK(p.fprime == 2400);
  // m=3: 3q(ma+1) = 24 < f', so f = f'
  CHECK(p.f == 2400);
  CHECK(p.ell == 0);
  CHECK(p.delta == Rat(1, 2400));
  CHECK_FALSE(p.subgame_perfect);

  // large m pushes the other arm of the max: 3q(ma+1) = 6*402 = 2412 > 2400
  CalibrationParams big = calibrate_ne(g, 2, 401);
  CHECK(big.f == 2412);
  CHECK(big.fprime == 2400);
}

TEST_CASE("subgame-perfect calibration echoes the closed forms") {
  // r=2, c=3, n=2, q(n)=n: w=4(2*2*2+1)*8=288, f'=4*2*288*2=4608
  StageGame g = load_game("xorpennies.game");
  CalibrationParams p = calibrate_sp(g, 2, 10);
  CHECK(p.w == 288);
  CHECK(p.fprime == 4608);
  // n=2, q=2, m=10, a=1: ell = 2*2*(10+1) = 44
  CHECK(p.ell == 44);
  // 3rq(ell+m) = 12*54 = 648 < f', so f = f'
  CHECK(p.f == 4608);
  CHECK(p.subgame_perfect);

  // the ell+m arm mirrors calibrate_ne's selection once it dominates
  CalibrationParams big = calibrate_sp(g, 2, 1000);
  // ell = 4*1001 = 4004, 3rq(ell+m) = 12*5004 = 60048 > 4608
  CHECK(big.ell == 4004);
  CHECK(big.f == 60048);
}

TEST_CASE("degenerate all-zero game still calibrates") {
  // a=b=0 collapses r to the clamp value 1
  StageGame g = load_game("allzero.game");
  CalibrationParams p = calibrate_ne(g, 2, 3);
  CHECK(p.w > 0);
  CHECK(p.f >= p.fprime);
  CHECK(p.delta > Rat(0));
}
