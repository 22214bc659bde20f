#include "repgame/sequence.hpp"

#include "repgame/errors.hpp"

namespace repgame {

long long sequence_budget(long long a, long long b, long long q, int c, long long n) {
  Int w = (Int(static_cast<long>(a)) - static_cast<long>(b)) *
              static_cast<long>(q) +
          1;
  w *= ipow(Int(static_cast<long>(n)), static_cast<unsigned>(c));
  if (!w.fits_slong_p()) throw DomainError("sequence budget w overflows");
  return w.get_si();
}

PlaySequence build_sequence(const StageGame& g, const JointDistribution& sigma,
                            long long w) {
  if (static_cast<long long>(sigma.p.size()) != g.num_profiles())
    throw DomainError("distribution size mismatch");
  if (w < 1) throw DomainError("sequence budget must be positive");

  PlaySequence s;
  for (long long idx = 0; idx < g.num_profiles(); ++idx) {
    if (sigma.p[idx] == 0) continue;
    Int copies = rfloor(sigma.p[idx] * static_cast<long>(w));
    long long k = copies.get_si();
    for (long long rep = 0; rep < k; ++rep) s.profiles.push_back(idx);
  }
  if (s.profiles.empty())
    throw DomainError("sequence is empty: every floor(w*sigma) is 0");

  s.average.assign(g.players(), Rat(0));
  for (long long idx : s.profiles)
    for (int i = 0; i < g.players(); ++i) s.average[i] += g.utility(idx, i);
  Rat len(static_cast<long>(s.profiles.size()));
  for (auto& v : s.average) v /= len;
  return s;
}

namespace {

long long checked_ll(const Int& v, const char* what) {
  if (!v.fits_slong_p()) throw DomainError(std::string(what) + " overflows");
  return v.get_si();
}

CalibrationParams calibrate_common(const StageGame& g, long long q, long long m,
                                   bool sp) {
  if (q < 1) throw DomainError("accuracy parameter q must be positive");
  if (m < 1) throw DomainError("phase-2 length m must be positive");
  const long long n = g.size_n();
  const int c = g.players();
  const long long a = g.a_int();
  const long long b = g.b_int();
  // constant games have r = 0; clamping keeps every schedule positive
  const long long r = std::max(a - b, 1LL);

  CalibrationParams p;
  p.q = q;
  p.m = m;
  p.subgame_perfect = sp;
  Int nc = ipow(Int(static_cast<long>(n)), static_cast<unsigned>(c));
  if (!sp) {
    Int w = (Int(3) * static_cast<long>(r) * static_cast<long>(n) *
                 static_cast<long>(q) +
             1) *
            nc;
    p.w = checked_ll(w, "w");
    Int fp = Int(3) * static_cast<long>(r) * w * static_cast<long>(q);
    p.fprime = checked_ll(fp, "f'");
    Int arm = Int(3) * static_cast<long>(q) *
              (Int(static_cast<long>(m)) * static_cast<long>(a) + 1);
    Int f = arm > fp ? arm : fp;
    p.f = checked_ll(f, "f");
  } else {
    Int w = Int(4) *
            (Int(static_cast<long>(r)) * static_cast<long>(n) *
                 static_cast<long>(q) +
             1) *
            nc;
    p.w = checked_ll(w, "w");
    Int fp = Int(4) * static_cast<long>(r) * w * static_cast<long>(q);
    p.fprime = checked_ll(fp, "f'");
    Int ell = Int(static_cast<long>(n)) * static_cast<long>(q) *
              (Int(static_cast<long>(m)) * static_cast<long>(a) + 1);
    p.ell = checked_ll(ell, "ell");
    Int arm = Int(3) * static_cast<long>(r) * static_cast<long>(q) *
              (ell + static_cast<long>(m));
    Int f = arm > fp ? arm : fp;
    p.f = checked_ll(f, "f");
  }
  p.delta = Rat(1, static_cast<long>(p.f));
  return p;
}

}  // namespace

CalibrationParams calibrate_ne(const StageGame& g, long long q, long long m) {
  return calibrate_common(g, q, m, false);
}

CalibrationParams calibrate_sp(const StageGame& g, long long q, long long m) {
  return calibrate_common(g, q, m, true);
}

}  // namespace repgame
