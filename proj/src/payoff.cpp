#include "repgame/payoff.hpp"

#include <algorithm>

#include "repgame/errors.hpp"

namespace repgame {

namespace {

void check_delta(const Rat& delta) {
  if (delta <= 0 || delta >= 1) throw DomainError("delta must be in (0,1)");
}

// utilities scaled to integers by the common denominator D
struct ScaledUtilities {
  std::vector<std::vector<Int>> u;  // [profile][player]
  Int d;
};

ScaledUtilities scale_utilities(const StageGame& g) {
  ScaledUtilities s;
  s.d = 1;
  for (long long idx = 0; idx < g.num_profiles(); ++idx)
    for (int i = 0; i < g.players(); ++i)
      mpz_lcm(s.d.get_mpz_t(), s.d.get_mpz_t(),
              g.utility(idx, i).get_den().get_mpz_t());
  s.u.assign(g.num_profiles(), std::vector<Int>(g.players()));
  for (long long idx = 0; idx < g.num_profiles(); ++idx)
    for (int i = 0; i < g.players(); ++i) {
      Rat v = g.utility(idx, i) * Rat(s.d);
      s.u[idx][i] = v.get_num();  // exact: d kills the denominator
    }
  return s;
}

// per-player B_i = sum_{t<T} u_i(t) xp^t xq^{T-1-t}, so that
// sum_t u_i(t) x^t = B_i / xq^{T-1} with x = xp/xq
std::vector<Int> horner_stream(const StageGame& g, const ScaledUtilities& su,
                               const std::vector<long long>& rounds,
                               const Int& xp, const Int& xq) {
  std::vector<Int> b(g.players(), Int(0));
  Int qpow = 1;
  for (auto it = rounds.rbegin(); it != rounds.rend(); ++it) {
    const auto& u = su.u[*it];
    for (int i = 0; i < g.players(); ++i) {
      b[i] *= xp;
      b[i] += u[i] * qpow;
    }
    qpow *= xq;
  }
  return b;
}

}  // namespace

std::vector<Rat> payoff_truncated(const StageGame& g,
                                  const std::vector<long long>& rounds,
                                  const Rat& delta) {
  check_delta(delta);
  std::vector<Rat> out(g.players(), Rat(0));
  if (rounds.empty()) return out;
  ScaledUtilities su = scale_utilities(g);
  Int xq = delta.get_den();
  Int xp = xq - delta.get_num();
  std::vector<Int> b = horner_stream(g, su, rounds, xp, xq);
  Rat denom = Rat(su.d) * Rat(ipow(xq, rounds.size() - 1));
  for (int i = 0; i < g.players(); ++i) out[i] = delta * Rat(b[i]) / denom;
  return out;
}

std::vector<Rat> payoff_eventually_periodic(const StageGame& g,
                                            const std::vector<long long>& prefix,
                                            const std::vector<long long>& cycle,
                                            const Rat& delta) {
  check_delta(delta);
  if (cycle.empty()) throw DomainError("cycle must be nonempty");
  ScaledUtilities su = scale_utilities(g);
  Int xq = delta.get_den();
  Int xp = xq - delta.get_num();
  Rat x = Rat(xp) / Rat(xq);

  std::vector<Int> bc = horner_stream(g, su, cycle, xp, xq);
  Rat cyc_denom = Rat(su.d) * Rat(ipow(xq, cycle.size() - 1));
  Rat xl = rpow(x, cycle.size());
  Rat xk = rpow(x, prefix.size());

  std::vector<Rat> out(g.players());
  std::vector<Int> bp;
  Rat pre_denom(1);
  if (!prefix.empty()) {
    bp = horner_stream(g, su, prefix, xp, xq);
    pre_denom = Rat(su.d) * Rat(ipow(xq, prefix.size() - 1));
  }
  for (int i = 0; i < g.players(); ++i) {
    Rat cyc = Rat(bc[i]) / cyc_denom / (Rat(1) - xl);
    Rat pre = prefix.empty() ? Rat(0) : Rat(bp[i]) / pre_denom;
    out[i] = delta * (pre + xk * cyc);
  }
  return out;
}

TruncationInfo truncation_horizon(const StageGame& g, const Rat& delta) {
  check_delta(delta);
  const long long n = g.size_n();
  TruncationInfo info;
  Int h = rceil(Rat(static_cast<long>(n)) / delta);
  if (!h.fits_slong_p()) throw DomainError("horizon overflows");
  info.horizon = h.get_si();
  long long m = std::max(g.a_int(), -g.b_int());
  m = std::max(m, 0LL);
  info.bound = Rat(static_cast<long>(m)) *
               rpow(Rat(2584, 7025), static_cast<unsigned long>(n));
  info.exact_tail = Rat(static_cast<long>(m)) *
                    rpow(Rat(1) - delta, static_cast<unsigned long>(info.horizon));
  return info;
}

}  // namespace repgame
