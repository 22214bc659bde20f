#include "repgame/compiler.hpp"

#include <functional>
#include <utility>
#include <vector>

#include "repgame/errors.hpp"
#include "repgame/lp.hpp"
#include "repgame/pke.hpp"
#include "repgame/prf.hpp"

namespace repgame {

namespace {

void check_shape(const StageGame& g) {
  if (g.players() < 3)
    throw DomainError("unsupported: the mechanism needs at least 3 players");
  for (int i = 0; i < g.players(); ++i)
    if (g.actions(i) < 2)
      throw DomainError("unsupported: every player needs at least 2 actions");
  // n is the seed width in bits and must fit the PRF/seed machinery
  if (g.size_n() > 62) throw DomainError("action sets exceed the 62-bit limit");
}

long long eval_q(const Polynomial& q, long long n) {
  long long v = q.eval_ll(n);
  if (v < 1) throw DomainError("q(n) must evaluate to at least 1");
  return v;
}

using PunishFn =
    std::function<std::pair<OpponentDistribution, Rat>(const StageGame&, int)>;

// shared tail of every compile path; `punish` runs against the raw game
StrategyBundle assemble(const StageGame& raw, long long qv, bool sp,
                        const CompileOptions& opts, const PunishFn& punish) {
  prf_by_id(opts.prf_id);  // both resolve or throw before any LP runs
  const Pke& pke = pke_by_id(opts.pke_id);

  std::vector<OpponentDistribution> tables;
  std::vector<Rat> mm;
  tables.reserve(raw.players());
  for (int j = 0; j < raw.players(); ++j) {
    auto [d, v] = punish(raw, j);
    tables.push_back(std::move(d));
    mm.push_back(std::move(v));
  }

  // shifts are constant per player, so the punishment distributions computed
  // above stay optimal for the normalized game (where mm_j = 0)
  StageGame norm = normalize_to_zero_minimax(raw, mm);
  JointDistribution sigma = correlated_equilibrium(norm);

  const unsigned n = static_cast<unsigned>(norm.size_n());
  const long long m =
      static_cast<long long>(pke.keylen(n)) +
      static_cast<long long>(norm.players() - 2) * pke.zlen(n);

  StrategyBundle b(std::move(norm));
  b.variant = sp ? Variant::SP : Variant::NE;
  b.params = sp ? calibrate_sp(b.game, qv, m) : calibrate_ne(b.game, qv, m);
  b.sq = build_sequence(b.game, sigma, b.params.w);
  b.punishment.reserve(b.game.players());
  for (int j = 0; j < b.game.players(); ++j)
    b.punishment.push_back(discretize_dyadic(tables[j].p, n));
  b.split = ChannelSplit::defaults(b.game);
  b.prf_id = opts.prf_id;
  b.pke_id = opts.pke_id;
  b.defaults.assign(b.game.players(), 0);
  b.validate();
  return b;
}

}  // namespace

StrategyBundle compile_ne(const StageGame& g, const Polynomial& q,
                          const CompileOptions& opts) {
  check_shape(g);
  return assemble(g, eval_q(q, g.size_n()), false, opts,
                  [](const StageGame& gg, int j) {
                    return punishment_strategy(gg, j);
                  });
}

StrategyBundle compile_sp(const StageGame& g, const Polynomial& q,
                          const CompileOptions& opts) {
  check_shape(g);
  return assemble(g, eval_q(q, g.size_n()), true, opts,
                  [](const StageGame& gg, int j) {
                    return punishment_strategy(gg, j);
                  });
}

std::pair<OpponentDistribution, Rat> graphical_punishment(
    const GraphicalGame& gg, const StageGame& expanded, int j) {
  if (j < 0 || j >= gg.players())
    throw DomainError("player index out of range");
  const std::vector<int>& nbrs = gg.neighbors(j);

  // neighbor sub-profiles in the local-table order: first listed neighbor is
  // most significant; the empty neighborhood has the single empty profile
  long long M = 1;
  for (int k : nbrs) M *= gg.actions(k);
  auto decode = [&](long long idx) {
    std::vector<Action> y(nbrs.size(), 0);
    for (int p = static_cast<int>(nbrs.size()) - 1; p >= 0; --p) {
      int na = gg.actions(nbrs[p]);
      y[p] = static_cast<Action>(idx % na);
      idx /= na;
    }
    return y;
  };
  auto value_row = [&](Action a, long long extra) {
    std::vector<Rat> row(M + extra, Rat(0));
    for (long long o = 0; o < M; ++o)
      row[o] = gg.local_utility(j, a, decode(o));
    return row;
  };
  auto add_simplex = [&](LinearProgram& lp, long long extra) {
    std::vector<Rat> ones(M + extra, Rat(0));
    for (long long k = 0; k < M; ++k) ones[k] = 1;
    lp.add_row(std::move(ones), Rel::EQ, Rat(1));
  };

  // mm_j = min over neighborhood distributions of max_a E[u_j]; u_j only
  // reads N(j), so this equals the full-opponent-space minimax exactly
  LinearProgram lp(static_cast<int>(M) + 2);
  lp.objective[M] = 1;
  lp.objective[M + 1] = -1;
  for (Action a = 0; a < gg.actions(j); ++a) {
    std::vector<Rat> row = value_row(a, 2);
    row[M] = -1;
    row[M + 1] = 1;
    lp.add_row(std::move(row), Rel::LE, Rat(0));
  }
  add_simplex(lp, 2);
  LPResult base = solve_lp(lp);
  if (base.status != LPStatus::Optimal)
    throw DomainError("graphical punishment LP did not reach an optimum");
  Rat mm = base.value;

  // lexicographically smallest optimal y, coordinate by coordinate
  std::vector<Rat> fixed;
  for (long long k = 0; k < M; ++k) {
    LinearProgram step(static_cast<int>(M));
    step.objective[k] = 1;
    for (Action a = 0; a < gg.actions(j); ++a)
      step.add_row(value_row(a, 0), Rel::LE, mm);
    add_simplex(step, 0);
    for (long long e = 0; e < static_cast<long long>(fixed.size()); ++e) {
      std::vector<Rat> row(M, Rat(0));
      row[e] = 1;
      step.add_row(std::move(row), Rel::EQ, fixed[e]);
    }
    LPResult r = solve_lp(step);
    if (r.status != LPStatus::Optimal)
      throw DomainError("graphical punishment refinement failed");
    fixed.push_back(r.x[k]);
  }

  // embed: neighbors vary, every other opponent holds action 0
  OpponentDistribution d;
  d.target = j;
  d.p.assign(expanded.num_opponent_profiles(j), Rat(0));
  for (long long o = 0; o < M; ++o) {
    if (fixed[o] == 0) continue;
    Profile full(expanded.players(), 0);
    std::vector<Action> y = decode(o);
    for (std::size_t p = 0; p < nbrs.size(); ++p) full[nbrs[p]] = y[p];
    d.p[expanded.opponent_index(j, full)] += fixed[o];
  }
  return {std::move(d), std::move(mm)};
}

StrategyBundle compile_graphical(const GraphicalGame& gg, const Polynomial& q,
                                 bool subgame_perfect,
                                 const CompileOptions& opts) {
  StageGame g = gg.expand();
  check_shape(g);
  return assemble(g, eval_q(q, g.size_n()), subgame_perfect, opts,
                  [&gg](const StageGame& eg, int j) {
                    return graphical_punishment(gg, eg, j);
                  });
}

}  // namespace repgame
