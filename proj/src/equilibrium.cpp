#include "repgame/equilibrium.hpp"

#include <sstream>

#include "repgame/errors.hpp"
#include "repgame/lp.hpp"

namespace repgame {

std::string JointDistribution::str(const StageGame& g) const {
  std::ostringstream out;
  for (long long idx = 0; idx < g.num_profiles(); ++idx) {
    if (p[idx] == 0) continue;
    Profile pr = g.profile_at(idx);
    for (size_t i = 0; i < pr.size(); ++i) out << (i ? " " : "") << pr[i];
    out << " : " << rat_str(p[idx]) << "\n";
  }
  return out.str();
}

JointDistribution JointDistribution::parse(const std::string& text,
                                           const StageGame& g) {
  JointDistribution d;
  d.p.assign(g.num_profiles(), Rat(0));
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  Rat total(0);
  while (std::getline(in, line)) {
    ++lineno;
    std::string body = line.substr(0, line.find('#'));
    std::istringstream ls(body);
    std::vector<std::string> toks;
    std::string t;
    while (ls >> t) toks.push_back(t);
    if (toks.empty()) continue;
    if (toks.size() != static_cast<size_t>(g.players()) + 2 ||
        toks[g.players()] != ":")
      throw ParseError("expected '<profile> : <num>/<den>'", lineno);
    Profile pr(g.players());
    for (int i = 0; i < g.players(); ++i) {
      try {
        pr[i] = std::stoi(toks[i]);
      } catch (const std::exception&) {
        throw ParseError("bad action index '" + toks[i] + "'", lineno);
      }
      if (pr[i] < 0 || pr[i] >= g.action_counts()[i])
        throw ParseError("action index out of range", lineno);
    }
    Rat prob;
    try {
      prob = parse_rat(toks.back());
    } catch (const ParseError& e) {
      throw ParseError(e.what(), lineno);
    }
    if (prob < 0) throw ParseError("negative probability", lineno);
    long long idx = g.index_of(pr);
    if (d.p[idx] != 0) throw ParseError("duplicate outcome", lineno);
    d.p[idx] = prob;
    total += prob;
  }
  if (total != 1) throw ParseError("probabilities sum to " + rat_str(total) +
                                   ", expected 1");
  return d;
}

JointDistribution correlated_equilibrium(const StageGame& g) {
  const int c = g.players();
  const long long N = g.num_profiles();
  LinearProgram lp(static_cast<int>(N));

  // maximize total utility = minimize its negation
  for (long long idx = 0; idx < N; ++idx) {
    Rat s(0);
    for (int i = 0; i < c; ++i) s += g.utility(idx, i);
    lp.objective[idx] = -s;
  }

  // incentive rows: deviating from recommended a to a' never helps player i
  for (int i = 0; i < c; ++i) {
    const int ni = g.action_counts()[i];
    for (Action a = 0; a < ni; ++a) {
      for (Action alt = 0; alt < ni; ++alt) {
        if (alt == a) continue;
        std::vector<Rat> row(N, Rat(0));
        for (long long o = 0; o < g.num_opponent_profiles(i); ++o) {
          Profile rec = g.opponent_profile(i, o, a);
          Profile dev = g.opponent_profile(i, o, alt);
          row[g.index_of(rec)] = g.utility(rec, i) - g.utility(dev, i);
        }
        lp.add_row(std::move(row), Rel::GE, Rat(0));
      }
    }
  }
  lp.add_row(std::vector<Rat>(N, Rat(1)), Rel::EQ, Rat(1));

  LPResult res = solve_lp(lp);
  if (res.status != LPStatus::Optimal)
    throw DomainError("correlated equilibrium LP did not reach an optimum");
  JointDistribution d;
  d.p = std::move(res.x);
  return d;
}

bool is_correlated_equilibrium(const StageGame& g, const JointDistribution& d) {
  if (static_cast<long long>(d.p.size()) != g.num_profiles()) return false;
  Rat total(0);
  for (const Rat& v : d.p) {
    if (v < 0) return false;
    total += v;
  }
  if (total != 1) return false;
  for (int i = 0; i < g.players(); ++i) {
    const int ni = g.action_counts()[i];
    for (Action a = 0; a < ni; ++a) {
      for (Action alt = 0; alt < ni; ++alt) {
        if (alt == a) continue;
        Rat gain(0);
        for (long long o = 0; o < g.num_opponent_profiles(i); ++o) {
          Profile rec = g.opponent_profile(i, o, a);
          Profile dev = g.opponent_profile(i, o, alt);
          gain += d.p[g.index_of(rec)] * (g.utility(dev, i) - g.utility(rec, i));
        }
        if (gain > 0) return false;
      }
    }
  }
  return true;
}

namespace {

// rows shared by every stage of the punishment solve: y is a distribution
void add_simplex_rows(LinearProgram& lp, long long M, int extra) {
  std::vector<Rat> ones(M + extra, Rat(0));
  for (long long k = 0; k < M; ++k) ones[k] = 1;
  lp.add_row(std::move(ones), Rel::EQ, Rat(1));
}

// expected utility rows of the punished player, one per own action:
// sum_o y_o u_j(a, o) - v <= 0, with free v split as v = x_M - x_{M+1}
void add_value_rows(LinearProgram& lp, const StageGame& g, int j, long long M) {
  for (Action a = 0; a < g.action_counts()[j]; ++a) {
    std::vector<Rat> row(M + 2, Rat(0));
    for (long long o = 0; o < M; ++o)
      row[o] = g.utility(g.opponent_profile(j, o, a), j);
    row[M] = -1;
    row[M + 1] = 1;
    lp.add_row(std::move(row), Rel::LE, Rat(0));
  }
}

}  // namespace

std::pair<OpponentDistribution, Rat> punishment_strategy(const StageGame& g,
                                                         int j) {
  if (j < 0 || j >= g.players()) throw DomainError("player index out of range");
  const long long M = g.num_opponent_profiles(j);

  // stage 0: mm_j = min over distributions y of max_a E_y[u_j(a, .)]
  LinearProgram lp(static_cast<int>(M) + 2);
  lp.objective[M] = 1;
  lp.objective[M + 1] = -1;
  add_value_rows(lp, g, j, M);
  add_simplex_rows(lp, M, 2);
  LPResult base = solve_lp(lp);
  if (base.status != LPStatus::Optimal)
    throw DomainError("punishment LP did not reach an optimum");
  Rat mm = base.value;

  // refinement: lexicographically smallest y achieving value mm.
  // y_k is minimized with all earlier coordinates pinned; the feasible set
  // stays a nonempty polytope at every step, so each solve is Optimal.
  std::vector<Rat> fixed;
  for (long long k = 0; k < M; ++k) {
    LinearProgram step(static_cast<int>(M));
    step.objective[k] = 1;
    for (Action a = 0; a < g.action_counts()[j]; ++a) {
      std::vector<Rat> row(M, Rat(0));
      for (long long o = 0; o < M; ++o)
        row[o] = g.utility(g.opponent_profile(j, o, a), j);
      step.add_row(std::move(row), Rel::LE, mm);
    }
    add_simplex_rows(step, M, 0);
    for (long long e = 0; e < static_cast<long long>(fixed.size()); ++e) {
      std::vector<Rat> row(M, Rat(0));
      row[e] = 1;
      step.add_row(std::move(row), Rel::EQ, fixed[e]);
    }
    LPResult r = solve_lp(step);
    if (r.status != LPStatus::Optimal)
      throw DomainError("punishment refinement LP failed");
    fixed.push_back(r.x[k]);
  }

  OpponentDistribution d;
  d.target = j;
  d.p = std::move(fixed);
  return {std::move(d), std::move(mm)};
}

std::vector<Rat> minimax_values(const StageGame& g) {
  std::vector<Rat> mm(g.players());
  for (int j = 0; j < g.players(); ++j) mm[j] = punishment_strategy(g, j).second;
  return mm;
}

std::pair<Action, Rat> best_response(const StageGame& g, int j,
                                     const OpponentDistribution& d) {
  if (d.target != j) throw DomainError("opponent distribution targets wrong player");
  if (static_cast<long long>(d.p.size()) != g.num_opponent_profiles(j))
    throw DomainError("opponent distribution size mismatch");
  Action best = 0;
  Rat best_v;
  for (Action a = 0; a < g.action_counts()[j]; ++a) {
    Rat v(0);
    for (long long o = 0; o < static_cast<long long>(d.p.size()); ++o) {
      if (d.p[o] == 0) continue;
      v += d.p[o] * g.utility(g.opponent_profile(j, o, a), j);
    }
    if (a == 0 || v > best_v) {
      best = a;
      best_v = v;
    }
  }
  return {best, std::move(best_v)};
}

Rat expected_utility(const StageGame& g, const JointDistribution& d, int i) {
  Rat v(0);
  for (long long idx = 0; idx < g.num_profiles(); ++idx) {
    if (d.p[idx] == 0) continue;
    v += d.p[idx] * g.utility(idx, i);
  }
  return v;
}

}  // namespace repgame
