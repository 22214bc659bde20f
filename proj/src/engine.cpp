#include "repgame/engine.hpp"

#include <algorithm>
#include <sstream>

#include "repgame/errors.hpp"
#include "repgame/payoff.hpp"

namespace repgame {

namespace {

Rat tail_bound(const StageGame& g, const Rat& delta, long long horizon) {
  Rat mag = g.max_util();
  if (-g.min_util() > mag) mag = -g.min_util();
  if (mag < 0) mag = Rat(0);
  return mag * rpow(Rat(1) - delta, static_cast<unsigned long>(horizon));
}

}  // namespace

std::string Transcript::serialize(const StrategyBundle& b) const {
  std::ostringstream out;
  out << "transcript v1\n";
  out << "seed " << master_seed << "\n";
  out << "start " << start << "\n";
  out << "horizon " << rounds.size() << "\n";
  out << "delta " << rat_str(delta) << "\n";
  for (const RoundRecord& r : rounds) {
    out << "round " << r.t << " phase " << r.phase << " actions";
    for (Action a : r.actions) out << " " << a;
    out << " utils";
    long long idx = b.game.index_of(r.actions);
    for (int i = 0; i < b.game.players(); ++i)
      out << " " << rat_str(b.game.utility(idx, i));
    out << "\n";
  }
  for (const RoundRecord& r : rounds)
    if (r.flagged) out << "flag " << r.t << " coerced\n";
  for (size_t i = 0; i < payoff.size(); ++i)
    out << "payoff " << i + 1 << " " << rat_str(payoff[i]) << "\n";
  out << "truncation_bound " << rat_str(truncation_bound) << "\n";
  out << "end\n";
  return out.str();
}

Transcript Transcript::parse(const std::string& text, const StrategyBundle& b) {
  Transcript tr;
  std::istringstream in(text);
  std::string line;
  auto next = [&](std::string& out) {
    while (std::getline(in, line)) {
      size_t h = line.find('#');
      if (h != std::string::npos) line = line.substr(0, h);
      size_t a = line.find_first_not_of(" \t\r");
      if (a == std::string::npos) continue;
      size_t e = line.find_last_not_of(" \t\r");
      out = line.substr(a, e - a + 1);
      return true;
    }
    return false;
  };
  auto fail = [](const std::string& msg) -> void {
    throw ParseError("transcript: " + msg);
  };

  if (!next(line) || line != "transcript v1") fail("missing header");
  long long declared = -1;
  const int cp = b.game.players();
  bool saw_bound = false;
  size_t payoff_seen = 0;
  tr.payoff.assign(cp, Rat(0));
  while (next(line)) {
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "end") {
      if (declared != static_cast<long long>(tr.rounds.size()))
        fail("round count does not match the declared horizon");
      if (payoff_seen != static_cast<size_t>(cp) || !saw_bound)
        fail("missing payoff or truncation_bound lines");
      return tr;
    } else if (key == "seed") {
      if (!(ls >> tr.master_seed)) fail("bad seed line");
    } else if (key == "start") {
      if (!(ls >> tr.start)) fail("bad start line");
    } else if (key == "horizon") {
      if (!(ls >> declared)) fail("bad horizon line");
    } else if (key == "delta") {
      std::string v;
      if (!(ls >> v)) fail("bad delta line");
      tr.delta = parse_rat(v);
    } else if (key == "round") {
      RoundRecord r;
      std::string kw;
      if (!(ls >> r.t >> kw) || kw != "phase") fail("bad round line");
      if (!(ls >> r.phase >> kw) || kw != "actions") fail("bad round line");
      r.actions.resize(cp);
      for (int i = 0; i < cp; ++i)
        if (!(ls >> r.actions[i])) fail("bad round line");
      if (!(ls >> kw) || kw != "utils") fail("bad round line");
      long long idx = b.game.index_of(r.actions);
      for (int i = 0; i < cp; ++i) {
        std::string v;
        if (!(ls >> v)) fail("bad round line");
        if (parse_rat(v) != b.game.utility(idx, i))
          fail("utils do not match the game");
      }
      tr.rounds.push_back(std::move(r));
    } else if (key == "flag") {
      long long t = 0;
      std::string what;
      if (!(ls >> t >> what) || what != "coerced") fail("bad flag line");
      bool found = false;
      for (RoundRecord& r : tr.rounds)
        if (r.t == t) {
          r.flagged = true;
          found = true;
        }
      if (!found) fail("flag line references an unknown round");
    } else if (key == "payoff") {
      int who = 0;
      std::string v;
      if (!(ls >> who >> v) || who < 1 || who > cp) fail("bad payoff line");
      tr.payoff[who - 1] = parse_rat(v);
      ++payoff_seen;
    } else if (key == "truncation_bound") {
      std::string v;
      if (!(ls >> v)) fail("bad truncation_bound line");
      tr.truncation_bound = parse_rat(v);
      saw_bound = true;
    } else {
      fail("unknown line: " + line);
    }
  }
  fail("missing final 'end'");
  return tr;  // unreachable
}

Transcript resume_match(const StrategyBundle& b,
                        const std::vector<Machine*>& machines,
                        const std::vector<Profile>& history,
                        const std::vector<std::string>& memories,
                        MatchConfig cfg) {
  const int cp = b.game.players();
  if (static_cast<int>(machines.size()) != cp)
    throw DomainError("engine: one machine per player required");
  if (cfg.horizon < 0) throw DomainError("engine: negative horizon");
  if (cfg.whitebox && cfg.whitebox_seed.size() != b.n_bits())
    throw DomainError("engine: whitebox seed must have n bits");
  if (!memories.empty() && static_cast<int>(memories.size()) != cp)
    throw DomainError("engine: one memory per player required");

  PhaseTracker tracker(b);
  std::vector<Profile> hist = history;
  for (const Profile& p : hist) {
    if (static_cast<int>(p.size()) != cp)
      throw DomainError("engine: malformed history profile");
    for (int i = 0; i < cp; ++i)
      if (p[i] < 0 || p[i] >= b.game.actions(i))
        throw DomainError("engine: history action out of range");
    tracker.advance(p);
  }

  for (int i = 0; i < cp; ++i)
    if (!memories.empty()) machines[i]->set_memory(memories[i]);

  RandomStream master(cfg.master_seed);
  std::vector<RandomStream> roots;
  roots.reserve(cp);
  for (int i = 0; i < cp; ++i)
    roots.push_back(
        master.derive({stream_label::kPlayer, static_cast<uint64_t>(i)}));

  std::vector<TamperEvent> tampers = cfg.tampers;
  std::stable_sort(tampers.begin(), tampers.end(),
                   [](const TamperEvent& a, const TamperEvent& b2) {
                     return a.round < b2.round;
                   });
  size_t next_tamper = 0;

  Transcript tr;
  tr.master_seed = cfg.master_seed;
  tr.start = static_cast<long long>(hist.size());
  tr.delta = b.params.delta;

  std::vector<long long> played_idx;
  played_idx.reserve(static_cast<size_t>(cfg.horizon));

  for (long long k = 0; k < cfg.horizon; ++k) {
    const long long t = tr.start + k;
    while (next_tamper < tampers.size() && tampers[next_tamper].round <= t) {
      const TamperEvent& ev = tampers[next_tamper];
      if (ev.round == t) {
        if (ev.target < 0 || ev.target >= cp)
          throw DomainError("engine: tamper target out of range");
        machines[ev.target]->set_memory(ev.payload);
      }
      ++next_tamper;
    }

    const PhaseState st = tracker.state();
    const bool hook_live =
        cfg.whitebox && st.phase != 1 && st.blocks_seen == 1;

    Profile actions(cp, 0);
    int deferred = -1;
    for (int i = 0; i < cp; ++i) {
      StepContext ctx{b, hist, st, t, i, &roots[i],
                      hook_live ? &cfg.whitebox_seed : nullptr, nullptr};
      if (machines[i]->reactive(ctx)) {
        if (deferred >= 0)
          throw DomainError("engine: two machines reactive in one round");
        deferred = i;
        continue;
      }
      actions[i] = machines[i]->step(ctx);
    }
    if (deferred >= 0) {
      StepContext ctx{b, hist, st, t, deferred, &roots[deferred],
                      hook_live ? &cfg.whitebox_seed : nullptr, &actions};
      actions[deferred] = machines[deferred]->step(ctx);
    }

    RoundRecord rec;
    rec.t = t;
    rec.phase = st.phase;
    for (int i = 0; i < cp; ++i) {
      if (actions[i] < 0 || actions[i] >= b.game.actions(i)) {
        actions[i] = 0;  // coerce to the lowest action, but leave a mark
        rec.flagged = true;
      }
    }
    rec.actions = actions;
    tr.rounds.push_back(rec);
    played_idx.push_back(b.game.index_of(actions));
    hist.push_back(std::move(actions));
    tracker.advance(hist.back());
  }

  tr.payoff = payoff_truncated(b.game, played_idx, b.params.delta);
  tr.truncation_bound = tail_bound(b.game, b.params.delta, cfg.horizon);
  tr.final_memories.reserve(cp);
  for (int i = 0; i < cp; ++i) tr.final_memories.push_back(machines[i]->memory());
  return tr;
}

Transcript run_match(const StrategyBundle& b,
                     const std::vector<Machine*>& machines, MatchConfig cfg) {
  return resume_match(b, machines, {}, {}, cfg);
}

}  // namespace repgame
