#include "repgame/measure.hpp"

#include <algorithm>
#include <thread>

#include "repgame/dyadic.hpp"
#include "repgame/errors.hpp"
#include "repgame/payoff.hpp"
#include "repgame/stats.hpp"

namespace repgame {

namespace {

std::vector<std::unique_ptr<Machine>> make_table(const StrategyBundle& b,
                                                 const AdversarySpec* spec,
                                                 int deviator) {
  std::vector<std::unique_ptr<Machine>> owned;
  for (int i = 0; i < b.game.players(); ++i) {
    if (spec && i == deviator)
      owned.push_back(build_adversary(*spec, b, i));
    else
      owned.push_back(make_honest_machine(i));
  }
  return owned;
}

std::vector<Machine*> raw(const std::vector<std::unique_ptr<Machine>>& v) {
  std::vector<Machine*> out;
  out.reserve(v.size());
  for (const auto& m : v) out.push_back(m.get());
  return out;
}

std::vector<long long> round_indices(const StageGame& g, const Transcript& tr) {
  std::vector<long long> idx;
  idx.reserve(tr.rounds.size());
  for (const RoundRecord& r : tr.rounds) idx.push_back(g.index_of(r.actions));
  return idx;
}

// latest round at which the spec first leaves sq, from the empty history;
// -1 when the machine never deviates on its own
long long first_deviation_round(const AdversarySpec& spec) {
  switch (spec.kind) {
    case AdversarySpec::Kind::Never:
    case AdversarySpec::Kind::Tamper:
      return -1;
    case AdversarySpec::Kind::Once:
    case AdversarySpec::Kind::Phase1:
      return spec.t;
    default:
      return 0;  // predictor, eavesdropper, key-thief attack immediately
  }
}

// splits a simulated index stream into prefix + certified cycle
std::vector<Rat> close_periodic(const StageGame& g,
                                const std::vector<long long>& idx,
                                long long prefix_len, long long cycle_len,
                                const Rat& delta) {
  std::vector<long long> prefix(idx.begin(), idx.begin() + prefix_len);
  std::vector<long long> cycle(idx.begin() + prefix_len,
                               idx.begin() + prefix_len + cycle_len);
  for (long long k = 0; k < cycle_len; ++k)
    if (idx[prefix_len + k] != idx[prefix_len + cycle_len + k])
      throw DomainError("measure: play did not settle into the cycle");
  return payoff_eventually_periodic(g, prefix, cycle, delta);
}

// exact continuation payoff of the deviator from round dev_t on. Rounds
// before dev_t are sq play for deviator and baseline alike, so they are
// replayed as history instead of simulated; only the block and one certified
// punishment cycle run through the machines.
Rat exact_continuation(const StrategyBundle& b, const AdversarySpec& spec,
                       int deviator, uint64_t run_seed, long long dev_t) {
  const long long period = 1LL << b.n_bits();
  // phase 3 is absorbing; the eavesdropper needs its evidence window too
  const long long warmup =
      spec.kind == AdversarySpec::Kind::Eavesdrop ? period : 0;
  const long long sim_prefix = 1 + b.params.m + warmup;

  std::vector<Profile> h0;
  h0.reserve(dev_t);
  const auto& sqp = b.sq.profiles;
  const long long L = static_cast<long long>(sqp.size());
  for (long long s = 0; s < dev_t; ++s)
    h0.push_back(b.game.profile_at(sqp[s % L]));

  MatchConfig cfg;
  cfg.horizon = sim_prefix + 2 * period;
  cfg.master_seed = run_seed;
  cfg.tampers = spec.tamper_events();
  auto owned = make_table(b, &spec, deviator);
  Transcript tr = resume_match(b, raw(owned), h0, {}, cfg);
  return close_periodic(b.game, round_indices(b.game, tr), sim_prefix, period,
                        b.params.delta)[deviator];
}

// full payoff of a passive deviator's match, simulated from the start; the
// cycle certification doubles as a check that play reproduces sq
Rat exact_passive_payoff(const StrategyBundle& b, const AdversarySpec& spec,
                         int deviator, uint64_t run_seed) {
  const long long cycle_len = static_cast<long long>(b.sq.profiles.size());
  MatchConfig cfg;
  cfg.horizon = 2 * cycle_len;
  cfg.master_seed = run_seed;
  cfg.tampers = spec.tamper_events();
  auto owned = make_table(b, &spec, deviator);
  Transcript tr = run_match(b, raw(owned), cfg);
  return close_periodic(b.game, round_indices(b.game, tr), 0, cycle_len,
                        b.params.delta)[deviator];
}

}  // namespace

GainReport measure_gain(const StrategyBundle& b, const AdversarySpec& spec,
                        int deviator, long long runs, double beta,
                        uint64_t seed, const std::vector<Profile>* history,
                        const std::vector<std::string>* memories,
                        long long horizon) {
  if (runs < 1) throw DomainError("measure: at least one run required");
  if (beta <= 0 || beta >= 1) throw DomainError("measure: beta in (0,1)");
  if (deviator < 0 || deviator >= b.game.players())
    throw DomainError("measure: deviator out of range");

  const std::vector<Profile> empty_h;
  const std::vector<std::string> empty_m;
  const std::vector<Profile>& h = history ? *history : empty_h;
  const std::vector<std::string>& mems = memories ? *memories : empty_m;
  const bool exact = (b.variant == Variant::NE) && h.empty();

  GainReport rep;
  rep.spec = spec.str();
  rep.deviator = deviator;

  // a never deviator is the honest machine, and a tamper injection from the
  // empty history is healed before it can change an action, so those paired
  // runs coincide with the baseline whatever the seed: one run is exact
  const bool deterministic =
      spec.kind == AdversarySpec::Kind::Never ||
      (spec.kind == AdversarySpec::Kind::Tamper && h.empty());
  long long runs_eff = deterministic ? 1 : runs;
  rep.runs = runs_eff;

  RandomStream master(seed);
  Rat dev_total(0), honest_total(0);

  if (exact) {
    const Rat honest_full = payoff_eventually_periodic(
        b.game, {}, b.sq.profiles, b.params.delta)[deviator];
    const long long dev_t = first_deviation_round(spec);
    rep.honest = honest_full;
    if (dev_t < 0) {
      uint64_t rk = master.derive({stream_label::kRun, 0}).key();
      rep.mean = exact_passive_payoff(b, spec, deviator, rk);
      rep.gain = rep.mean - rep.honest;
    } else {
      // the shared sq prefix cancels in the gain; combine the one heavy
      // (1-delta)^dev_t factor after averaging the cheap continuations
      const long long L = static_cast<long long>(b.sq.profiles.size());
      std::vector<long long> rot(b.sq.profiles.size());
      for (long long i = 0; i < L; ++i)
        rot[i] = b.sq.profiles[(dev_t + i) % L];
      Rat honest_cont =
          payoff_eventually_periodic(b.game, {}, rot, b.params.delta)[deviator];
      Rat cont_total(0);
      for (long long r = 0; r < runs_eff; ++r) {
        uint64_t rk =
            master.derive({stream_label::kRun, static_cast<uint64_t>(r)}).key();
        cont_total += exact_continuation(b, spec, deviator, rk, dev_t);
      }
      Rat mean_cont = cont_total / Rat(static_cast<long>(runs_eff));
      Rat pow_dt = rpow(Rat(1) - b.params.delta,
                        static_cast<unsigned long>(dev_t));
      rep.gain = pow_dt * (mean_cont - honest_cont);
      rep.mean = rep.honest + rep.gain;
    }
    rep.tail = Rat(0);
    double range = Rat(b.game.max_util() - b.game.min_util()).get_d();
    rep.radius =
        deterministic ? 0.0 : hoeffding_radius(range, beta, runs_eff);
    rep.bound =
        Rat(1, static_cast<long>(b.params.q)) + rat_from_double(rep.radius);
    rep.pass = (rep.gain + rep.tail <= rep.bound);
    return rep;
  }
  {
    long long T = horizon;
    if (T <= 0) {
      Int h64 = rceil(Rat(static_cast<long>(b.game.size_n())) / b.params.delta);
      if (!h64.fits_slong_p())
        throw DomainError("measure: default horizon overflows");
      T = h64.get_si();
    }
    const bool whitebox = spec.kind == AdversarySpec::Kind::KeyThief;
    for (long long r = 0; r < runs_eff; ++r) {
      uint64_t rk =
          master.derive({stream_label::kRun, static_cast<uint64_t>(r)}).key();
      MatchConfig dev_cfg;
      dev_cfg.horizon = T;
      dev_cfg.master_seed = rk;
      dev_cfg.tampers = spec.tamper_events();
      if (whitebox) {
        dev_cfg.whitebox = true;
        dev_cfg.whitebox_seed = value_to_bits(1, b.n_bits());
      }
      auto dev_owned = make_table(b, &spec, deviator);
      dev_total +=
          resume_match(b, raw(dev_owned), h, mems, dev_cfg).payoff[deviator];

      MatchConfig hon_cfg;
      hon_cfg.horizon = T;
      hon_cfg.master_seed = rk;
      auto hon_owned = make_table(b, nullptr, deviator);
      honest_total +=
          resume_match(b, raw(hon_owned), h, mems, hon_cfg).payoff[deviator];
    }
    // both truncated payoffs may miss up to the same tail; charge it twice
    Rat mag = b.game.max_util();
    if (-b.game.min_util() > mag) mag = -b.game.min_util();
    if (mag < 0) mag = Rat(0);
    rep.tail = Rat(2) * mag *
               rpow(Rat(1) - b.params.delta, static_cast<unsigned long>(T));
  }

  Rat n_runs(static_cast<long>(runs_eff));
  rep.mean = dev_total / n_runs;
  rep.honest = honest_total / n_runs;
  rep.gain = rep.mean - rep.honest;
  double range = Rat(b.game.max_util() - b.game.min_util()).get_d();
  rep.radius = deterministic ? 0.0 : hoeffding_radius(range, beta, runs_eff);
  rep.bound = Rat(1, static_cast<long>(b.params.q)) + rat_from_double(rep.radius);
  rep.pass = (rep.gain + rep.tail <= rep.bound);
  return rep;
}

VerifyResult verify_bundle(const StrategyBundle& b, long long runs,
                           double beta, uint64_t seed, int workers) {
  std::vector<AdversarySpec> specs;
  specs.push_back(AdversarySpec::parse("never"));
  const long long w = b.params.w;
  std::vector<long long> ts = {0, 1, w / 4, w / 2, w + 1};
  for (long long t : ts) {
    AdversarySpec s;
    s.kind = AdversarySpec::Kind::Once;
    s.t = t;
    specs.push_back(s);
  }
  specs.push_back(AdversarySpec::parse("phase1:0"));
  // outside daemon scribbling over player 2's memory early in the match
  specs.push_back(AdversarySpec::parse("tamper:2:3:00"));
  specs.push_back(AdversarySpec::parse("predictor:" + b.prf_id));
  specs.push_back(AdversarySpec::parse("eavesdrop"));
  if (b.variant == Variant::SP)
    specs.push_back(AdversarySpec::parse("keythief"));

  VerifyResult res;
  res.rows.resize(specs.size());
  // each row is a pure function of (bundle, spec, runs, beta, seed), so the
  // worker split cannot change any number in the table
  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t k = begin; k < specs.size(); k += stride)
      res.rows[k] = measure_gain(b, specs[k], 0, runs, beta, seed);
  };
  if (workers <= 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    std::size_t nw = std::min<std::size_t>(workers, specs.size());
    for (std::size_t w2 = 0; w2 < nw; ++w2)
      pool.emplace_back(work, w2, nw);
    for (auto& th : pool) th.join();
  }
  res.pass = true;
  for (const GainReport& r : res.rows) res.pass = res.pass && r.pass;
  std::sort(res.rows.begin(), res.rows.end(),
            [](const GainReport& a, const GainReport& c) {
              return a.spec < c.spec;
            });
  return res;
}

}  // namespace repgame
