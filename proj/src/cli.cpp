#include "repgame/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "repgame/adversary.hpp"
#include "repgame/compiler.hpp"
#include "repgame/dyadic.hpp"
#include "repgame/engine.hpp"
#include "repgame/errors.hpp"
#include "repgame/hybrid.hpp"
#include "repgame/measure.hpp"

namespace repgame {

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot write " + path);
  out << text;
}

std::string fmt_d(double v) {
  std::ostringstream ss;
  ss << std::setprecision(9) << v;
  return ss.str();
}

// actions of everyone except j, in increasing player order
std::string opponent_actions_str(const StageGame& g, int j, long long opp) {
  Profile full = g.opponent_profile(j, opp, 0);
  std::string s;
  for (int i = 0; i < g.players(); ++i) {
    if (i == j) continue;
    if (!s.empty()) s += ' ';
    s += std::to_string(full[i]);
  }
  return s;
}

void print_analysis(std::ostream& out, const StageGame& g,
                    const std::vector<OpponentDistribution>& pun,
                    const std::vector<Rat>& mm) {
  out << "game " << g.name() << "\n";
  out << "players " << g.players() << "\n";
  out << "actions";
  for (int i = 0; i < g.players(); ++i) out << ' ' << g.actions(i);
  out << "\n";
  for (int j = 0; j < g.players(); ++j)
    out << "minimax " << (j + 1) << ' ' << rat_str(mm[j]) << "\n";
  for (int j = 0; j < g.players(); ++j)
    for (long long o = 0; o < static_cast<long long>(pun[j].p.size()); ++o)
      if (pun[j].p[o] != 0)
        out << "punishment " << (j + 1) << " : "
            << opponent_actions_str(g, j, o) << " : " << rat_str(pun[j].p[o])
            << "\n";
  JointDistribution ce = correlated_equilibrium(g);
  for (long long idx = 0; idx < g.num_profiles(); ++idx) {
    if (ce.p[idx] == 0) continue;
    Profile p = g.profile_at(idx);
    out << "ce";
    for (Action a : p) out << ' ' << a;
    out << " : " << rat_str(ce.p[idx]) << "\n";
  }
  for (int i = 0; i < g.players(); ++i)
    out << "ce-value " << (i + 1) << ' ' << rat_str(expected_utility(g, ce, i))
        << "\n";
}

int cmd_analyze(std::ostream& out, const std::string& path, bool graphical) {
  std::string text = slurp(path);
  std::vector<OpponentDistribution> pun;
  std::vector<Rat> mm;
  if (graphical) {
    GraphicalGame gg = GraphicalGame::parse(text);
    StageGame g = gg.expand();
    for (int j = 0; j < g.players(); ++j) {
      auto [d, v] = graphical_punishment(gg, g, j);
      pun.push_back(std::move(d));
      mm.push_back(std::move(v));
    }
    for (int j = 0; j < gg.players(); ++j) {
      out << "neighbors " << (j + 1) << " :";
      for (int k : gg.neighbors(j)) out << ' ' << (k + 1);
      out << "\n";
    }
    print_analysis(out, g, pun, mm);
  } else {
    StageGame g = StageGame::parse(text);
    for (int j = 0; j < g.players(); ++j) {
      auto [d, v] = punishment_strategy(g, j);
      pun.push_back(std::move(d));
      mm.push_back(std::move(v));
    }
    print_analysis(out, g, pun, mm);
  }
  return 0;
}

int cmd_compile(std::ostream& out, const std::string& path,
                const std::string& qtext, const std::string& outpath, bool sp,
                bool graphical, const CompileOptions& opts) {
  Polynomial q = Polynomial::parse(qtext);
  std::string text = slurp(path);
  StrategyBundle b = graphical
                         ? compile_graphical(GraphicalGame::parse(text), q, sp,
                                             opts)
                         : (sp ? compile_sp(StageGame::parse(text), q, opts)
                               : compile_ne(StageGame::parse(text), q, opts));
  spill(outpath, b.serialize());
  out << "bundle " << outpath << "\n";
  out << "variant " << (b.variant == Variant::SP ? "sp" : "ne") << "\n";
  out << "n " << b.n_bits() << " q " << b.params.q << " w " << b.params.w
      << " fprime " << b.params.fprime << " f " << b.params.f << " m "
      << b.params.m << " ell " << b.params.ell << "\n";
  out << "delta " << rat_str(b.params.delta) << "\n";
  out << "sequence-length " << b.sq.profiles.size() << "\n";
  return 0;
}

int cmd_simulate(std::ostream& out, const std::string& bundle_path,
                 long long horizon, uint64_t seed, const std::string& dev_text,
                 int dev_player_1b, bool whitebox_set, long long whitebox_val,
                 const std::string& resume_path, const std::string& mems_path,
                 const std::string& out_path, const std::string& dump_path) {
  StrategyBundle b = StrategyBundle::parse(slurp(bundle_path));
  const int c = b.game.players();
  if (dev_player_1b < 1 || dev_player_1b > c)
    throw DomainError("--deviator-player out of range");
  const int dev = dev_player_1b - 1;

  std::unique_ptr<AdversarySpec> spec;
  if (!dev_text.empty())
    spec = std::make_unique<AdversarySpec>(AdversarySpec::parse(dev_text));

  std::vector<std::unique_ptr<Machine>> owned;
  for (int i = 0; i < c; ++i) {
    if (spec && i == dev)
      owned.push_back(build_adversary(*spec, b, i));
    else
      owned.push_back(make_honest_machine(i));
  }
  std::vector<Machine*> table;
  for (auto& mach : owned) table.push_back(mach.get());

  MatchConfig cfg;
  cfg.horizon = horizon;
  cfg.master_seed = seed;
  // the key thief needs the hook; default the planted seed to 1 if unset
  if (whitebox_set ||
      (spec && spec->kind == AdversarySpec::Kind::KeyThief)) {
    cfg.whitebox = true;
    unsigned n = b.n_bits();
    long long mask = (1LL << n) - 1;
    cfg.whitebox_seed =
        value_to_bits((whitebox_set ? whitebox_val : 1) & mask, n);
  }
  if (spec) cfg.tampers = spec->tamper_events();

  std::vector<Profile> history;
  if (!resume_path.empty()) {
    Transcript prev = Transcript::parse(slurp(resume_path), b);
    for (const RoundRecord& r : prev.rounds) history.push_back(r.actions);
  }
  std::vector<std::string> mems;
  if (!mems_path.empty()) mems = parse_memories(slurp(mems_path));

  Transcript tr = resume_match(b, table, history, mems, cfg);
  std::string text = tr.serialize(b);
  if (out_path.empty())
    out << text;
  else
    spill(out_path, text);
  if (!dump_path.empty()) spill(dump_path, serialize_memories(tr.final_memories));
  return 0;
}

int cmd_verify(std::ostream& out, const std::string& bundle_path,
               long long runs, double beta, uint64_t seed, int workers) {
  StrategyBundle b = StrategyBundle::parse(slurp(bundle_path));
  VerifyResult res = verify_bundle(b, runs, beta, seed, workers);
  out << "verify " << b.game.name() << " variant "
      << (b.variant == Variant::SP ? "sp" : "ne") << " q " << b.params.q
      << " runs " << runs << " beta " << fmt_d(beta) << "\n";
  for (const GainReport& r : res.rows)
    out << r.spec << " gain " << rat_str(r.gain) << " radius "
        << fmt_d(r.radius) << " bound " << rat_str(r.bound) << ' '
        << (r.pass ? "PASS" : "FAIL") << "\n";
  out << "verdict " << (res.pass ? "PASS" : "FAIL") << "\n";
  return res.pass ? 0 : 1;
}

int cmd_attack_crypto(std::ostream& out, const std::string& control,
                      long long runs, uint64_t seed) {
  ControlReport rep = run_crypto_control(control, runs, seed);
  out << "control " << rep.id << " advantage " << fmt_d(rep.advantage)
      << " radius " << fmt_d(rep.radius) << " expect "
      << (rep.expect_break ? "break" : "resist") << ' '
      << (rep.pass ? "PASS" : "FAIL") << "\n";
  out << "detail " << rep.detail << "\n";
  return rep.pass ? 0 : 1;
}

// ---- crypto controls ----

// the counter family is broken by two fixed queries: F(0)=1 and F(1)=2
int counter_pattern(unsigned n, int, OracleBank& bank, RandomStream&) {
  long long y0 = bits_to_value(bank.query(1, value_to_bits(0, n)));
  long long y1 = bits_to_value(bank.query(1, value_to_bits(1, n)));
  long long mod = 1LL << n;
  return (y0 == 1 % mod && y1 == 2 % mod) ? 1 : 0;
}

bool setups_equal(const PkeHybridSetup& x, const PkeHybridSetup& y) {
  if (x.keys.size() != y.keys.size() || x.matrix.size() != y.matrix.size())
    return false;
  for (std::size_t k = 0; k < x.keys.size(); ++k)
    if (x.keys[k].pk != y.keys[k].pk || x.keys[k].sk != y.keys[k].sk)
      return false;
  for (std::size_t i = 0; i < x.matrix.size(); ++i) {
    if (x.matrix[i].size() != y.matrix[i].size()) return false;
    for (std::size_t k = 0; k < x.matrix[i].size(); ++k)
      if (x.matrix[i][k] != y.matrix[i][k]) return false;
  }
  return true;
}

// both hybrid chains, evaluated at their ends, must reproduce independent
// straight-line implementations of the pure experiments
bool endpoints_identical(const RandomStream& base) {
  const unsigned n = 4;
  const int f = 3, g = 2, q = 3;
  const Prf& prf = prf_by_id("ref");
  for (uint64_t trial = 0; trial < 5; ++trial) {
    RandomStream tr = base.derive({stream_label::kTrial, trial});
    std::vector<BitString> m0, m1;
    RandomStream ms = tr.derive({stream_label::kAdversary});
    for (int k = 0; k < f; ++k) {
      m0.push_back(ms.bit_vector(n));
      m1.push_back(ms.bit_vector(n));
    }
    for (const char* sid : {"elgamal107", "identity"}) {
      const Pke& scheme = pke_by_id(sid);
      if (!setups_equal(
              make_pke_hybrid_setup(scheme, n, f, g, 1, 1, m0, m1, tr),
              make_pke_pure_setup(scheme, n, f, g, 1, m0, m1, tr)))
        return false;
      if (!setups_equal(
              make_pke_hybrid_setup(scheme, n, f, g, g + 1, f, m0, m1, tr),
              make_pke_pure_setup(scheme, n, f, g, 0, m0, m1, tr)))
        return false;
    }
    // oracle-bank ends vs direct PRF / direct lazily-sampled random function
    OracleBank all_prf(prf, n, q, 1, tr);
    for (int k = 1; k <= q; ++k) {
      RandomStream s = tr.derive({stream_label::kOracle,
                                  static_cast<uint64_t>(k)});
      std::vector<uint8_t> seed = s.bit_vector(n);
      for (long long x = 0; x < 8; ++x)
        if (all_prf.query(k, value_to_bits(x, n)) !=
            prf.eval(seed, value_to_bits(x, n)))
          return false;
    }
    OracleBank all_rand(prf, n, q, q + 1, tr);
    for (int k = 1; k <= q; ++k) {
      RandomStream s = tr.derive({stream_label::kOracle,
                                  static_cast<uint64_t>(k)});
      std::map<long long, long long> memo;
      for (long long x : {0, 1, 0, 2, 1, 3}) {
        long long got = bits_to_value(all_rand.query(k, value_to_bits(x, n)));
        auto it = memo.find(x);
        long long expect;
        if (it == memo.end()) {
          expect = static_cast<long long>(s.bits(n));
          memo.emplace(x, expect);
        } else {
          expect = it->second;
        }
        if (got != expect) return false;
      }
    }
  }
  return true;
}

int env_workers() {
  const char* v = std::getenv("REPGAME_WORKERS");
  if (!v) return 1;
  int w = std::atoi(v);
  return w < 1 ? 1 : w;
}

}  // namespace

std::vector<std::string> crypto_control_ids() {
  return {"counter-prf", "ref-prf", "identity-read", "elgamal-read",
          "endpoints"};
}

ControlReport run_crypto_control(const std::string& id, long long runs,
                                 uint64_t seed) {
  if (runs < 100) throw DomainError("controls need at least 100 runs");
  RandomStream base(seed);
  const unsigned n = 8;
  ControlReport rep;
  rep.id = id;
  if (id == "counter-prf" || id == "ref-prf") {
    rep.expect_break = (id == "counter-prf");
    const Prf& prf = prf_by_id(rep.expect_break ? "counter" : "ref");
    AdvantageEstimate e =
        prf_multi_instance_game(prf, n, 3, counter_pattern, runs, 0.01, base);
    rep.advantage = e.advantage;
    rep.radius = e.radius;
    rep.detail = "two fixed queries on oracle 1 test for F(0)=1, F(1)=2";
  } else if (id == "identity-read" || id == "elgamal-read") {
    rep.expect_break = (id == "identity-read");
    const Pke& scheme = pke_by_id(rep.expect_break ? "identity" : "elgamal107");
    PkeAdversary adv;
    adv.choose = [](unsigned nn, int fm, int, RandomStream&) {
      std::vector<BitString> z(fm, BitString(nn, 0));
      std::vector<BitString> o(fm, BitString(nn, 1));
      return std::make_pair(z, o);
    };
    adv.guess = [](unsigned nn, const std::vector<KeyPair>&,
                   const CiphertextMatrix& ct, RandomStream&) {
      const BitString& c = ct[0][0];
      for (unsigned k = 0; k < nn; ++k)
        if (k >= c.size() || c[k] != 1) return 0;
      return 1;
    };
    AdvantageEstimate e =
        pke_multi_hybrid_game(scheme, n, 2, 2, adv, runs, 0.01, base);
    rep.advantage = e.advantage;
    rep.radius = e.radius;
    rep.detail = "reads the first n ciphertext bits of cell (1,1) as plaintext";
  } else if (id == "endpoints") {
    rep.expect_break = true;
    bool ok = endpoints_identical(base);
    rep.advantage = ok ? 1.0 : 0.0;
    rep.radius = 0.0;
    rep.detail = "hybrid chains reproduce pure experiments byte-for-byte";
  } else {
    std::string have;
    for (const std::string& cid : crypto_control_ids())
      have += (have.empty() ? "" : ", ") + cid;
    throw DomainError("unknown control " + id + " (available: " + have + ")");
  }
  rep.pass = rep.expect_break ? rep.advantage >= 0.9 : rep.advantage <= 0.1;
  return rep;
}

std::string serialize_memories(const std::vector<std::string>& mems) {
  std::string out = "memories v1\n";
  for (std::size_t i = 0; i < mems.size(); ++i)
    out += "memory " + std::to_string(i) + " : " + mems[i] + "\n";
  out += "end\n";
  return out;
}

std::vector<std::string> parse_memories(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> mems;
  bool header = false, closed = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line != "memories v1") throw ParseError("expected memories v1", lineno);
      header = true;
      continue;
    }
    if (line == "end") {
      closed = true;
      break;
    }
    std::istringstream ls(line);
    std::string kw;
    long long idx = -1;
    std::string colon;
    ls >> kw >> idx >> colon;
    if (kw != "memory" || colon != ":" ||
        idx != static_cast<long long>(mems.size()))
      throw ParseError("expected `memory <i> : <state>`", lineno);
    std::string rest;
    std::getline(ls, rest);
    if (!rest.empty() && rest[0] == ' ') rest.erase(0, 1);
    mems.push_back(rest);
  }
  if (!header || !closed) throw ParseError("unterminated memories block");
  return mems;
}

int run_cli(std::vector<std::string> args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"repeated-game equilibrium compiler and simulator"};
  app.name("repgame");
  app.require_subcommand(1);

  std::string game_path, bundle_path, qtext, out_path;
  std::string dev_text, resume_path, mems_path, dump_path;
  bool sp = false, graphical = false;
  CompileOptions opts;
  long long horizon = 0, runs = 0, whitebox_val = 1;
  uint64_t seed = 0;
  double beta = 0.01;
  int dev_player = 1;
  std::string control;

  CLI::App* analyze = app.add_subcommand(
      "analyze", "print minimax values, punishment strategies and the CE");
  analyze->add_option("game", game_path, "stage game file")->required();
  analyze->add_flag("--graphical", graphical, "parse as a graphical game");

  CLI::App* compile = app.add_subcommand(
      "compile", "compile a game into an equilibrium strategy bundle");
  compile->add_option("game", game_path, "stage game file")->required();
  compile->add_option("-q,--accuracy", qtext,
                      "accuracy polynomial, ascending coefficients")
      ->required();
  compile->add_option("-o,--output", out_path, "bundle output path")
      ->required();
  compile->add_flag("--subgame-perfect", sp, "compile the finite-block variant");
  compile->add_flag("--graphical", graphical, "parse as a graphical game");
  compile->add_option("--prf", opts.prf_id, "PRF family id");
  compile->add_option("--pke", opts.pke_id, "encryption scheme id");

  CLI::App* simulate =
      app.add_subcommand("simulate", "run machines and write a transcript");
  simulate->add_option("bundle", bundle_path, "strategy bundle file")
      ->required();
  simulate->add_option("--horizon", horizon, "rounds to play")->required();
  simulate->add_option("--seed", seed, "master seed");
  simulate->add_option("--deviator", dev_text, "adversary spec for one player");
  simulate->add_option("--deviator-player", dev_player,
                       "1-based player running the adversary");
  CLI::Option* wopt = simulate->add_option(
      "--whitebox", whitebox_val, "plant this dealer seed in block 1");
  simulate->add_option("--resume-history", resume_path,
                       "transcript to continue from");
  simulate->add_option("--memories", mems_path, "memories file to inject");
  simulate->add_option("-o,--output", out_path, "transcript path (default stdout)");
  simulate->add_option("--dump-memories", dump_path,
                       "write final machine memories here");

  CLI::App* verify = app.add_subcommand(
      "verify", "run the adversary battery and print the gain table");
  verify->add_option("bundle", bundle_path, "strategy bundle file")->required();
  verify->add_option("--runs", runs, "paired runs per adversary")
      ->default_val(10000);
  verify->add_option("--beta", beta, "Hoeffding failure budget");
  verify->add_option("--seed", seed, "master seed");

  CLI::App* attack = app.add_subcommand(
      "attack-crypto", "run a hybrid-harness control experiment");
  attack->add_option("--control", control, "control id")->required();
  attack->add_option("--runs", runs, "trials per acceptance estimate")
      ->default_val(2000);
  attack->add_option("--seed", seed, "master seed");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(analyze))
      return cmd_analyze(out, game_path, graphical);
    if (app.got_subcommand(compile))
      return cmd_compile(out, game_path, qtext, out_path, sp, graphical, opts);
    if (app.got_subcommand(simulate))
      return cmd_simulate(out, bundle_path, horizon, seed, dev_text,
                          dev_player, wopt->count() > 0, whitebox_val,
                          resume_path, mems_path, out_path, dump_path);
    if (app.got_subcommand(verify))
      return cmd_verify(out, bundle_path, runs, beta, seed, env_workers());
    if (app.got_subcommand(attack))
      return cmd_attack_crypto(out, control, runs, seed);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "error: no subcommand\n";
  return 2;
}

int run_cli(std::vector<std::string> args) {
  return run_cli(std::move(args), std::cout, std::cerr);
}

}  // namespace repgame
