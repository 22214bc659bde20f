// Python bindings for the compiler and simulator. Everything crosses the
// boundary as text in the same formats the CLI reads and writes, so scripts
// and shell pipelines can interoperate on the exact same artifacts.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "repgame/bundle.hpp"
#include "repgame/compiler.hpp"
#include "repgame/engine.hpp"
#include "repgame/equilibrium.hpp"
#include "repgame/game.hpp"
#include "repgame/machines.hpp"
#include "repgame/measure.hpp"
#include "repgame/payoff.hpp"
#include "repgame/polynomial.hpp"

namespace py = pybind11;
using namespace repgame;

namespace {

std::string compile_text(const std::string& game_text, const std::string& q_poly,
                         bool subgame_perfect, const std::string& prf,
                         const std::string& pke) {
  StageGame g = StageGame::parse(game_text);
  Polynomial q = Polynomial::parse(q_poly);
  CompileOptions opts;
  opts.prf_id = prf;
  opts.pke_id = pke;
  StrategyBundle b =
      subgame_perfect ? compile_sp(g, q, opts) : compile_ne(g, q, opts);
  return b.serialize();
}

std::string simulate_text(const std::string& bundle_text, long long horizon,
                          uint64_t seed, const std::string& deviator,
                          int deviator_player) {
  StrategyBundle b = StrategyBundle::parse(bundle_text);
  const int c = b.game.players();
  std::vector<std::unique_ptr<Machine>> owned;
  std::vector<Machine*> raw;
  for (int i = 0; i < c; ++i) {
    if (!deviator.empty() && i == deviator_player - 1)
      owned.push_back(build_adversary(AdversarySpec::parse(deviator), b, i));
    else
      owned.push_back(make_honest_machine(i));
    raw.push_back(owned.back().get());
  }
  MatchConfig cfg;
  cfg.horizon = horizon;
  cfg.master_seed = seed;
  return run_match(b, raw, cfg).serialize(b);
}

py::dict analyze_dict(const std::string& game_text) {
  StageGame g = StageGame::parse(game_text);
  py::dict out;
  out["name"] = g.name();
  out["players"] = g.players();
  py::list mm, ce_value;
  JointDistribution sigma = correlated_equilibrium(g);
  std::vector<Rat> values = minimax_values(g);
  for (int i = 0; i < g.players(); ++i) {
    mm.append(values[i].get_d());
    ce_value.append(expected_utility(g, sigma, i).get_d());
  }
  out["minimax"] = mm;
  out["ce_value"] = ce_value;
  out["ce"] = sigma.str(g);
  return out;
}

py::list verify_list(const std::string& bundle_text, long long runs,
                     double beta, uint64_t seed) {
  StrategyBundle b = StrategyBundle::parse(bundle_text);
  VerifyResult res = verify_bundle(b, runs, beta, seed);
  py::list rows;
  for (const auto& r : res.rows) {
    py::dict row;
    row["spec"] = r.spec;
    row["gain"] = r.gain.get_d();
    row["radius"] = r.radius;
    row["bound"] = r.bound.get_d();
    row["pass"] = r.pass;
    rows.append(row);
  }
  return rows;
}

py::list transcript_payoff(const std::string& transcript_text,
                           const std::string& bundle_text) {
  StrategyBundle b = StrategyBundle::parse(bundle_text);
  Transcript tr = Transcript::parse(transcript_text, b);
  py::list out;
  for (const auto& p : tr.payoff) out.append(p.get_d());
  return out;
}

}  // namespace

PYBIND11_MODULE(repgame, m) {
  m.doc() = "compiler and simulator for repeated-game strategy machines";

  m.def("analyze", &analyze_dict, py::arg("game_text"),
        "correlated equilibrium and minimax summary of a stage game");
  m.def("compile", &compile_text, py::arg("game_text"), py::arg("q_poly"),
        py::arg("subgame_perfect") = false, py::arg("prf") = "ref",
        py::arg("pke") = "elgamal107",
        "compile a stage game into a serialized strategy bundle");
  m.def("simulate", &simulate_text, py::arg("bundle_text"), py::arg("horizon"),
        py::arg("seed") = 0, py::arg("deviator") = std::string(),
        py::arg("deviator_player") = 1,
        "run a match and return the serialized transcript");
  m.def("verify", &verify_list, py::arg("bundle_text"),
        py::arg("runs") = 10000, py::arg("beta") = 0.01, py::arg("seed") = 0,
        "adversary battery; one dict per row");
  m.def("payoff", &transcript_payoff, py::arg("transcript_text"),
        py::arg("bundle_text"),
        "discounted payoffs recorded in a serialized transcript");
}
