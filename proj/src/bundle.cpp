#include "repgame/bundle.hpp"

#include <algorithm>
#include <sstream>

#include "repgame/errors.hpp"
#include "repgame/pke.hpp"
#include "repgame/prf.hpp"

namespace repgame {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// line cursor that skips blanks and '#' comments but keeps raw text
// available so an embedded game block can be re-parsed verbatim
struct Cursor {
  std::vector<std::string> raw;
  size_t pos = 0;
  explicit Cursor(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) raw.push_back(line);
  }
  bool next(std::string& out) {
    while (pos < raw.size()) {
      std::string t = trim(raw[pos]);
      ++pos;
      size_t h = t.find('#');
      if (h != std::string::npos) t = trim(t.substr(0, h));
      if (t.empty()) continue;
      out = t;
      return true;
    }
    return false;
  }
};

[[noreturn]] void fail(const std::string& msg) {
  throw ParseError("bundle: " + msg);
}

std::string expect_kv(Cursor& c, const std::string& key) {
  std::string line;
  if (!c.next(line)) fail("unexpected end of input, wanted '" + key + "'");
  std::istringstream in(line);
  std::string k;
  in >> k;
  if (k != key) fail("expected '" + key + "', got '" + line + "'");
  std::string rest;
  std::getline(in, rest);
  rest = trim(rest);
  if (rest.empty()) fail("'" + key + "' needs a value");
  return rest;
}

long long to_ll(const std::string& s, const std::string& what) {
  try {
    size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used != s.size()) fail(what + ": trailing characters in '" + s + "'");
    return v;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    fail(what + ": not an integer: '" + s + "'");
  }
}

}  // namespace

unsigned StrategyBundle::keylen() const {
  return pke_by_id(pke_id).keylen(n_bits());
}

unsigned StrategyBundle::zlen() const { return pke_by_id(pke_id).zlen(n_bits()); }

Phase2Schedule StrategyBundle::schedule(int punished) const {
  return Phase2Schedule::build(game.players(), punished, keylen(), zlen());
}

Action StrategyBundle::punished_response(int j) const {
  const DyadicDistribution& table = punishment.at(j);
  Action best = 0;
  Rat best_v;
  for (Action a = 0; a < game.actions(j); ++a) {
    Rat v(0);
    for (long long o = 0; o < static_cast<long long>(table.numer.size()); ++o) {
      if (table.numer[o] == 0) continue;
      v += table.prob(o) * game.utility(game.opponent_profile(j, o, a), j);
    }
    if (a == 0 || v > best_v) {
      best = a;
      best_v = v;
    }
  }
  return best;
}

std::string StrategyBundle::serialize() const {
  std::ostringstream out;
  out << "bundle v1\n";
  out << "variant " << (variant == Variant::NE ? "ne" : "sp") << "\n";
  out << "q " << params.q << "\n";
  out << "w " << params.w << "\n";
  out << "fprime " << params.fprime << "\n";
  out << "f " << params.f << "\n";
  out << "m " << params.m << "\n";
  out << "ell " << params.ell << "\n";
  out << "delta " << rat_str(params.delta) << "\n";
  out << game.serialize();
  out << "sq " << sq.profiles.size() << "\n";
  for (size_t i = 0; i < sq.profiles.size(); ++i) {
    out << sq.profiles[i];
    out << (((i + 1) % 20 == 0 || i + 1 == sq.profiles.size()) ? '\n' : ' ');
  }
  for (int j = 0; j < game.players(); ++j) {
    const DyadicDistribution& t = punishment[j];
    out << "punishment " << j + 1 << " " << t.numer.size() << " " << t.n << "\n";
    for (size_t k = 0; k < t.numer.size(); ++k)
      out << t.numer[k] << (k + 1 == t.numer.size() ? '\n' : ' ');
  }
  out << "split\n";
  for (int i = 0; i < game.players(); ++i) {
    out << "zero " << i + 1 << " :";
    for (Action a : split.zero_set[i]) out << " " << a;
    out << "\n";
  }
  out << "prf " << prf_id << "\n";
  out << "pke " << pke_id << "\n";
  out << "defaults";
  for (Action a : defaults) out << " " << a;
  out << "\n";
  out << "end\n";
  return out.str();
}

StrategyBundle StrategyBundle::parse(const std::string& text) {
  Cursor c(text);
  std::string line;
  if (!c.next(line) || line != "bundle v1") fail("missing 'bundle v1' header");

  std::string var = expect_kv(c, "variant");
  if (var != "ne" && var != "sp") fail("variant must be 'ne' or 'sp'");
  CalibrationParams p;
  p.subgame_perfect = (var == "sp");
  p.q = to_ll(expect_kv(c, "q"), "q");
  p.w = to_ll(expect_kv(c, "w"), "w");
  p.fprime = to_ll(expect_kv(c, "fprime"), "fprime");
  p.f = to_ll(expect_kv(c, "f"), "f");
  p.m = to_ll(expect_kv(c, "m"), "m");
  p.ell = to_ll(expect_kv(c, "ell"), "ell");
  p.delta = parse_rat(expect_kv(c, "delta"));

  // embedded game: from the 'game' line through its matching 'end', verbatim
  std::ostringstream gtext;
  bool closed = false;
  {
    // skip decoration before the game header
    while (c.pos < c.raw.size()) {
      std::string t = trim(c.raw[c.pos]);
      size_t h = t.find('#');
      if (h != std::string::npos) t = trim(t.substr(0, h));
      if (!t.empty()) break;
      ++c.pos;
    }
    while (c.pos < c.raw.size()) {
      std::string rawline = c.raw[c.pos];
      ++c.pos;
      gtext << rawline << "\n";
      if (trim(rawline) == "end") {
        closed = true;
        break;
      }
    }
  }
  if (!closed) fail("embedded game block is not closed with 'end'");
  StrategyBundle b(parse_stage_game_text(gtext.str(), /*allow_rational=*/true));
  b.variant = p.subgame_perfect ? Variant::SP : Variant::NE;
  b.params = p;

  long long sq_len = to_ll(expect_kv(c, "sq"), "sq");
  if (sq_len <= 0) fail("sq length must be positive");
  {
    std::istringstream nums;
    b.sq.profiles.reserve(static_cast<size_t>(sq_len));
    while (static_cast<long long>(b.sq.profiles.size()) < sq_len) {
      long long v;
      if (nums >> v) {
        if (v < 0 || v >= b.game.num_profiles()) fail("sq index out of range");
        b.sq.profiles.push_back(v);
        continue;
      }
      if (!c.next(line)) fail("sq list is shorter than its declared length");
      nums.clear();
      nums.str(line);
    }
    long long extra;
    if (nums >> extra) fail("sq list is longer than its declared length");
  }
  // recompute the exact average from the stored profiles
  b.sq.average.assign(b.game.players(), Rat(0));
  for (long long idx : b.sq.profiles)
    for (int i = 0; i < b.game.players(); ++i)
      b.sq.average[i] += b.game.utility(idx, i);
  for (int i = 0; i < b.game.players(); ++i)
    b.sq.average[i] /= Rat(static_cast<long>(sq_len));

  for (int j = 0; j < b.game.players(); ++j) {
    std::string head = expect_kv(c, "punishment");
    std::istringstream in(head);
    long long who = 0, outcomes = 0, prec = 0;
    if (!(in >> who >> outcomes >> prec)) fail("malformed punishment header");
    if (who != j + 1) fail("punishment tables must appear in player order");
    if (outcomes != b.game.num_opponent_profiles(j))
      fail("punishment table has the wrong number of outcomes");
    if (prec < 1 || prec > 62) fail("punishment precision out of range");
    DyadicDistribution t;
    t.n = static_cast<unsigned>(prec);
    std::istringstream nums;
    while (static_cast<long long>(t.numer.size()) < outcomes) {
      long long v;
      if (nums >> v) {
        if (v < 0) fail("punishment numerators must be nonnegative");
        t.numer.push_back(v);
        continue;
      }
      if (!c.next(line)) fail("punishment table is shorter than declared");
      nums.clear();
      nums.str(line);
    }
    long long total = 0;
    for (long long v : t.numer) total += v;
    if (total != (1LL << t.n)) fail("punishment numerators must sum to 2^n");
    t.rebuild_cumulative();
    b.punishment.push_back(std::move(t));
  }

  if (!c.next(line) || line != "split") fail("expected 'split'");
  b.split.zero_set.assign(b.game.players(), {});
  for (int i = 0; i < b.game.players(); ++i) {
    std::string body = expect_kv(c, "zero");
    std::istringstream in(body);
    long long who = 0;
    std::string colon;
    if (!(in >> who >> colon) || colon != ":") fail("malformed zero line");
    if (who != i + 1) fail("zero lines must appear in player order");
    Action a;
    while (in >> a) b.split.zero_set[i].push_back(a);
    if (b.split.zero_set[i].empty()) fail("zero set must be nonempty");
  }

  b.prf_id = expect_kv(c, "prf");
  b.pke_id = expect_kv(c, "pke");
  {
    std::istringstream in(expect_kv(c, "defaults"));
    Action a;
    while (in >> a) b.defaults.push_back(a);
  }
  if (!c.next(line) || line != "end") fail("missing final 'end'");
  if (c.next(line)) fail("trailing content after 'end'");

  b.validate();
  return b;
}

void StrategyBundle::validate() const {
  const int cp = game.players();
  if (cp < 3) throw DomainError("bundle: at least three players required");
  for (int i = 0; i < cp; ++i)
    if (game.actions(i) < 2)
      throw DomainError("bundle: every player needs at least two actions");
  if (params.q < 1) throw DomainError("bundle: q must be at least 1");

  // crypto ids must resolve, and m must match the schedule they induce
  const Pke& pke = pke_by_id(pke_id);
  prf_by_id(prf_id);
  const unsigned n = n_bits();
  long long m_expect =
      pke.keylen(n) + static_cast<long long>(cp - 2) * pke.zlen(n);
  if (params.m != m_expect)
    throw DomainError("bundle: m does not match the key exchange schedule");

  // re-derive every calibrated quantity from the game, q, and m
  CalibrationParams fresh = params.subgame_perfect
                                ? calibrate_sp(game, params.q, params.m)
                                : calibrate_ne(game, params.q, params.m);
  if (fresh.w != params.w || fresh.fprime != params.fprime ||
      fresh.f != params.f || fresh.ell != params.ell)
    throw DomainError("bundle: calibration parameters do not re-derive");
  if (params.delta <= 0 || params.delta > fresh.delta)
    throw DomainError("bundle: delta must lie in (0, 1/f]");
  if (variant == Variant::NE && params.ell != 0)
    throw DomainError("bundle: one-shot variant has no phase-3 length");
  if (variant == Variant::SP && params.ell < 1)
    throw DomainError("bundle: subgame-perfect variant needs ell >= 1");

  if (sq.profiles.empty()) throw DomainError("bundle: empty play sequence");
  long long len = static_cast<long long>(sq.profiles.size());
  if (len > params.w || len + game.num_profiles() <= params.w)
    throw DomainError("bundle: sequence length inconsistent with w");
  for (long long idx : sq.profiles)
    if (idx < 0 || idx >= game.num_profiles())
      throw DomainError("bundle: sequence index out of range");

  if (static_cast<int>(punishment.size()) != cp)
    throw DomainError("bundle: one punishment table per player required");
  for (int j = 0; j < cp; ++j) {
    const DyadicDistribution& t = punishment[j];
    if (t.n != n)
      throw DomainError("bundle: punishment precision must equal n");
    if (static_cast<long long>(t.numer.size()) != game.num_opponent_profiles(j))
      throw DomainError("bundle: punishment table size mismatch");
    long long total = 0;
    for (long long v : t.numer) {
      if (v < 0) throw DomainError("bundle: negative punishment numerator");
      total += v;
    }
    if (total != (1LL << n))
      throw DomainError("bundle: punishment numerators must sum to 2^n");
  }

  if (static_cast<int>(split.zero_set.size()) != cp)
    throw DomainError("bundle: split must cover every player");
  for (int i = 0; i < cp; ++i) {
    const std::vector<Action>& z = split.zero_set[i];
    if (z.empty() || !std::is_sorted(z.begin(), z.end()))
      throw DomainError("bundle: zero sets must be nonempty and sorted");
    for (size_t k = 0; k + 1 < z.size(); ++k)
      if (z[k] == z[k + 1])
        throw DomainError("bundle: duplicate action in a zero set");
    if (z.front() < 0 || z.back() >= game.actions(i))
      throw DomainError("bundle: zero set action out of range");
    if (static_cast<int>(z.size()) == game.actions(i))
      throw DomainError("bundle: some action must carry bit 1");
  }

  if (static_cast<int>(defaults.size()) != cp)
    throw DomainError("bundle: one default action per player required");
  for (int i = 0; i < cp; ++i)
    if (defaults[i] < 0 || defaults[i] >= game.actions(i))
      throw DomainError("bundle: default action out of range");
}

}  // namespace repgame
