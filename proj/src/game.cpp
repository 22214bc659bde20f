#include "repgame/game.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "repgame/errors.hpp"

namespace repgame {

namespace {

// splits a line into whitespace-separated tokens, stripping '#' comments
std::vector<std::string> tokenize(const std::string& line) {
  std::string body = line.substr(0, line.find('#'));
  std::istringstream in(body);
  std::vector<std::string> toks;
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

long long to_int(const std::string& tok, int line, const char* what) {
  try {
    size_t pos = 0;
    long long v = std::stoll(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError(std::string("expected integer ") + what + ", got '" + tok + "'",
                     line);
  }
}

Rat to_payoff(const std::string& tok, int line, bool allow_rational) {
  if (tok.find('/') != std::string::npos) {
    if (!allow_rational)
      throw ParseError("non-integer payoff '" + tok + "'", line);
    try {
      return parse_rat(tok);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line);
    }
  }
  return Rat(static_cast<long>(to_int(tok, line, "payoff")));
}

struct LineReader {
  std::istringstream in;
  int lineno = 0;
  explicit LineReader(const std::string& text) : in(text) {}

  // next non-empty token line; returns false at end of input
  bool next(std::vector<std::string>& toks) {
    std::string line;
    while (std::getline(in, line)) {
      ++lineno;
      toks = tokenize(line);
      if (!toks.empty()) return true;
    }
    return false;
  }
};

}  // namespace

StageGame::StageGame(std::string name, std::vector<int> actions_per_player,
                     std::vector<std::vector<Rat>> utilities)
    : name_(std::move(name)),
      n_actions_(std::move(actions_per_player)),
      util_(std::move(utilities)) {
  if (n_actions_.empty()) throw DomainError("game needs at least one player");
  num_profiles_ = 1;
  for (int n : n_actions_) {
    if (n < 1) throw DomainError("player with empty action set");
    num_profiles_ *= n;
  }
  if (static_cast<long long>(util_.size()) != num_profiles_)
    throw DomainError("utility tensor size mismatch");
  for (const auto& u : util_) {
    if (static_cast<int>(u.size()) != players())
      throw DomainError("utility vector arity mismatch");
  }
}

int StageGame::size_n() const {
  return *std::max_element(n_actions_.begin(), n_actions_.end());
}

long long StageGame::index_of(const Profile& p) const {
  if (static_cast<int>(p.size()) != players())
    throw DomainError("profile arity mismatch");
  long long idx = 0;
  for (int i = 0; i < players(); ++i) {
    if (p[i] < 0 || p[i] >= n_actions_[i])
      throw DomainError("action out of range in profile");
    idx = idx * n_actions_[i] + p[i];
  }
  return idx;
}

Profile StageGame::profile_at(long long index) const {
  Profile p(players());
  for (int i = players() - 1; i >= 0; --i) {
    p[i] = static_cast<Action>(index % n_actions_[i]);
    index /= n_actions_[i];
  }
  return p;
}

const Rat& StageGame::utility(long long profile_index, int player) const {
  return util_[profile_index][player];
}

const Rat& StageGame::utility(const Profile& p, int player) const {
  return util_[index_of(p)][player];
}

Rat StageGame::max_util() const {
  Rat best = util_[0][0];
  for (const auto& u : util_)
    for (const auto& v : u)
      if (v > best) best = v;
  return best;
}

Rat StageGame::min_util() const {
  Rat worst = util_[0][0];
  for (const auto& u : util_)
    for (const auto& v : u)
      if (v < worst) worst = v;
  return worst;
}

long long StageGame::a_int() const {
  Int v = rceil(max_util());
  return v.get_si();
}

long long StageGame::b_int() const {
  Int v = rfloor(min_util());
  return v.get_si();
}

bool StageGame::integral() const {
  for (const auto& u : util_)
    for (const auto& v : u)
      if (v.get_den() != 1) return false;
  return true;
}

bool StageGame::operator==(const StageGame& o) const {
  return name_ == o.name_ && n_actions_ == o.n_actions_ && util_ == o.util_;
}

long long StageGame::num_opponent_profiles(int j) const {
  long long n = 1;
  for (int i = 0; i < players(); ++i)
    if (i != j) n *= n_actions_[i];
  return n;
}

long long StageGame::opponent_index(int j, const Profile& full) const {
  long long idx = 0;
  for (int i = 0; i < players(); ++i) {
    if (i == j) continue;
    idx = idx * n_actions_[i] + full[i];
  }
  return idx;
}

Profile StageGame::opponent_profile(int j, long long opp_index, Action a_j) const {
  Profile p(players());
  for (int i = players() - 1; i >= 0; --i) {
    if (i == j) continue;
    p[i] = static_cast<Action>(opp_index % n_actions_[i]);
    opp_index /= n_actions_[i];
  }
  p[j] = a_j;
  return p;
}

StageGame parse_stage_game_text(const std::string& text, bool allow_rational) {
  LineReader r(text);
  std::vector<std::string> toks;

  if (!r.next(toks) || toks[0] != "game" || toks.size() != 2)
    throw ParseError("expected 'game <name>'", r.lineno);
  std::string name = toks[1];

  if (!r.next(toks) || toks[0] != "players" || toks.size() != 2)
    throw ParseError("expected 'players <c>'", r.lineno);
  int c = static_cast<int>(to_int(toks[1], r.lineno, "player count"));
  if (c < 1) throw ParseError("player count must be positive", r.lineno);

  if (!r.next(toks) || toks[0] != "actions" ||
      toks.size() != static_cast<size_t>(c) + 1)
    throw ParseError("expected 'actions <n_1> ... <n_c>'", r.lineno);
  std::vector<int> counts(c);
  long long total = 1;
  for (int i = 0; i < c; ++i) {
    counts[i] = static_cast<int>(to_int(toks[i + 1], r.lineno, "action count"));
    if (counts[i] < 1) throw ParseError("action count must be positive", r.lineno);
    total *= counts[i];
  }

  std::vector<std::vector<Rat>> util(total);
  std::vector<bool> seen(total, false);
  StageGame shape("shape", counts,
                  std::vector<std::vector<Rat>>(total, std::vector<Rat>(c, Rat(0))));

  bool ended = false;
  while (r.next(toks)) {
    if (toks[0] == "end") {
      if (toks.size() != 1) throw ParseError("junk after 'end'", r.lineno);
      ended = true;
      break;
    }
    if (toks[0] != "payoff")
      throw ParseError("expected 'payoff' or 'end', got '" + toks[0] + "'",
                       r.lineno);
    if (toks.size() != static_cast<size_t>(2 * c) + 2 || toks[c + 1] != ":")
      throw ParseError("expected 'payoff <a_1..a_c> : <u_1..u_c>'", r.lineno);
    Profile p(c);
    for (int i = 0; i < c; ++i) {
      long long a = to_int(toks[i + 1], r.lineno, "action");
      if (a < 0 || a >= counts[i])
        throw ParseError("action index out of range", r.lineno);
      p[i] = static_cast<Action>(a);
    }
    long long idx = shape.index_of(p);
    if (seen[idx]) throw ParseError("duplicate profile", r.lineno);
    seen[idx] = true;
    std::vector<Rat> u(c);
    for (int i = 0; i < c; ++i)
      u[i] = to_payoff(toks[c + 2 + i], r.lineno, allow_rational);
    util[idx] = std::move(u);
  }
  if (!ended) throw ParseError("missing 'end'", r.lineno);
  for (long long i = 0; i < total; ++i) {
    if (!seen[i]) {
      Profile p = shape.profile_at(i);
      std::string desc;
      for (int a : p) desc += " " + std::to_string(a);
      throw ParseError("missing profile:" + desc, r.lineno);
    }
  }
  return StageGame(name, counts, std::move(util));
}

StageGame StageGame::parse(const std::string& text) {
  return parse_stage_game_text(text, /*allow_rational=*/false);
}

std::string StageGame::serialize() const {
  std::ostringstream out;
  out << "game " << name_ << "\n";
  out << "players " << players() << "\n";
  out << "actions";
  for (int n : n_actions_) out << " " << n;
  out << "\n";
  for (long long idx = 0; idx < num_profiles_; ++idx) {
    Profile p = profile_at(idx);
    out << "payoff";
    for (int a : p) out << " " << a;
    out << " :";
    for (int i = 0; i < players(); ++i) {
      const Rat& v = util_[idx][i];
      if (v.get_den() == 1)
        out << " " << v.get_num().get_str();
      else
        out << " " << rat_str(v);
    }
    out << "\n";
  }
  out << "end\n";
  return out.str();
}

StageGame normalize_to_zero_minimax(const StageGame& g,
                                    const std::vector<Rat>& minimax) {
  if (static_cast<int>(minimax.size()) != g.players())
    throw DomainError("minimax vector arity mismatch");
  std::vector<std::vector<Rat>> util;
  util.reserve(g.num_profiles());
  for (long long idx = 0; idx < g.num_profiles(); ++idx) {
    std::vector<Rat> u(g.players());
    for (int i = 0; i < g.players(); ++i) u[i] = g.utility(idx, i) - minimax[i];
    util.push_back(std::move(u));
  }
  return StageGame(g.name(), g.action_counts(), std::move(util));
}

GraphicalGame::GraphicalGame(std::string name, int degree_bound,
                             std::vector<int> actions_per_player,
                             std::vector<std::vector<int>> neighbors,
                             std::vector<std::vector<Rat>> local_tables)
    : name_(std::move(name)),
      d_(degree_bound),
      n_actions_(std::move(actions_per_player)),
      nbrs_(std::move(neighbors)),
      local_(std::move(local_tables)) {
  const int m = players();
  if (static_cast<int>(nbrs_.size()) != m || static_cast<int>(local_.size()) != m)
    throw DomainError("graphical game arity mismatch");
  for (int i = 0; i < m; ++i) {
    if (static_cast<int>(nbrs_[i].size()) > d_)
      throw DomainError("player " + std::to_string(i + 1) + " exceeds degree bound");
    long long want = n_actions_[i];
    for (int k : nbrs_[i]) {
      if (k < 0 || k >= m || k == i) throw DomainError("dangling neighbor index");
      want *= n_actions_[k];
    }
    if (static_cast<long long>(local_[i].size()) != want)
      throw DomainError("local table size mismatch for player " +
                        std::to_string(i + 1));
  }
}

const Rat& GraphicalGame::local_utility(int player, Action own,
                                        const std::vector<Action>& nbr_actions) const {
  long long idx = own;
  const auto& nb = nbrs_[player];
  for (size_t k = 0; k < nb.size(); ++k) idx = idx * n_actions_[nb[k]] + nbr_actions[k];
  return local_[player][idx];
}

GraphicalGame GraphicalGame::parse(const std::string& text) {
  LineReader r(text);
  std::vector<std::string> toks;

  if (!r.next(toks) || toks[0] != "graphical" || toks.size() != 2)
    throw ParseError("expected 'graphical <name>'", r.lineno);
  std::string name = toks[1];

  if (!r.next(toks) || toks[0] != "players" || toks.size() != 2)
    throw ParseError("expected 'players <m>'", r.lineno);
  int m = static_cast<int>(to_int(toks[1], r.lineno, "player count"));
  if (m < 1) throw ParseError("player count must be positive", r.lineno);

  if (!r.next(toks) || toks[0] != "degree" || toks.size() != 2)
    throw ParseError("expected 'degree <d>'", r.lineno);
  int d = static_cast<int>(to_int(toks[1], r.lineno, "degree"));
  if (d < 0) throw ParseError("degree must be nonnegative", r.lineno);

  if (!r.next(toks) || toks[0] != "actions" ||
      toks.size() != static_cast<size_t>(m) + 1)
    throw ParseError("expected 'actions <n_1> ... <n_m>'", r.lineno);
  std::vector<int> counts(m);
  for (int i = 0; i < m; ++i) {
    counts[i] = static_cast<int>(to_int(toks[i + 1], r.lineno, "action count"));
    if (counts[i] < 1) throw ParseError("action count must be positive", r.lineno);
  }

  std::vector<std::vector<int>> nbrs(m);
  std::vector<bool> have_nbrs(m, false);
  std::vector<std::vector<Rat>> local(m);
  std::vector<std::vector<bool>> seen(m);
  bool ended = false;

  auto table_size = [&](int i) {
    long long sz = counts[i];
    for (int k : nbrs[i]) sz *= counts[k];
    return sz;
  };

  while (r.next(toks)) {
    if (toks[0] == "end") {
      ended = true;
      break;
    }
    if (toks[0] == "neighbors") {
      // neighbors <i> : <j...>  (players are 1-based in files)
      if (toks.size() < 3 || toks[2] != ":")
        throw ParseError("expected 'neighbors <i> : <j...>'", r.lineno);
      int i = static_cast<int>(to_int(toks[1], r.lineno, "player")) - 1;
      if (i < 0 || i >= m) throw ParseError("player index out of range", r.lineno);
      if (have_nbrs[i]) throw ParseError("duplicate neighbors line", r.lineno);
      have_nbrs[i] = true;
      std::set<int> uniq;
      for (size_t k = 3; k < toks.size(); ++k) {
        int j = static_cast<int>(to_int(toks[k], r.lineno, "neighbor")) - 1;
        if (j < 0 || j >= m) throw ParseError("dangling neighbor index", r.lineno);
        if (j == i) throw ParseError("player listed as own neighbor", r.lineno);
        if (!uniq.insert(j).second)
          throw ParseError("duplicate neighbor index", r.lineno);
        nbrs[i].push_back(j);
      }
      if (static_cast<int>(nbrs[i].size()) > d)
        throw ParseError("neighbor list longer than degree bound", r.lineno);
      local[i].assign(table_size(i), Rat(0));
      seen[i].assign(table_size(i), false);
    } else if (toks[0] == "local") {
      // local <i> <own> <nbr...> : <u>
      if (toks.size() < 4)
        throw ParseError("expected 'local <i> <own> <nbr...> : <u>'", r.lineno);
      int i = static_cast<int>(to_int(toks[1], r.lineno, "player")) - 1;
      if (i < 0 || i >= m) throw ParseError("player index out of range", r.lineno);
      if (!have_nbrs[i])
        throw ParseError("'local' before 'neighbors' for player", r.lineno);
      size_t want = 2 + 1 + nbrs[i].size();  // "local i own nbr... : u"
      if (toks.size() != want + 2 || toks[want] != ":")
        throw ParseError("local line arity mismatch", r.lineno);
      long long own = to_int(toks[2], r.lineno, "action");
      if (own < 0 || own >= counts[i])
        throw ParseError("own action out of range", r.lineno);
      long long idx = own;
      for (size_t k = 0; k < nbrs[i].size(); ++k) {
        long long a = to_int(toks[3 + k], r.lineno, "action");
        int nb = nbrs[i][k];
        if (a < 0 || a >= counts[nb])
          throw ParseError("neighbor action out of range", r.lineno);
        idx = idx * counts[nb] + a;
      }
      if (seen[i][idx]) throw ParseError("duplicate local entry", r.lineno);
      seen[i][idx] = true;
      local[i][idx] = to_payoff(toks[want + 1], r.lineno, /*allow_rational=*/false);
    } else {
      throw ParseError("unexpected directive '" + toks[0] + "'", r.lineno);
    }
  }
  if (!ended) throw ParseError("missing 'end'", r.lineno);
  for (int i = 0; i < m; ++i) {
    if (!have_nbrs[i])
      throw ParseError("missing neighbors line for player " + std::to_string(i + 1),
                       r.lineno);
    for (size_t k = 0; k < seen[i].size(); ++k)
      if (!seen[i][k])
        throw ParseError("local table of player " + std::to_string(i + 1) +
                             " is incomplete",
                         r.lineno);
  }
  return GraphicalGame(name, d, counts, std::move(nbrs), std::move(local));
}

std::string GraphicalGame::serialize() const {
  std::ostringstream out;
  out << "graphical " << name_ << "\n";
  out << "players " << players() << "\n";
  out << "degree " << d_ << "\n";
  out << "actions";
  for (int n : n_actions_) out << " " << n;
  out << "\n";
  for (int i = 0; i < players(); ++i) {
    out << "neighbors " << (i + 1) << " :";
    for (int j : nbrs_[i]) out << " " << (j + 1);
    out << "\n";
  }
  for (int i = 0; i < players(); ++i) {
    long long sz = static_cast<long long>(local_[i].size());
    for (long long idx = 0; idx < sz; ++idx) {
      // decode mixed radix back to (own, nbr...) for printing
      std::vector<long long> radices{n_actions_[i]};
      for (int k : nbrs_[i]) radices.push_back(n_actions_[k]);
      std::vector<long long> digits(radices.size());
      long long rest = idx;
      for (int k = static_cast<int>(radices.size()) - 1; k >= 0; --k) {
        digits[k] = rest % radices[k];
        rest /= radices[k];
      }
      out << "local " << (i + 1);
      for (long long dgt : digits) out << " " << dgt;
      out << " : " << local_[i][idx].get_num().get_str();
      if (local_[i][idx].get_den() != 1) out << "/" << local_[i][idx].get_den().get_str();
      out << "\n";
    }
  }
  out << "end\n";
  return out.str();
}

StageGame GraphicalGame::expand() const {
  const int m = players();
  long long total = 1;
  for (int n : n_actions_) {
    total *= n;
    if (total > 1000000)
      throw DomainError("graphical game too large to expand (over 10^6 profiles)");
  }
  StageGame shape("shape", n_actions_,
                  std::vector<std::vector<Rat>>(total, std::vector<Rat>(m, Rat(0))));
  std::vector<std::vector<Rat>> util(total, std::vector<Rat>(m));
  for (long long idx = 0; idx < total; ++idx) {
    Profile p = shape.profile_at(idx);
    for (int i = 0; i < m; ++i) {
      std::vector<Action> na;
      na.reserve(nbrs_[i].size());
      for (int k : nbrs_[i]) na.push_back(p[k]);
      util[idx][i] = local_utility(i, p[i], na);
    }
  }
  return StageGame(name_ + "_expanded", n_actions_, std::move(util));
}

}  // namespace repgame
