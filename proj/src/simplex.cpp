#include "repgame/lp.hpp"

#include "repgame/errors.hpp"

namespace repgame {

void LinearProgram::add_row(std::vector<Rat> row, Rel rel, Rat b) {
  if (static_cast<int>(row.size()) != num_vars)
    throw DomainError("LP row width mismatch");
  rows.push_back(std::move(row));
  rels.push_back(rel);
  rhs.push_back(std::move(b));
}

namespace {

// Tableau kept in canonical form: basis columns are unit vectors and the
// objective row has zero entries on basic columns.
struct Tableau {
  int m = 0;                         // rows
  int n = 0;                         // columns (variables)
  std::vector<std::vector<Rat>> a;   // m x (n+1); last column is rhs
  std::vector<Rat> z;                // n+1; reduced costs, last = -objective
  std::vector<int> basis;            // basic column per row

  void pivot(int r, int c) {
    Rat piv = a[r][c];
    for (int j = 0; j <= n; ++j) a[r][j] /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rat factor = a[i][c];
      for (int j = 0; j <= n; ++j) a[i][j] -= factor * a[r][j];
    }
    if (z[c] != 0) {
      Rat factor = z[c];
      for (int j = 0; j <= n; ++j) z[j] -= factor * a[r][j];
    }
    basis[r] = c;
  }

  // Bland's rule: entering = lowest column with negative reduced cost,
  // leaving = among min-ratio rows, the one whose basic column is lowest.
  LPStatus run(const std::vector<bool>& allowed) {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < n; ++j) {
        if (allowed[j] && z[j] < 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return LPStatus::Optimal;
      int leave = -1;
      Rat best;
      for (int i = 0; i < m; ++i) {
        if (a[i][enter] <= 0) continue;
        Rat ratio = a[i][n] / a[i][enter];
        if (leave < 0 || ratio < best ||
            (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return LPStatus::Unbounded;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LPResult solve_lp(const LinearProgram& lp) {
  const int m = static_cast<int>(lp.rows.size());
  const int nv = lp.num_vars;

  // count slack/surplus columns, then artificial columns
  int n_slack = 0;
  for (Rel r : lp.rels)
    if (r != Rel::EQ) ++n_slack;

  Tableau t;
  t.m = m;
  t.n = nv + n_slack;  // artificials appended below
  std::vector<int> art_col(m, -1);

  // build rows with rhs >= 0; slack of a flipped LE becomes a surplus
  std::vector<std::vector<Rat>> rows(m, std::vector<Rat>(nv));
  std::vector<Rat> rhs(m);
  std::vector<int> slack_sign(m, 0);  // +1 slack, -1 surplus, 0 none
  for (int i = 0; i < m; ++i) {
    rows[i] = lp.rows[i];
    rhs[i] = lp.rhs[i];
    Rel rel = lp.rels[i];
    bool flip = rhs[i] < 0;
    if (flip) {
      for (auto& v : rows[i]) v = -v;
      rhs[i] = -rhs[i];
      if (rel == Rel::LE)
        rel = Rel::GE;
      else if (rel == Rel::GE)
        rel = Rel::LE;
    }
    if (rel == Rel::LE)
      slack_sign[i] = 1;
    else if (rel == Rel::GE)
      slack_sign[i] = -1;
  }

  int n_art = 0;
  for (int i = 0; i < m; ++i)
    if (slack_sign[i] != 1) ++n_art;
  int total = nv + n_slack + n_art;

  t.n = total;
  t.a.assign(m, std::vector<Rat>(total + 1, Rat(0)));
  t.z.assign(total + 1, Rat(0));
  t.basis.assign(m, -1);

  int next_slack = nv;
  int next_art = nv + n_slack;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < nv; ++j) t.a[i][j] = rows[i][j];
    t.a[i][total] = rhs[i];
    if (slack_sign[i] != 0) {
      t.a[i][next_slack] = Rat(slack_sign[i]);
      if (slack_sign[i] == 1) t.basis[i] = next_slack;
      ++next_slack;
    }
    if (t.basis[i] < 0) {
      t.a[i][next_art] = 1;
      t.basis[i] = next_art;
      art_col[i] = next_art;
      ++next_art;
    }
  }

  std::vector<bool> allowed(total, true);

  // phase 1: minimize the sum of artificials
  if (n_art > 0) {
    for (int j = nv + n_slack; j < total; ++j) t.z[j] = 1;
    for (int i = 0; i < m; ++i) {
      if (art_col[i] < 0) continue;
      for (int j = 0; j <= total; ++j) t.z[j] -= t.a[i][j];
    }
    LPStatus st = t.run(allowed);
    if (st != LPStatus::Optimal) throw DomainError("phase-1 simplex unbounded");
    if (-t.z[total] != 0) {
      LPResult res;
      res.status = LPStatus::Infeasible;
      return res;
    }
    // drive any leftover artificial out of the basis, or drop its row
    for (int i = 0; i < m; ++i) {
      if (t.basis[i] < nv + n_slack) continue;
      int piv = -1;
      for (int j = 0; j < nv + n_slack; ++j) {
        if (t.a[i][j] != 0) {
          piv = j;
          break;
        }
      }
      if (piv >= 0) {
        t.pivot(i, piv);
      } else {
        // redundant row: zero it so it never constrains a ratio test
        for (int j = 0; j <= total; ++j) t.a[i][j] = 0;
        t.a[i][t.basis[i]] = 1;
      }
    }
    for (int j = nv + n_slack; j < total; ++j) allowed[j] = false;
  }

  // phase 2: minimize the real objective
  for (int j = 0; j <= total; ++j) t.z[j] = 0;
  for (int j = 0; j < nv; ++j) t.z[j] = lp.objective[j];
  for (int i = 0; i < m; ++i) {
    int b = t.basis[i];
    if (b < nv && t.z[b] != 0) {
      Rat factor = t.z[b];
      for (int j = 0; j <= total; ++j) t.z[j] -= factor * t.a[i][j];
    }
  }
  LPStatus st = t.run(allowed);

  LPResult res;
  res.status = st;
  if (st != LPStatus::Optimal) return res;
  res.x.assign(nv, Rat(0));
  for (int i = 0; i < m; ++i)
    if (t.basis[i] < nv) res.x[t.basis[i]] = t.a[i][total];
  res.value = 0;
  for (int j = 0; j < nv; ++j) res.value += lp.objective[j] * res.x[j];
  return res;
}

}  // namespace repgame
