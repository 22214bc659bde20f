#ifndef REPGAME_LP_HPP
#define REPGAME_LP_HPP

#include <vector>

#include "repgame/rational.hpp"

namespace repgame {

// Linear program: minimize c.x subject to row_k . x (<=|==|>=) rhs_k, x >= 0.
enum class Rel { LE, EQ, GE };

struct LinearProgram {
  int num_vars = 0;
  std::vector<Rat> objective;
  std::vector<std::vector<Rat>> rows;
  std::vector<Rel> rels;
  std::vector<Rat> rhs;

  explicit LinearProgram(int n) : num_vars(n), objective(n, Rat(0)) {}
  void add_row(std::vector<Rat> row, Rel rel, Rat b);
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPResult {
  LPStatus status = LPStatus::Infeasible;
  Rat value;
  std::vector<Rat> x;
};

// Exact two-phase simplex with Bland's rule. Deterministic for a fixed input.
LPResult solve_lp(const LinearProgram& lp);

}  // namespace repgame

#endif
