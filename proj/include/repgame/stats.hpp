#ifndef REPGAME_STATS_HPP
#define REPGAME_STATS_HPP

#include <cmath>

namespace repgame {

// Hoeffding: P(|mean - E| >= r) <= 2 exp(-2 R r^2 / range^2)
inline double hoeffding_radius(double range, double beta, long long runs) {
  return std::sqrt(range * range * std::log(2.0 / beta) / (2.0 * runs));
}

}  // namespace repgame

#endif
