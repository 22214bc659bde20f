#pragma once

#include <string>
#include <vector>

#include "repgame/rational.hpp"

namespace repgame {

// Polynomial with nonnegative integer coefficients (parameter schedules q, z,
// phi and their derived quantities must evaluate to nonnegative integers).
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<long long> coeffs_ascending);

  // comma-separated coefficients by ascending degree: "0,1" is n, "0,0,1" is
  // n^2, "3" is the constant 3
  static Polynomial parse(const std::string& text);

  Int eval(const Int& n) const;
  long long eval_ll(long long n) const;  // throws DomainError on overflow

  const std::vector<long long>& coeffs() const { return coeffs_; }
  bool is_zero() const;
  std::string str() const;  // round-trips through parse

  bool operator==(const Polynomial& o) const { return coeffs_ == o.coeffs_; }

 private:
  std::vector<long long> coeffs_;  // ascending degree, no negative entries
};

}  // namespace repgame
