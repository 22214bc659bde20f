#pragma once

#include <gmpxx.h>

#include <string>

namespace repgame {

// All payoff and probability arithmetic is exact. Floating point appears only
// in Hoeffding radii and their one-time conversion back to an exact bound.
using Rat = mpq_class;
using Int = mpz_class;

Int ipow(const Int& base, unsigned long e);
Rat rpow(const Rat& base, unsigned long e);

// ceil / floor to Int for rational bounds
Int rceil(const Rat& x);
Int rfloor(const Rat& x);

// "num/den" (den always printed, canonical form)
std::string rat_str(const Rat& x);
// accepts "a" or "a/b", optional leading '-'
Rat parse_rat(const std::string& s);

// exact Rat holding the double's binary value (for radius -> bound conversion)
Rat rat_from_double(double d);

// fraction without implicit canonicalization; used on hot evaluation paths
// where gcd per operation would dominate. Denominators are kept positive.
struct RawRat {
  Int num;
  Int den;

  RawRat() : num(0), den(1) {}
  RawRat(Int n, Int d) : num(std::move(n)), den(std::move(d)) {}
  explicit RawRat(const Rat& q) : num(q.get_num()), den(q.get_den()) {}

  Rat canonical() const;
  void add(const RawRat& o);    // *this += o
  void mul(const RawRat& o);    // *this *= o
  void scale(const Int& k);     // numerator *= k
};

}  // namespace repgame
