#include "repgame/rational.hpp"

#include "repgame/errors.hpp"

namespace repgame {

Int ipow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Rat rpow(const Rat& base, unsigned long e) {
  return Rat(ipow(base.get_num(), e), ipow(base.get_den(), e));
}

Int rceil(const Rat& x) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return q;
}

Int rfloor(const Rat& x) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return q;
}

std::string rat_str(const Rat& x) {
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      return Rat(Int(s));
    }
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in rational: " + s);
    Rat r(num, den);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw ParseError("malformed rational: " + s);
  }
}

Rat rat_from_double(double d) {
  Rat r;
  mpq_set_d(r.get_mpq_t(), d);
  return r;
}

Rat RawRat::canonical() const {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

void RawRat::add(const RawRat& o) {
  if (den == o.den) {
    num += o.num;
    return;
  }
  num = num * o.den + o.num * den;
  den *= o.den;
}

void RawRat::mul(const RawRat& o) {
  num *= o.num;
  den *= o.den;
}

void RawRat::scale(const Int& k) { num *= k; }

}  // namespace repgame
