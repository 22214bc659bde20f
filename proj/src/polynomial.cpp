#include "repgame/polynomial.hpp"

#include <sstream>

#include "repgame/errors.hpp"

namespace repgame {

Polynomial::Polynomial(std::vector<long long> coeffs_ascending)
    : coeffs_(std::move(coeffs_ascending)) {
  for (long long c : coeffs_) {
    if (c < 0) throw DomainError("polynomial coefficients must be nonnegative");
  }
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Polynomial Polynomial::parse(const std::string& text) {
  std::vector<long long> cs;
  std::string tok;
  std::istringstream in(text);
  while (std::getline(in, tok, ',')) {
    size_t pos = 0;
    long long v;
    try {
      v = std::stoll(tok, &pos);
    } catch (const std::exception&) {
      throw ParseError("bad polynomial coefficient: '" + tok + "'");
    }
    while (pos < tok.size() && isspace(static_cast<unsigned char>(tok[pos]))) pos++;
    if (pos != tok.size())
      throw ParseError("bad polynomial coefficient: '" + tok + "'");
    cs.push_back(v);
  }
  if (cs.empty()) throw ParseError("empty polynomial");
  return Polynomial(std::move(cs));
}

Int Polynomial::eval(const Int& n) const {
  Int acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * n + static_cast<long>(*it);
  }
  return acc;
}

long long Polynomial::eval_ll(long long n) const {
  Int v = eval(Int(static_cast<long>(n)));
  if (!v.fits_slong_p()) throw DomainError("polynomial value overflows");
  return v.get_si();
}

bool Polynomial::is_zero() const { return coeffs_.empty(); }

std::string Polynomial::str() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(coeffs_[i]);
  }
  return out;
}

}  // namespace repgame
