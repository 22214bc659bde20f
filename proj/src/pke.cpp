#include "repgame/pke.hpp"

#include "repgame/dyadic.hpp"
#include "repgame/errors.hpp"

namespace repgame {

namespace {

// Z_107^*: 53 is prime, 4 = 2^2 is a quadratic residue, so <4> has order 53
constexpr long long kP = 107;
constexpr long long kQ = 53;
constexpr long long kG = 4;
constexpr unsigned kElemBits = 7;  // values 0..106 fit in 7 bits

long long mod_pow(long long base, long long e, long long mod) {
  long long acc = 1 % mod;
  base %= mod;
  while (e > 0) {
    if (e & 1) acc = acc * base % mod;
    base = base * base % mod;
    e >>= 1;
  }
  return acc;
}

class ElGamal107 : public Pke {
 public:
  std::string id() const override { return "elgamal107"; }
  unsigned keylen(unsigned) const override { return kElemBits; }
  unsigned zlen(unsigned n) const override { return 2 * kElemBits * n; }

  KeyPair keygen(unsigned, RandomStream& rng) const override {
    long long x = 1 + static_cast<long long>(rng.below(kQ - 1));  // 1..52
    long long h = mod_pow(kG, x, kP);
    KeyPair kp;
    kp.pk = value_to_bits(h, kElemBits);
    kp.sk = value_to_bits(x, kElemBits);
    return kp;
  }

  std::vector<uint8_t> encrypt(unsigned n, const std::vector<uint8_t>& pk,
                               const std::vector<uint8_t>& msg,
                               RandomStream& rng) const override {
    if (pk.size() != kElemBits) throw DecodeError("public key has wrong width");
    if (msg.size() != n) throw DomainError("message length must be n");
    long long h = bits_to_value(pk);
    if (h < 1 || h >= kP) throw DecodeError("public key outside the group");
    std::vector<uint8_t> ct;
    ct.reserve(zlen(n));
    for (uint8_t bit : msg) {
      long long k = 1 + static_cast<long long>(rng.below(kQ - 1));
      long long c1 = mod_pow(kG, k, kP);
      long long c2 = mod_pow(h, k, kP) * ((bit & 1) ? kG : 1) % kP;
      auto b1 = value_to_bits(c1, kElemBits);
      auto b2 = value_to_bits(c2, kElemBits);
      ct.insert(ct.end(), b1.begin(), b1.end());
      ct.insert(ct.end(), b2.begin(), b2.end());
    }
    return ct;
  }

  std::vector<uint8_t> decrypt(unsigned n, const std::vector<uint8_t>& sk,
                               const std::vector<uint8_t>& ct) const override {
    if (sk.size() != kElemBits) throw DecodeError("secret key has wrong width");
    if (ct.size() != zlen(n)) throw DecodeError("ciphertext has wrong width");
    long long x = bits_to_value(sk);
    if (x < 1 || x >= kQ) throw DecodeError("secret key outside the exponent range");
    std::vector<uint8_t> msg;
    msg.reserve(n);
    for (unsigned i = 0; i < n; ++i) {
      std::vector<uint8_t> b1(ct.begin() + i * 2 * kElemBits,
                              ct.begin() + i * 2 * kElemBits + kElemBits);
      std::vector<uint8_t> b2(ct.begin() + i * 2 * kElemBits + kElemBits,
                              ct.begin() + (i + 1) * 2 * kElemBits);
      long long c1 = bits_to_value(b1);
      long long c2 = bits_to_value(b2);
      if (c1 < 1 || c1 >= kP || c2 < 1 || c2 >= kP)
        throw DecodeError("ciphertext element outside the group");
      long long m = c2 * mod_pow(c1, kP - 1 - x, kP) % kP;
      if (m == 1)
        msg.push_back(0);
      else if (m == kG)
        msg.push_back(1);
      else
        throw DecodeError("ciphertext does not decode to a bit");
    }
    return msg;
  }
};

// negative control: keylen 1, ciphertext = plaintext
class IdentityPke : public Pke {
 public:
  std::string id() const override { return "identity"; }
  unsigned keylen(unsigned) const override { return 1; }
  unsigned zlen(unsigned n) const override { return n; }

  KeyPair keygen(unsigned, RandomStream&) const override {
    KeyPair kp;
    kp.pk = {0};
    kp.sk = {0};
    return kp;
  }

  std::vector<uint8_t> encrypt(unsigned n, const std::vector<uint8_t>& pk,
                               const std::vector<uint8_t>& msg,
                               RandomStream&) const override {
    if (pk.size() != 1) throw DecodeError("public key has wrong width");
    if (msg.size() != n) throw DomainError("message length must be n");
    return msg;
  }

  std::vector<uint8_t> decrypt(unsigned n, const std::vector<uint8_t>& sk,
                               const std::vector<uint8_t>& ct) const override {
    if (sk.size() != 1) throw DecodeError("secret key has wrong width");
    if (ct.size() != n) throw DecodeError("ciphertext has wrong width");
    return ct;
  }
};

const ElGamal107 kElGamal;
const IdentityPke kIdentity;

}  // namespace

const Pke& pke_by_id(const std::string& id) {
  if (id == "elgamal107") return kElGamal;
  if (id == "identity") return kIdentity;
  throw DomainError("unknown PKE id: " + id);
}

std::vector<std::string> pke_ids() { return {"elgamal107", "identity"}; }

}  // namespace repgame
