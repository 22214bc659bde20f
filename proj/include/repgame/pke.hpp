#ifndef REPGAME_PKE_HPP
#define REPGAME_PKE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "repgame/rng.hpp"

namespace repgame {

struct KeyPair {
  std::vector<uint8_t> pk;  // keylen(n) bits, broadcast over the action channel
  std::vector<uint8_t> sk;  // private; width fixed by the scheme
};

// desk-scale public-key scheme over bit vectors; NOT cryptographically strong
class Pke {
 public:
  virtual ~Pke() = default;
  virtual std::string id() const = 0;
  virtual unsigned keylen(unsigned n) const = 0;  // public-key bits
  virtual unsigned zlen(unsigned n) const = 0;    // ciphertext bits per n-bit message
  virtual KeyPair keygen(unsigned n, RandomStream& rng) const = 0;
  // msg has n bits; result has zlen(n) bits; throws DecodeError on a bad pk
  virtual std::vector<uint8_t> encrypt(unsigned n, const std::vector<uint8_t>& pk,
                                       const std::vector<uint8_t>& msg,
                                       RandomStream& rng) const = 0;
  // throws DecodeError on malformed ciphertexts
  virtual std::vector<uint8_t> decrypt(unsigned n, const std::vector<uint8_t>& sk,
                                       const std::vector<uint8_t>& ct) const = 0;
};

// ids: "elgamal107" (order-53 subgroup of Z_107^*, bitwise encryption),
// "identity" (broken: ciphertext = plaintext); unknown id -> DomainError
const Pke& pke_by_id(const std::string& id);
std::vector<std::string> pke_ids();

}  // namespace repgame

#endif
