#ifndef REPGAME_PRF_HPP
#define REPGAME_PRF_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace repgame {

// keyed function family: n-bit seed, n-bit input, n-bit output, n <= 62
class Prf {
 public:
  virtual ~Prf() = default;
  virtual std::string id() const = 0;
  virtual std::vector<uint8_t> eval(const std::vector<uint8_t>& seed,
                                    const std::vector<uint8_t>& x) const = 0;
};

// ids: "ref" (mixing-based reference), "const" (all-zero output),
// "counter" (x+1 mod 2^n, seed ignored); unknown id -> DomainError
const Prf& prf_by_id(const std::string& id);
std::vector<std::string> prf_ids();

}  // namespace repgame

#endif
