#ifndef REPGAME_CLI_HPP
#define REPGAME_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace repgame {

// crypto sanity controls shared by `attack-crypto` and the acceptance suite.
// Positive controls must exhibit a break (advantage >= 0.9); negative
// controls must not (advantage <= 0.1); structural controls check
// byte-identity and report advantage 1 on success.
struct ControlReport {
  std::string id;
  double advantage = 0;
  double radius = 0;
  bool expect_break = false;
  bool pass = false;
  std::string detail;  // one line describing what was measured
};

std::vector<std::string> crypto_control_ids();
ControlReport run_crypto_control(const std::string& id, long long runs,
                                 uint64_t seed);

// memories-file grammar used by simulate's --memories / --dump-memories
std::string serialize_memories(const std::vector<std::string>& mems);
std::vector<std::string> parse_memories(const std::string& text);

// full command surface, callable in-process. args exclude the program name.
// exit codes: 0 success / verification pass, 1 verification fail, 2 usage or
// input error.
int run_cli(std::vector<std::string> args, std::ostream& out,
            std::ostream& err);
int run_cli(std::vector<std::string> args);  // binds std::cout / std::cerr

}  // namespace repgame

#endif
