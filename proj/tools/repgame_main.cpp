#include <string>
#include <vector>

#include "repgame/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return repgame::run_cli(std::move(args));
}
