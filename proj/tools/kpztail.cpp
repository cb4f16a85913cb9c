#include <cstdlib>
#include <iostream>

#include "kpztail/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  kpztail::cli::Env env;
  for (const char* key : {"KPZTAIL_SEED", "KPZTAIL_QUAD_ORDER"})
    if (const char* v = std::getenv(key)) env[key] = v;
  return kpztail::cli::parse_and_run(args, env, std::cout, std::cerr);
}
