#include <iostream>

#include "ibp/cli.hpp"

int main(int argc, char** argv) {
  ibp::cli::RunManifest manifest;
  if (auto code = ibp::cli::parse_command_line(argc, argv, manifest)) return *code;
  return static_cast<int>(ibp::cli::run(manifest, std::cout, std::cerr));
}
