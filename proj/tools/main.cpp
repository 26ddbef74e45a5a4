#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "dispatch.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.size() == 2 && args[0] == "--manifest") {
    std::ifstream in(args[1]);
    if (!in) {
      std::cerr << "validation error: cannot open manifest '" << args[1] << "'\n";
      return zpindex::cli::kValidation;
    }
    zpindex::Json manifest;
    try {
      manifest = zpindex::Json::parse(in);
    } catch (const zpindex::Json::exception& e) {
      std::cerr << "validation error: manifest is not valid JSON: " << e.what() << "\n";
      return zpindex::cli::kValidation;
    }
    return zpindex::cli::run_manifest(manifest, std::cout, std::cerr);
  }
  return zpindex::cli::run(args, std::cout, std::cerr);
}
