// Writes the bundled example models as JSON files into a directory.

#include <fstream>
#include <iostream>

#include "conic.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: write_fixtures <directory>\n";
    return 2;
  }
  auto fixtures = conic::corpus_fixtures();
  fixtures.push_back(conic::fixture_only_type_d_nodal());
  for (const auto& fx : fixtures) {
    std::ofstream out(std::string(argv[1]) + "/" + fx.id + ".json");
    out << conic::to_json(fx.spec).dump(2) << "\n";
  }
  std::ofstream out(std::string(argv[1]) + "/conic-pencil.json");
  out << conic::to_json(conic::illustration_spec()).dump(2) << "\n";
}
