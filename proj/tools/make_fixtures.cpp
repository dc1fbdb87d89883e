// Writes the bundled profiles and potentials used by configs/.
#include <iostream>

#include "lovespec/fixtures.hpp"
#include "lovespec/io.hpp"

namespace ls = lovespec;

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures <data dir>\n";
    return 1;
  }
  const std::filesystem::path dir = argv[1];
  try {
    ls::io::write_profile(dir / "bump_profile.csv", ls::fixtures::bump_profile());
    ls::ShearProfile flat;
    flat.grid_x = ls::fixtures::uniform_grid(1.0, 2001);
    flat.mu_hat.assign(flat.grid_x.size(), 1.0);
    ls::io::write_profile(dir / "constant_profile.csv", flat);
    ls::io::write_potential(dir / "bump_potential.csv", ls::fixtures::bump_potential());
    ls::io::write_potential(dir / "square_well.csv", ls::fixtures::square_well());
    ls::io::write_potential(dir / "free_h1.csv", ls::fixtures::free_problem(1.0, 2001));
  } catch (const ls::Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 0;
}
