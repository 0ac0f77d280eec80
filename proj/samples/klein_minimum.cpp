// Minimum 1-norm of the bounding wedge lattice of Q(√d1, √d2).
//   klein_minimum d1 d2

#include <cstdlib>
#include <iostream>

#include "unitlat/unitlat.hpp"

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: klein_minimum d1 d2\n";
    return 2;
  }
  const auto r = unitlat::klein_field_report(std::atol(argv[1]), std::atol(argv[2]));
  if (r.unresolved) {
    std::cerr << r.error << "\n";
    return 3;
  }
  std::cout << "index " << r.structure->index_over_E << ", min " << unitlat::decimal(r.minimum->value)
            << ", 8·X3 " << unitlat::decimal(r.bound_8X3) << "\n";
}
