// Rebuilds data/catalog.json by unit search and prints it to stdout.
//   populate_catalog [height_bound]

#include <cstdlib>
#include <iostream>

#include "unitlat/unitlat.hpp"

int main(int argc, char** argv) {
  const long height = argc > 1 ? std::atol(argv[1]) : 3;
  std::vector<unitlat::CyclicCatalogEntry> entries{
      unitlat::populate_catalog_entry("zeta16-plus", {2, 0, -4, 0, 1}, height),
      unitlat::populate_catalog_entry("zeta15-plus", {1, 4, -4, -1, 1}, height),
  };
  for (const auto& e : entries) unitlat::verify_hasse_relations(e);
  std::cout << unitlat::dump_catalog(entries);
}
