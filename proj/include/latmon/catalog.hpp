#ifndef LATMON_CATALOG_HPP
#define LATMON_CATALOG_HPP

#include <string>
#include <vector>

#include "latmon/lattice.hpp"

namespace latmon {

/// Built-in lattice names in display order.
std::vector<std::string> catalog_names();

/// Case-insensitive lookup; InputError for unknown names.
FiniteLattice catalog_lattice(const std::string& name);

bool is_catalog_name(const std::string& name);

}  // namespace latmon

#endif
