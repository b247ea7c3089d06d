#include "latmon/catalog.hpp"

#include <algorithm>
#include <cctype>

namespace latmon {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

LatticeDescription chain(std::uint32_t size) {
  static const std::vector<std::string> names = {"0", "a", "b", "c", "d"};
  LatticeDescription d;
  for (std::uint32_t i = 0; i < size; ++i) d.elements.push_back(names[i]);
  for (std::uint32_t i = 0; i + 1 < size; ++i)
    d.relations.emplace_back(names[i], names[i + 1]);
  d.relations_are_covers = true;
  return d;
}

LatticeDescription boolean2() {
  LatticeDescription d;
  d.elements = {"0", "x", "y", "1"};
  d.relations = {{"0", "x"}, {"0", "y"}, {"x", "1"}, {"y", "1"}};
  d.relations_are_covers = true;
  return d;
}

LatticeDescription boolean3() {
  LatticeDescription d;
  d.elements = {"0", "x", "y", "z", "xy", "xz", "yz", "1"};
  d.relations = {{"0", "x"},  {"0", "y"},  {"0", "z"},  {"x", "xy"},
                 {"x", "xz"}, {"y", "xy"}, {"y", "yz"}, {"z", "xz"},
                 {"z", "yz"}, {"xy", "1"}, {"xz", "1"}, {"yz", "1"}};
  d.relations_are_covers = true;
  return d;
}

LatticeDescription m3() {
  LatticeDescription d;
  d.elements = {"0", "a", "b", "c", "1"};
  d.relations = {{"0", "a"}, {"0", "b"}, {"0", "c"},
                 {"a", "1"}, {"b", "1"}, {"c", "1"}};
  d.relations_are_covers = true;
  return d;
}

LatticeDescription n5() {
  LatticeDescription d;
  d.elements = {"0", "a", "b", "c", "1"};
  d.relations = {{"0", "a"}, {"a", "b"}, {"b", "1"}, {"0", "c"}, {"c", "1"}};
  d.relations_are_covers = true;
  return d;
}

}  // namespace

std::vector<std::string> catalog_names() {
  return {"chain2", "chain3", "chain4", "chain5",
          "boolean2", "boolean3", "M3", "N5"};
}

bool is_catalog_name(const std::string& name) {
  const std::string key = lower(name);
  for (const auto& n : catalog_names())
    if (lower(n) == key) return true;
  return false;
}

FiniteLattice catalog_lattice(const std::string& name) {
  const std::string key = lower(name);
  if (key == "chain2") return FiniteLattice::load(chain(2));
  if (key == "chain3") return FiniteLattice::load(chain(3));
  if (key == "chain4") return FiniteLattice::load(chain(4));
  if (key == "chain5") return FiniteLattice::load(chain(5));
  if (key == "boolean2") return FiniteLattice::load(boolean2());
  if (key == "boolean3") return FiniteLattice::load(boolean3());
  if (key == "m3") return FiniteLattice::load(m3());
  if (key == "n5") return FiniteLattice::load(n5());
  throw InputError("unknown catalog lattice: " + name);
}

}  // namespace latmon
