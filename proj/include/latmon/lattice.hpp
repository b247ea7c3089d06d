#ifndef LATMON_LATTICE_HPP
#define LATMON_LATTICE_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "latmon/errors.hpp"
#include "latmon/report.hpp"

namespace latmon {

using ElemId = std::uint32_t;
using CompactId = std::uint32_t;

struct LatticeDescription {
  std::vector<std::string> elements;
  std::vector<std::pair<std::string, std::string>> relations;
  bool relations_are_covers = false;
};

/// Finite bounded lattice over named elements. Loading validates the
/// order axioms and totality of joins and meets; witnesses are reported
/// in the error message.
class FiniteLattice {
public:
  static FiniteLattice load(const LatticeDescription& d);

  /// {"elements": [...], "leq": [[a,b],...]} or {"covers": [[a,b],...]}.
  static FiniteLattice load_json(const nlohmann::json& j);
  static FiniteLattice load_json_text(const std::string& text);

  std::uint32_t size() const { return static_cast<std::uint32_t>(names_.size()); }
  const std::string& name(ElemId x) const { return names_[x]; }
  std::optional<ElemId> index_of(const std::string& name) const;

  bool leq(ElemId a, ElemId b) const { return leq_[a][b]; }
  ElemId join(ElemId a, ElemId b) const { return join_[a][b]; }
  ElemId meet(ElemId a, ElemId b) const { return meet_[a][b]; }
  ElemId bottom() const { return bottom_; }
  ElemId top() const { return top_; }

private:
  std::vector<std::string> names_;
  std::vector<std::vector<bool>> leq_;
  std::vector<std::vector<ElemId>> join_;
  std::vector<std::vector<ElemId>> meet_;
  ElemId bottom_ = 0;
  ElemId top_ = 0;
};

/// The join-semilattice of non-bottom elements (all compact at finite
/// size). The carrier is sorted by element name, which fixes every
/// downstream enumeration order.
class CompactSemilattice {
public:
  explicit CompactSemilattice(const FiniteLattice& l);

  const FiniteLattice& lattice() const { return *lat_; }
  std::uint32_t size() const { return static_cast<std::uint32_t>(carrier_.size()); }
  ElemId elem(CompactId c) const { return carrier_[c]; }
  std::optional<CompactId> compact_of(ElemId x) const;
  const std::string& name(CompactId c) const { return lat_->name(carrier_[c]); }

  bool leq(CompactId a, CompactId b) const {
    return lat_->leq(carrier_[a], carrier_[b]);
  }
  CompactId join(CompactId a, CompactId b) const;

  /// Join of the whole carrier; requires size() >= 1.
  CompactId top() const;

private:
  const FiniteLattice* lat_;
  std::vector<ElemId> carrier_;
  std::vector<CompactId> of_elem_;
};

/// Subset of the compact carrier, stored as a fixed-width bitset. The
/// ideal axioms (downward closed, join closed) are properties checked by
/// is_ideal, not construction invariants, so verifiers can represent
/// candidate sets too.
class Ideal {
public:
  Ideal() = default;
  explicit Ideal(std::uint32_t universe)
      : universe_(universe), bits_((universe + 63) / 64, 0) {}

  std::uint32_t universe() const { return universe_; }
  bool contains(CompactId c) const {
    return (bits_[c >> 6] >> (c & 63)) & 1ull;
  }
  void add(CompactId c) { bits_[c >> 6] |= 1ull << (c & 63); }
  std::size_t count() const;
  bool empty() const { return count() == 0; }
  std::vector<CompactId> members() const;
  bool subset_of(const Ideal& other) const;

  auto operator<=>(const Ideal&) const = default;

private:
  std::uint32_t universe_ = 0;
  std::vector<std::uint64_t> bits_;
};

bool is_ideal(const CompactSemilattice& c, const Ideal& i);

/// Downset of m within the carrier.
Ideal principal_ideal(const CompactSemilattice& c, CompactId m);

/// Every ideal: the empty one plus one principal ideal per element (each
/// non-empty ideal of a finite join-semilattice is the downset of its
/// maximum). Deterministic order: empty first, then by generator.
std::vector<Ideal> ideals_enumerate(const CompactSemilattice& c);

/// Smallest ideal containing every member of the family; DomainError on
/// an empty family.
Ideal ideal_join(const CompactSemilattice& c, const std::vector<Ideal>& family);

/// Intersection; DomainError on an empty family.
Ideal ideal_meet(const CompactSemilattice& c, const std::vector<Ideal>& family);

/// Verifies that x -> (downset of x in the carrier) is a bijection onto
/// the ideals matching joins and meets on both sides.
CheckReport ideal_lattice_iso_check(const FiniteLattice& l);

}  // namespace latmon

#endif
