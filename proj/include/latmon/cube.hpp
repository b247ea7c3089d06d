#ifndef LATMON_CUBE_HPP
#define LATMON_CUBE_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "latmon/node.hpp"

namespace latmon {

/// A signed reference to one set of the independent family. Bits are dense
/// ranks of the indexed nodes (last phi entry 0), computed as a pure
/// function of the node path, so no allocation registry is needed.
struct Literal {
  std::uint64_t bit = 0;
  bool positive = true;

  auto operator<=>(const Literal&) const = default;
};

/// Dense id of an indexed node; throws DomainError unless the last phi
/// entry is 0. Injective across the whole truncation and stable for a
/// fixed branching.
std::uint64_t bit_id(const Truncation& t, const Node& zero_node);

/// Inverse of bit_id.
Node bit_node(const Truncation& t, std::uint64_t bit);

/// Conjunction of literals over pairwise distinct bits. Construction
/// rejects a bit carried with both polarities (the empty set).
class Cube {
public:
  Cube() = default;
  explicit Cube(std::vector<Literal> literals);

  std::size_t size() const { return literals_.size(); }
  const std::vector<Literal>& literals() const { return literals_; }
  std::string to_string(const Truncation& t) const;

  auto operator<=>(const Cube&) const = default;

private:
  std::vector<Literal> literals_;  // sorted by bit
};

/// The signed family set cut out by the node's own level: positive on the
/// node's bit when its last phi entry is 0, else negative on the bit of
/// the sibling with that entry cleared.
Literal node_literal(const Truncation& t, const Node& n);

/// Conjunction of node_literal over every initial segment of n; exactly
/// depth(n) literals on distinct bits.
Cube path_cube(const Truncation& t, const Node& n);

/// Partial valuation of family bits.
class Assignment {
public:
  enum class Eval { True, False, Unknown };

  /// Returns false when the bit is already pinned to the other value.
  bool set(std::uint64_t bit, bool value);
  std::optional<bool> get(std::uint64_t bit) const;
  std::size_t size() const { return bits_.size(); }

  /// False as soon as one literal is contradicted, even when others are
  /// unassigned; Unknown only when consistent but incomplete.
  Eval eval(const Cube& c) const;

  const std::vector<std::pair<std::uint64_t, bool>>& bits() const {
    return bits_;
  }
  std::string to_string(const Truncation& t) const;

private:
  std::vector<std::pair<std::uint64_t, bool>> bits_;  // sorted by bit
};

/// Concrete realization of the independent family on 2^m points: point x
/// lies in family set b exactly when coordinate b of x is 1.
class ExplicitGround {
public:
  /// Throws ResourceError when bits.size() exceeds max_bits.
  static ExplicitGround over_bits(std::vector<std::uint64_t> bits,
                                  std::uint32_t max_bits = 24);

  /// Ground covering every bit of every entry's path cube.
  static ExplicitGround covering(const Truncation& t,
                                 const std::vector<Word>& words,
                                 std::uint32_t max_bits = 24);

  std::uint32_t m() const { return static_cast<std::uint32_t>(bits_.size()); }
  std::uint64_t point_count() const { return 1ull << m(); }
  const std::vector<std::uint64_t>& bits() const { return bits_; }

  /// Coordinate of a family bit; DomainError when absent.
  std::uint32_t coordinate(std::uint64_t bit) const;

  bool contains(const Cube& c, std::uint64_t point) const;
  Assignment assignment_of(std::uint64_t point) const;

private:
  std::vector<std::uint64_t> bits_;  // sorted
};

/// A partial assignment placing a point inside path_cube(n) and outside
/// path_cube(p) for every entry p of q. Requires q reduced, n absent from
/// q, and no entry of q a proper initial segment of n; DomainError
/// otherwise.
Assignment separating_point(const Truncation& t, const Node& n, const Word& q);

}  // namespace latmon

#endif
