#ifndef LATMON_ENGINE_HPP
#define LATMON_ENGINE_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "latmon/cube.hpp"
#include "latmon/exec.hpp"
#include "latmon/node.hpp"
#include "latmon/report.hpp"

namespace latmon {

/// One verification setup: tree bounds plus the budgets applied when
/// realizing explicit grounds and projecting equality queries onto their
/// relevant bits.
struct Engine {
  Truncation trunc;
  std::uint32_t max_ground_bits = 24;
  std::uint32_t projection_bit_limit = 20;
};

/// A point of the acted-on set: family-bit valuation plus integer level.
struct Point {
  Assignment alpha;
  std::int64_t level = 0;
};

/// The generator indexed by n: level+1 on points inside path_cube(n),
/// identity elsewhere. DomainError when the valuation cannot decide
/// cube membership.
Point apply_generator(const Truncation& t, const Node& n, const Point& p);

/// Per-point level shift of a composite, as a multiset of path cubes.
/// The value at a point is the sum of counts of the cubes containing it,
/// so it is everywhere >= 0 and additive under multiset union.
class ShiftProfile {
public:
  struct Term {
    Cube cube;
    std::int64_t count = 0;
    auto operator<=>(const Term&) const = default;
  };

  ShiftProfile() = default;
  explicit ShiftProfile(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  std::int64_t value_on(const ExplicitGround& g, std::uint64_t point) const;

  auto operator<=>(const ShiftProfile&) const = default;

private:
  std::vector<Term> terms_;  // sorted by cube, counts nonzero
};

/// The shift profile of a word's composite.
ShiftProfile shift_profile(const Truncation& t, const Word& w);

/// Exact semantic equality of two composites. Decided by projecting the
/// signed cube difference onto the bits it mentions and enumerating all
/// of their assignments (every one is realized on an independent family);
/// queries mentioning more than projection_bit_limit bits fall back to
/// comparing multilinear expansion coefficients, which agrees exactly.
bool equal_words(const Engine& e, const Word& p, const Word& q);

/// Proof-shaped separation of two disjoint reduced words: a pivot entry
/// no other entry precedes, plus a partial point inside the pivot's cube
/// and outside every cube of the opposite word.
struct Separation {
  Node pivot;
  bool pivot_in_first = true;
  Assignment point;
};

/// Requires p, q reduced with no common entries and not both empty.
Separation find_separation(const Truncation& t, const Word& p, const Word& q);

/// Re-checks a separation by direct cube evaluation.
bool check_separation(const Truncation& t, const Word& p, const Word& q,
                      const Separation& s);

struct CompositionOptions {
  ExecMode exec = ExecMode::Parallel;
  std::uint64_t identity_cap = 2'000'000;  // stride-sampled beyond this
};

/// Supplies the right-hand word of a composition identity; the default is
/// the two children under the branch. Tests substitute corrupted suppliers.
using RhsSupplier = std::function<Word(const Node&, std::uint32_t)>;

/// Checks f(n) = f(child0) . f(child1) for every node of depth < bound and
/// every branch index (stride-sampled past identity_cap, recorded).
CheckReport verify_composition(const Engine& e,
                               const CompositionOptions& opt = {});
CheckReport verify_composition_with(const Engine& e,
                                    const CompositionOptions& opt,
                                    const RhsSupplier& rhs);

struct CommutativityOptions {
  ExecMode exec = ExecMode::Parallel;
  std::uint64_t pair_cap = 200'000;  // exhaustive up to this many pairs
  std::uint64_t seed = 0;
  std::uint64_t trials = 1000;
  std::int64_t level_window = 2;
};

/// Action of a generator on an explicit-ground point; tests substitute
/// non-fiberwise maps to exercise failure reporting.
using GroundAction = std::function<std::pair<std::uint64_t, std::int64_t>(
    const ExplicitGround&, const Node&, std::uint64_t, std::int64_t)>;

/// Checks f(a).f(b) = f(b).f(a) on explicit grounds covering each pair,
/// over all ground points and all levels in a window.
CheckReport verify_commutativity(const Engine& e,
                                 const CommutativityOptions& opt = {});
CheckReport verify_commutativity_with(const Engine& e,
                                      const CommutativityOptions& opt,
                                      const GroundAction& act);

struct IndependenceOptions {
  bool exhaustive = false;
  std::uint32_t size_bound = 3;
  std::uint64_t seed = 0;
  std::uint64_t trials = 1000;
  ExecMode exec = ExecMode::Parallel;
  std::uint64_t max_words = 2'000'000;
  std::uint64_t max_pairs = 50'000'000;
};

/// Checks that inequivalent reduced words have distinct composites, with
/// common entries removed first. Every pair is decided twice: by the
/// semantic equality oracle and by constructing and re-checking a
/// separating point; any disagreement is reported.
CheckReport verify_independence(const Engine& e,
                                const IndependenceOptions& opt);

}  // namespace latmon

#endif
