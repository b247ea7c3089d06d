#ifndef LATMON_EMBEDDING_HPP
#define LATMON_EMBEDDING_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "latmon/engine.hpp"
#include "latmon/labeling.hpp"
#include "latmon/lattice.hpp"

namespace latmon {

/// The monoid generated by the functions whose node label lies in the
/// ideal, represented by its index predicate plus bounded enumerations.
struct IndexedMonoid {
  const Labeling* labeling = nullptr;
  Ideal ideal;
};

/// Node index membership: label(n) lies in the ideal.
bool in_S(const IndexedMonoid& m, const Node& n);

/// Composite membership, decided on the canonical form: every canonical
/// entry must satisfy in_S. Collapse steps stay inside the index set
/// (child labels in an ideal force the parent label in by property (2)
/// and join closure), and canonical forms are unique, so this matches the
/// generated monoid.
bool member(const Truncation& t, const Word& w, const IndexedMonoid& m);

/// Builds a word with the same composite as {n} whose entries carry
/// labels below the cover elements, by splitting the cover as
/// (c_1 v ... v c_{k-1}, c_k) and descending one level per split.
/// Requires label(n) <= join(cover) and depth(n) + |cover| - 1 within the
/// tree bound.
Word factorize(const Truncation& t, const Labeling& lb, const Node& n,
               const std::vector<CompactId>& cover);

struct FragmentOptions {
  std::uint32_t size_bound = 4;
  std::uint32_t enum_depth = 0;  // 0 = truncation depth
  std::uint64_t max_words = 250'000;
  std::uint64_t max_nodes = 2'000'000;
};

/// Index nodes of the monoid up to a depth, in sorted order.
std::vector<Node> s_nodes(const Truncation& t, const IndexedMonoid& m,
                          std::uint32_t max_depth, std::uint64_t max_nodes);

/// Cumulative count of index nodes per depth (index d = nodes of depth
/// <= d), without materializing them.
std::vector<std::uint64_t> s_counts_by_depth(const Truncation& t,
                                             const IndexedMonoid& m,
                                             std::uint32_t max_depth);

/// Canonical forms of every word of size <= size_bound over the monoid's
/// index nodes of depth <= enum_depth, sorted, including the identity.
/// ResourceError (with the count estimate) past the budgets.
std::vector<Word> monoid_enumerate(const Truncation& t,
                                   const IndexedMonoid& m,
                                   const FragmentOptions& opt);

struct ExpansionSearchLimits {
  std::uint64_t max_states = 100'000;  // collapse-closure words
  std::uint64_t max_memo = 200'000;    // expandability memo entries
};

/// Independent membership oracle: explores every collapse order of w and
/// then asks, entry by entry on the collapse-minimal words, whether some
/// chain of expansions lands entirely inside the index set. Does not use
/// reduce_canonical or member. nullopt when a budget cuts the search
/// before the answer is determined.
std::optional<bool> member_by_expansion_search(
    const Truncation& t, const Word& w, const IndexedMonoid& m,
    const ExpansionSearchLimits& lim = {});

struct FragmentPlan {
  std::uint32_t enum_depth = 1;
  std::uint32_t size_bound = 0;
};

/// Largest (enum_depth, then size_bound <= want_size) whose fragment
/// enumerations all fit the budget, for every monoid in the list.
FragmentPlan plan_fragments(const Truncation& t, const Labeling& lb,
                            const std::vector<Ideal>& ideals,
                            std::uint32_t want_size, std::uint64_t budget);

struct JoinOptions {
  ExecMode exec = ExecMode::Parallel;
  std::uint32_t depth_budget = 0;  // 0 = truncation depth
};

/// One direction structurally (each factor's index set sits inside the
/// join's), the other by factorizing every node labeled in the join
/// through a minimal cover from the union, re-checking each factorization
/// semantically. Nodes whose cover does not fit the depth budget are
/// counted as skipped.
CheckReport verify_join_preservation(const Engine& e, const Labeling& lb,
                                     const std::vector<Ideal>& family,
                                     const JoinOptions& opt = {});

struct MeetOptions {
  ExecMode exec = ExecMode::Parallel;
  std::uint32_t size_bound = 4;
  std::uint64_t fragment_budget = 250'000;
  std::uint64_t seed = 0;
  std::uint64_t trials = 500;
};

/// Four layers: index sets intersect pointwise over the whole truncation;
/// collapse steps cannot escape any factor's index set; bounded fragments
/// of the meet equal the intersection of the factors' fragments (at the
/// largest enumerable parameters, recorded in the report); randomized
/// membership agreement between the meet monoid and the factor monoids.
CheckReport verify_meet_preservation(const Engine& e, const Labeling& lb,
                                     const std::vector<Ideal>& family,
                                     const MeetOptions& opt = {});

/// Separates every pair of distinct ideals by a depth-1 witness node.
CheckReport verify_injectivity(const Engine& e, const Labeling& lb,
                               const std::vector<Ideal>& ideals);

/// The empty ideal's bounded fragment is exactly the identity.
CheckReport verify_bottom(const Engine& e, const Labeling& lb,
                          const Ideal& bottom_ideal,
                          std::uint32_t size_bound = 4);

struct NoInverseOptions {
  ExecMode exec = ExecMode::Parallel;
  std::uint32_t size_bound = 3;
  std::uint64_t fragment_budget = 100'000;
  std::uint64_t pair_cap = 500'000;
  std::uint64_t seed = 0;
  std::uint64_t trials = 2000;
};

/// No non-identity fragment element has an inverse: every element's shift
/// profile is somewhere positive, and products of fragment pairs are
/// never the identity (all pairs when the count fits pair_cap, a seeded
/// sample otherwise).
CheckReport verify_no_inverses(const Engine& e, const Labeling& lb,
                               const std::vector<Ideal>& ideals,
                               const NoInverseOptions& opt = {});

}  // namespace latmon

#endif
