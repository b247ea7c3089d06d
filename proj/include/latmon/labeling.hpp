#ifndef LATMON_LABELING_HPP
#define LATMON_LABELING_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "latmon/exec.hpp"
#include "latmon/lattice.hpp"
#include "latmon/node.hpp"
#include "latmon/report.hpp"

namespace latmon {

/// All (d, d') with c <= d v d', in lexicographic order of (name(d),
/// name(d')). Always contains (c, c).
std::vector<std::pair<CompactId, CompactId>> decomposition_pairs(
    const CompactSemilattice& c, CompactId x);

/// Smallest branching for which the labeling can realize every
/// decomposition pair at every node and cover the carrier at the roots:
/// max(|C|, max_c |decomposition_pairs(c)|).
std::uint32_t required_branching(const CompactSemilattice& c);

/// Deterministic node labeling. Depth-1 nodes with phi 0 cycle through
/// the carrier by branch index; depth-1 nodes with phi 1 carry the top of
/// the carrier (an everywhere-shift composite then lies in a generated
/// monoid only for the full ideal, which keeps meets exact). Deeper nodes
/// take the components of their parent label's decomposition pair
/// selected by branch index mod table size.
class Labeling {
public:
  /// ConfigError when kappa < required_branching(c).
  static Labeling make(const CompactSemilattice& c, std::uint32_t kappa);

  /// No branching check; undersized labelings exist so that
  /// verify_enumeration can demonstrate property violations.
  static Labeling make_unchecked(const CompactSemilattice& c,
                                 std::uint32_t kappa);

  const CompactSemilattice& semilattice() const { return *sem_; }
  std::uint32_t kappa() const { return kappa_; }

  CompactId root_label(std::uint32_t alpha, bool phi) const;
  std::pair<CompactId, CompactId> child_pair(CompactId parent,
                                             std::uint32_t alpha) const;
  CompactId label(const Node& n) const;

  const std::vector<std::pair<CompactId, CompactId>>& pairs(CompactId c) const {
    return pairs_[c];
  }

  /// Index of (d, d') in pairs(c), if present.
  std::optional<std::uint32_t> pair_index(CompactId c, CompactId d,
                                          CompactId dp) const;

  /// Test hook: overwrite one table entry to exercise violation reports.
  void corrupt_pair_for_testing(CompactId c, std::size_t index,
                                std::pair<CompactId, CompactId> value) {
    pairs_[c][index] = value;
  }

private:
  Labeling() = default;
  const CompactSemilattice* sem_ = nullptr;
  std::uint32_t kappa_ = 1;
  CompactId top_ = 0;
  std::vector<std::vector<std::pair<CompactId, CompactId>>> pairs_;
};

namespace detail {

template <typename Visit>
void walk_labeled_rec(const Labeling& lb, std::uint32_t max_depth,
                      std::vector<std::uint32_t>& path, CompactId label,
                      Visit& visit) {
  visit(path, label);
  if (path.size() >= max_depth) return;
  for (std::uint32_t alpha = 0; alpha < lb.kappa(); ++alpha) {
    const auto [d0, d1] = lb.child_pair(label, alpha);
    path.push_back(alpha * 2);
    walk_labeled_rec(lb, max_depth, path, d0, visit);
    path.back() |= 1u;
    walk_labeled_rec(lb, max_depth, path, d1, visit);
    path.pop_back();
  }
}

}  // namespace detail

/// Depth-first sweep of the labeled tree: visit(path, label) runs for
/// every node of depth <= max_depth, in parallel over the depth-1
/// subtrees. visit must be safe to call concurrently in Parallel mode.
template <typename Visit>
void walk_labeled(const Labeling& lb, std::uint32_t max_depth, ExecMode exec,
                  Visit&& visit) {
  if (max_depth < 1) return;
  for_indices(exec, 2ll * lb.kappa(), [&](std::int64_t i) {
    std::vector<std::uint32_t> path{static_cast<std::uint32_t>(i)};
    detail::walk_labeled_rec(
        lb, max_depth, path,
        lb.root_label(static_cast<std::uint32_t>(i >> 1), (i & 1) != 0),
        visit);
  });
}

struct EnumerationOptions {
  ExecMode exec = ExecMode::Parallel;
  std::uint32_t depth = 0;  // 0 = the truncation depth
};

/// Exhaustively checks the three labeling properties over the truncation:
/// (1) depth-1 phi-0 labels cover the carrier, (2) every parent label is
/// below the join of its two child labels, (3) every decomposition pair
/// of a node's label appears as the child pair under some branch.
CheckReport verify_enumeration(const Labeling& lb, const Truncation& t,
                               const EnumerationOptions& opt = {});

}  // namespace latmon

#endif
