#ifndef LATMON_NODE_HPP
#define LATMON_NODE_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "latmon/errors.hpp"
#include "latmon/exec.hpp"
#include "latmon/report.hpp"

namespace latmon {

/// Branching count and depth bound of the index tree, plus the default
/// multiset size used by exhaustive sweeps. All bounds are >= 1.
class Truncation {
public:
  /// Trivial bounds (kappa 1, depth 1); placeholder until assigned.
  Truncation() : cum_nodes_{0, 2}, bit_offsets_{0, 0, 1} {}

  static Truncation make(std::uint32_t kappa, std::uint32_t depth,
                         std::uint32_t word_bound = 4);

  std::uint32_t kappa() const { return kappa_; }
  std::uint32_t depth() const { return depth_; }
  std::uint32_t word_bound() const { return word_bound_; }

  /// Number of tree nodes with depth in [1, d].
  std::uint64_t node_count(std::uint32_t d) const;

  /// First bit id assigned to depth-d indexed nodes (those with last phi 0).
  std::uint64_t bit_offset(std::uint32_t d) const;

  /// Total number of bit ids over the whole truncation; all ids are below it.
  std::uint64_t bit_count() const { return bit_offsets_.back(); }

private:
  std::uint32_t kappa_ = 1;
  std::uint32_t depth_ = 1;
  std::uint32_t word_bound_ = 4;
  std::vector<std::uint64_t> cum_nodes_;    // index d, d in [0, depth]
  std::vector<std::uint64_t> bit_offsets_;  // index d, d in [1, depth+1]
};

/// One index-tree element: a pair of equal-length sequences of branch
/// indices and phi bits, packed entrywise as branch*2 + bit. Depth >= 1
/// for every constructed node; immutable value type.
class Node {
public:
  Node() = default;

  static Node root(std::uint32_t alpha, bool phi);
  static Node from_sequences(const std::vector<std::uint32_t>& eta,
                             const std::vector<std::uint8_t>& phi);
  static Node from_packed(std::vector<std::uint32_t> packed);

  std::uint32_t depth() const { return static_cast<std::uint32_t>(path_.size()); }
  std::uint32_t branch(std::uint32_t i) const { return path_[i] >> 1; }
  bool phi(std::uint32_t i) const { return (path_[i] & 1u) != 0; }
  bool last_phi() const { return (path_.back() & 1u) != 0; }

  Node parent() const;   // requires depth >= 2
  Node sibling() const;  // last phi bit flipped
  Node zeroed() const;   // last phi bit cleared
  Node child(std::uint32_t alpha, bool phi) const;
  Node prefix(std::uint32_t d) const;  // 1 <= d <= depth

  const std::vector<std::uint32_t>& packed() const { return path_; }
  std::string to_string() const;

  auto operator<=>(const Node&) const = default;

private:
  std::vector<std::uint32_t> path_;
};

/// p is a (possibly improper) componentwise initial segment of q.
bool is_initial_segment(const Node& p, const Node& q);

/// Throws DomainError/TruncationError when the node violates the bounds.
void validate_node(const Truncation& t, const Node& n);

/// The two extensions of n under branch alpha, phi bit 0 and 1.
std::pair<Node, Node> children(const Truncation& t, const Node& n,
                               std::uint32_t alpha);

/// Finite multiset of nodes; the empty word denotes the identity composite.
/// Entries are kept sorted, so multiset equality is plain equality.
class Word {
public:
  Word() = default;
  explicit Word(std::vector<Node> entries);

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::vector<Node>& entries() const { return entries_; }

  void insert(Node n);
  bool contains(const Node& n) const;
  std::size_t multiplicity(const Node& n) const;
  bool erase_one(const Node& n);
  Word merged(const Word& other) const;  // multiset union

  std::string to_string() const;

  auto operator<=>(const Word&) const = default;

private:
  std::vector<Node> entries_;
};

struct WordHash {
  std::size_t operator()(const Word& w) const;
};

/// Multiset equality (entry order never matters).
bool equivalent(const Word& p, const Word& q);

/// No two entries form a sibling pair (equal branches, phi differing only
/// in the last position). Depth-1 sibling pairs disqualify as well: the
/// composite they denote shifts every point, so distinct branch indices
/// would give equal composites. The empty word is reduced.
bool is_reduced(const Word& w);

/// Collapses sibling pairs of depth >= 2 into their parent until none
/// remain. Depth-1 pairs have no parent inside the index set and are left
/// in place, so the result need not satisfy is_reduced. The normal form is
/// independent of the collapse order (see verify_confluence).
Word reduce_canonical(Word w);

/// All distinct words reachable by collapsing exactly one depth>=2 sibling
/// pair.
std::vector<Word> one_step_reductions(const Word& w);

/// Replaces one occurrence of n by its two children under alpha.
Word expand_once(const Truncation& t, const Word& w, const Node& n,
                 std::uint32_t alpha);

/// Entries of p with one occurrence removed per matching occurrence in q.
Word multiset_difference(const Word& p, const Word& q);

/// The index-th node in depth-major, lexicographic-within-depth order;
/// index < t.node_count(t.depth()). Lets sweeps walk the tree without
/// materializing it.
Node node_at_index(const Truncation& t, std::uint64_t index);

/// Number of multisets of size <= size_bound over n distinct nodes,
/// saturating at uint64 max.
std::uint64_t count_words_up_to(std::uint64_t node_count,
                                std::uint32_t size_bound);

/// All nodes of depth <= max_depth in lexicographic order.
/// Throws ResourceError when the count exceeds max_count.
std::vector<Node> all_nodes(const Truncation& t, std::uint32_t max_depth,
                            std::uint64_t max_count);

/// All multisets of size <= size_bound over the given nodes.
/// Throws ResourceError when the count exceeds max_count.
std::vector<Word> enumerate_words(const std::vector<Node>& nodes,
                                  std::uint32_t size_bound,
                                  std::uint64_t max_count);

struct ConfluenceOptions {
  std::uint32_t size_bound = 4;
  ExecMode exec = ExecMode::Parallel;
  std::uint64_t max_words = 2'000'000;
};

/// Exhaustively explores every collapse order of every word of size
/// <= size_bound and confirms a unique normal form matching
/// reduce_canonical.
CheckReport verify_confluence(const Truncation& t, const ConfluenceOptions& opt);

}  // namespace latmon

#endif
